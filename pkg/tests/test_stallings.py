"""Normal forms over HNN extensions and amalgams, coset representatives,
and membership in the designated infinite cyclic subgroup."""

from __future__ import annotations

import random

import pytest

from tlaction import (
    EPSILON,
    AmalgamData,
    ConfigError,
    Fuel,
    HnnData,
    NormalForm,
    amalgam_normal_form,
    coset_representatives,
    cyclic_group,
    free_f2_instance,
    hnn_normal_form,
    instance_for,
    inverse_word,
    z2_z3_instance,
    z2hnn_instance,
    z_subgroup_membership,
)

from oracles import brute_cyclic_member

BIG = Fuel(100_000_000)


# -- shape invariants (the defining conditions, checked on any output) --------


def check_hnn_shape(d: HnnData, nf: NormalForm) -> None:
    parts = nf.parts
    assert nf.kind == "hnn"
    assert len(parts) % 2 == 1
    t = d.stable_letter
    base_letters = {abs(l) for l in d.base_letter_map.values()}
    for i, p in enumerate(parts):
        if i % 2 == 1:
            assert p in ((t,), (-t,))
        else:
            assert all(abs(l) in base_letters for l in p)
    # no pinch: with trivial associated subgroups, a trivial inner part
    # may not sit between opposite-sign stable letters
    ext = d.extension
    for i in range(2, len(parts) - 1, 2):
        if ext.equal(parts[i], EPSILON):
            assert parts[i - 1] == parts[i + 1]


def check_amalgam_shape(d: AmalgamData, nf: NormalForm) -> None:
    parts = nf.parts
    assert nf.kind == "amalgam"
    assert len(parts) >= 1
    ext = d.extension
    assert ext.equal(parts[0], EPSILON)  # trivial amalgamated subgroup
    left = {abs(l) for l in d.left_letter_map.values()}
    right = {abs(l) for l in d.right_letter_map.values()}
    sides = []
    for p in parts[1:]:
        assert not ext.equal(p, EPSILON)  # factors after c0 are nontrivial
        letters = {abs(l) for l in p}
        assert letters <= left or letters <= right
        sides.append("L" if letters <= left else "R")
    for a, b in zip(sides, sides[1:]):
        assert a != b  # strictly alternating


# -- frozen examples (verified by product equality at freeze time) ------------


def test_hnn_pinch_collapses():
    d = z2hnn_instance().data
    assert hnn_normal_form(d, (2, -2, 1), BIG).parts == ((1,),)


def test_hnn_alternating_form():
    d = z2hnn_instance().data
    nf = hnn_normal_form(d, (2, 1, -2, 1), BIG)
    assert nf.parts == ((), (2,), (1,), (-2,), (1,))
    check_hnn_shape(d, nf)


def test_hnn_identity_and_powers():
    d = z2hnn_instance().data
    assert hnn_normal_form(d, EPSILON, BIG).parts == ((),)
    assert hnn_normal_form(d, (2, 2), BIG).parts == ((), (2,), (), (2,), ())


def test_amalgam_collapse_to_identity():
    d = z2_z3_instance().data
    # a b b^-1 a = a^2 = 1
    assert amalgam_normal_form(d, (1, 2, -2, 1), BIG).parts == ((),)


def test_amalgam_alternating_form():
    d = z2_z3_instance().data
    nf = amalgam_normal_form(d, (1, 2), BIG)
    assert nf.parts == ((), (1,), (2,))
    check_amalgam_shape(d, nf)
    assert amalgam_normal_form(d, (2, 1, 2), BIG).parts == ((), (2,), (1,), (2,))


def test_amalgam_reduces_within_factor():
    d = z2_z3_instance().data
    # b^2 = b^-1 in the 3-element factor
    assert amalgam_normal_form(d, (2, 2), BIG).parts == ((), (-2,))


def test_normal_form_product_and_render():
    nf = NormalForm("hnn", ((), (2,), (1,)))
    assert nf.product() == (2, 1)
    assert nf.render(("a", "t")) == "e . t . a"
    assert NormalForm("hnn", ()).product() == EPSILON


# -- randomized: idempotence, product equality, shape -------------------------


def _random_words(letters, count, max_len, seed):
    rng = random.Random(seed)
    for _ in range(count):
        yield tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


@pytest.mark.parametrize("make", [free_f2_instance, z2hnn_instance])
def test_hnn_normal_form_randomized(make):
    inst = make()
    d = inst.data
    letters = (
        [1, -1, 2, -2] if d.extension.generator_count == 2 and d.base.name == "Z"
        else [1, 2, -2]
    )
    for w in _random_words(letters, 100, 10, seed=len(d.extension.name)):
        nf = hnn_normal_form(d, w, BIG)
        check_hnn_shape(d, nf)
        assert d.extension.equal(nf.product(), w)
        again = hnn_normal_form(d, nf.product(), BIG)
        assert again.parts == nf.parts


def test_amalgam_normal_form_randomized():
    d = z2_z3_instance().data
    for w in _random_words([1, 2, -2], 100, 10, seed=99):
        nf = amalgam_normal_form(d, w, BIG)
        check_amalgam_shape(d, nf)
        assert d.extension.equal(nf.product(), w)
        again = amalgam_normal_form(d, nf.product(), BIG)
        assert again.parts == nf.parts


# -- membership ---------------------------------------------------------------


def test_membership_hnn_examples():
    inst = z2hnn_instance()
    assert z_subgroup_membership(inst, (2, 2, 2), BIG)  # t^3
    assert z_subgroup_membership(inst, (-2, -2), BIG)  # t^-2
    assert z_subgroup_membership(inst, EPSILON, BIG)
    assert not z_subgroup_membership(inst, (1, 2), BIG)  # a t
    assert not z_subgroup_membership(inst, (1,), BIG)  # a


def test_membership_amalgam_examples():
    inst = z2_z3_instance()
    assert z_subgroup_membership(inst, (1, 2, 1, 2), BIG)  # (ab)^2
    assert z_subgroup_membership(inst, (-2, 1, -2, 1), BIG)  # (ab)^-2
    assert z_subgroup_membership(inst, EPSILON, BIG)
    assert not z_subgroup_membership(inst, (1, 2, 1), BIG)  # aba
    assert not z_subgroup_membership(inst, (2,), BIG)  # b


@pytest.mark.parametrize("name", ["FreeF2", "Z2HNN", "Z2starZ3"])
def test_membership_matches_brute_force(name):
    inst = instance_for(name)
    ext = inst.data.extension
    c = inst.generator_word
    letters = [l for g in range(1, ext.generator_count + 1) for l in (g, -g)]
    for w in _random_words(letters, 50, 8, seed=hash(name) % 1000):
        got = z_subgroup_membership(inst, w, BIG)
        want = brute_cyclic_member(ext.equal, c, w)
        assert got == want, (w, got, want)


def test_generator_words():
    assert free_f2_instance().generator_word == (1,)  # a
    assert z2hnn_instance().generator_word == (2,)  # t
    assert z2_z3_instance().generator_word == (1, 2)  # ab


def test_instance_for_unknown():
    with pytest.raises(ConfigError):
        instance_for("Z2")


# -- coset representatives ----------------------------------------------------


def test_coset_reps_trivial_subgroup():
    c2 = cyclic_group(2, "a")
    assert coset_representatives(c2, (EPSILON,), 5) == ((), (1,))


def test_coset_reps_full_subgroup():
    c2 = cyclic_group(2, "a")
    assert coset_representatives(c2, (EPSILON, (1,)), 5) == ((),)


def test_coset_reps_order_three():
    c3 = cyclic_group(3, "b")
    assert coset_representatives(c3, (EPSILON,), 5) == ((), (1,), (-1,))


def test_cyclic_group_oracle():
    c3 = cyclic_group(3, "b")
    assert c3.wp((1, 1, 1))
    assert not c3.wp((1,))
    assert c3.equal((1, 1), (-1,))
    assert c3.declared_ends == 0
