"""The translation-like action engine: stages, the action map, orbits."""

from __future__ import annotations

import random

import pytest

from tlaction import (
    ActionEngine,
    ConfigError,
    Fuel,
    FuelExhausted,
    builtin_group,
    engine_for,
)
from tlaction.graph import distance

from oracles import f2_cyclic_a_member


@pytest.fixture(scope="module")
def z2_engine():
    eng = engine_for("Z2", Fuel(50_000_000))
    eng.build_stage(30)
    return eng


@pytest.fixture(scope="module")
def z_engine():
    eng = engine_for("Z", Fuel(50_000_000))
    eng.build_stage(30)
    return eng


# -- stages -------------------------------------------------------------------


def test_stage_zero_visits_vertex_zero(z2_engine):
    f0 = z2_engine.build_stage(0)
    assert 0 in f0.image


@pytest.mark.parametrize("name", ["Z", "Z2"])
def test_stages_nest_exactly(name, z_engine, z2_engine):
    eng = z_engine if name == "Z" else z2_engine
    f2, f3 = eng.build_stage(2), eng.build_stage(3)
    assert f3.lo < f2.lo and f3.hi > f2.hi
    for n in range(f2.lo, f2.hi + 1):
        assert f3.at(n) == f2.at(n)


def test_stage_visits_prefix(z_engine):
    f10 = z_engine.build_stage(10)
    assert set(range(11)) <= set(f10.image)
    assert f10.hi - f10.lo + 1 >= 11


def test_stage_injective(z2_engine):
    f = z2_engine.build_stage(20)
    assert len(set(f.vertices)) == len(f.vertices)


# -- the action ---------------------------------------------------------------


def test_act_identity_is_trivial(z2_engine):
    for v in range(25):
        assert z2_engine.act(v, 0) == v


def test_act_moves_at_most_three(z2_engine):
    rng = random.Random(7)
    graph = z2_engine.graph
    for _ in range(200):
        v = rng.randrange(200)
        w = z2_engine.act(v, 1)
        assert distance(graph, v, w, cap=3) is not None


def test_act_axioms_sampled(z2_engine):
    rng = random.Random(11)
    for _ in range(60):
        v = rng.randrange(40)
        n = rng.randint(-6, 6)
        m = rng.randint(-6, 6)
        assert z2_engine.act(z2_engine.act(v, n), m) == z2_engine.act(v, n + m)


def test_act_is_free(z2_engine):
    for v in (0, 3, 17):
        for n in range(-12, 13):
            if n != 0:
                assert z2_engine.act(v, n) != v


def test_act_follows_path_positions(z_engine):
    f = z_engine.current_path()
    v = f.at(0)
    assert z_engine.act(v, 2) == f.at(2)
    assert z_engine.act(v, -1) == f.at(-1)


# -- subgroup mode ------------------------------------------------------------


@pytest.fixture(scope="module")
def f2_engine():
    return engine_for("FreeF2", Fuel(50_000_000))


def test_subgroup_act_is_right_translation(f2_engine):
    num = f2_engine.numbering
    b = num.to_index((2,))
    assert f2_engine.act(b, 2) == num.to_index((2, 1, 1))
    assert f2_engine.act(b, -1) == num.to_index((2, -1))
    assert f2_engine.act(0, 3) == num.to_index((1, 1, 1))


def test_subgroup_act_axioms(f2_engine):
    rng = random.Random(23)
    for _ in range(60):
        v = rng.randrange(50)
        n = rng.randint(-5, 5)
        m = rng.randint(-5, 5)
        assert f2_engine.act(f2_engine.act(v, n), m) == f2_engine.act(v, n + m)
        if n != 0:
            assert f2_engine.act(v, n) != v


def test_same_orbit_free_group(f2_engine):
    num = f2_engine.numbering
    assert f2_engine.same_orbit(0, num.to_index((1, 1, 1)))  # a^3 ~ e
    assert not f2_engine.same_orbit(0, num.to_index((2,)))  # b not ~ e
    assert f2_engine.same_orbit(num.to_index((2,)), num.to_index((2, 1)))  # ba ~ b


def test_same_orbit_matches_reduced_word_oracle(f2_engine):
    num = f2_engine.numbering
    rng = random.Random(31)
    for _ in range(80):
        u, v = rng.randrange(60), rng.randrange(60)
        wu, wv = num.to_word(u), num.to_word(v)
        quotient = tuple(-l for l in reversed(wu)) + wv
        assert f2_engine.same_orbit(u, v) == f2_cyclic_a_member(quotient)


def test_orbit_representatives_free_group(f2_engine):
    reps = f2_engine.orbit_representatives(3)
    assert reps == (0, 3, 4)  # e, b, b^-1
    for i, u in enumerate(reps):
        for v in reps[i + 1 :]:
            assert not f2_engine.same_orbit(u, v)


def test_orbit_representatives_transitive(z2_engine):
    assert z2_engine.orbit_representatives(1) == (0,)
    assert z2_engine.orbit_representatives(0) == ()


def test_transitive_same_orbit_everywhere(z2_engine):
    assert z2_engine.same_orbit(0, 17)


# -- engine construction ------------------------------------------------------


@pytest.mark.parametrize(
    "name,mode",
    [
        ("Z", "transitive"),
        ("Z2", "transitive"),
        ("BS12", "transitive"),
        ("FreeF2", "subgroup"),
        ("Z2starZ3", "subgroup"),
        ("Z2HNN", "subgroup"),
    ],
)
def test_engine_mode_per_group(name, mode):
    eng = engine_for(name, Fuel(1_000_000))
    assert eng.mode == mode


def test_stages_rejected_in_subgroup_mode(f2_engine):
    with pytest.raises(ConfigError):
        f2_engine.build_stage(0)
    with pytest.raises(ConfigError):
        f2_engine.ensure_visited(1)


def test_transitive_mode_needs_few_ends():
    with pytest.raises(ConfigError):
        ActionEngine(builtin_group("FreeF2"), mode="transitive")


def test_subgroup_mode_needs_subgroup_data():
    with pytest.raises(ConfigError):
        ActionEngine(builtin_group("FreeF2"), mode="subgroup")


def test_bad_mode_rejected():
    with pytest.raises(ConfigError):
        ActionEngine(builtin_group("Z2"), mode="sideways")


def test_tiny_fuel_exhausts():
    eng = engine_for("Z2", Fuel(50))
    with pytest.raises(FuelExhausted):
        eng.build_stage(10)


def test_bs12_engine_runs_transitively():
    eng = engine_for("BS12", Fuel(50_000_000))
    f = eng.build_stage(5)
    assert set(range(6)) <= set(f.image)
    assert eng.act(0, 0) == 0
    v = eng.act(0, 1)
    assert distance(eng.graph, 0, v, cap=3) is not None
