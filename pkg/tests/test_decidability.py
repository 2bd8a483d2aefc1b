"""Finite-complement-component procedures and bi-extensibility decisions."""

from __future__ import annotations

import pytest

from tlaction import (
    ConfigError,
    EndsDecider,
    Fuel,
    FuelExhausted,
    ThreePath,
    ball,
    builtin_group,
    cayley_oracle,
)
from tlaction.decidability import (
    decide_no_finite_component_one_end,
    decide_no_finite_component_two_ends,
    is_bi_extensible,
    right_witness,
    semidecide_finite_component,
    witness_pair,
)

from oracles import grid_no_finite_component


@pytest.fixture(scope="module")
def z2():
    return cayley_oracle(builtin_group("Z2"))


@pytest.fixture(scope="module")
def z():
    return cayley_oracle(builtin_group("Z"))


def z2_indices(graph, coords):
    """Vertex indices of integer coordinate pairs (x = a-exponent, y = b)."""
    num = graph.numbering
    out = []
    for x, y in coords:
        word = (1,) * max(x, 0) + (-1,) * max(-x, 0) + (2,) * max(y, 0) + (-2,) * max(-y, 0)
        out.append(num.to_index(word))
    return out


def z_index(graph, n):
    return graph.numbering.to_index((1,) * max(n, 0) + (-1,) * max(-n, 0))


# -- semidecision ---------------------------------------------------------------


def test_semidecide_finds_isolated_origin(z2):
    cross = z2_indices(z2, [(1, 0), (-1, 0), (0, 1), (0, -1)])
    witness = semidecide_finite_component(z2, cross, Fuel(200_000))
    assert witness == (0,)


def test_semidecide_exhausts_on_two_rays(z):
    with pytest.raises(FuelExhausted):
        semidecide_finite_component(z, [z_index(z, 0)], Fuel(4_000))


def test_semidecide_exhausts_on_annulus(z2):
    with pytest.raises(FuelExhausted):
        semidecide_finite_component(z2, ball(z2, 0, 1), Fuel(4_000))


# -- one-ended decider ------------------------------------------------------------


def test_one_end_ball_deletion_true(z2):
    assert decide_no_finite_component_one_end(z2, ball(z2, 0, 1), Fuel(500_000))


def test_one_end_isolating_cross_false(z2):
    cross = z2_indices(z2, [(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert not decide_no_finite_component_one_end(z2, cross, Fuel(500_000))


def test_one_end_bs12_identity_true():
    bs = cayley_oracle(builtin_group("BS12"))
    assert decide_no_finite_component_one_end(bs, [0], Fuel(2_000_000))


def test_one_end_random_verdicts_match_window_oracle(z2, rng):
    for _ in range(40):
        pts = {
            (rng.randrange(-2, 3), rng.randrange(-2, 3))
            for _ in range(rng.randrange(1, 5))
        }
        expected = grid_no_finite_component(pts, dim=2)
        got = decide_no_finite_component_one_end(
            z2, z2_indices(z2, sorted(pts)), Fuel(2_000_000)
        )
        assert got == expected, pts


# -- two-ended decider -------------------------------------------------------------


def test_two_ends_examples(z):
    sep = [z_index(z, 0)]
    fuel = Fuel(500_000)
    three = [z_index(z, k) for k in (-1, 0, 1)]
    assert decide_no_finite_component_two_ends(z, three, sep, fuel)
    gap = [z_index(z, 0), z_index(z, 2)]
    assert not decide_no_finite_component_two_ends(z, gap, sep, Fuel(500_000))
    seven = [z_index(z, k) for k in range(-3, 4)]
    assert decide_no_finite_component_two_ends(z, seven, sep, Fuel(500_000))


def test_two_ends_requires_separator(z):
    with pytest.raises(ConfigError):
        decide_no_finite_component_two_ends(
            z, [z_index(z, 2)], [z_index(z, 0)], Fuel(10_000)
        )


def test_two_ends_random_verdicts_match_window_oracle(z, rng):
    sep = [z_index(z, 0)]
    for _ in range(40):
        pts = {0} | {rng.randrange(-5, 6) for _ in range(rng.randrange(1, 5))}
        expected = grid_no_finite_component(pts, dim=1)
        got = decide_no_finite_component_two_ends(
            z, [z_index(z, p) for p in sorted(pts)], sep, Fuel(1_000_000)
        )
        assert got == expected, pts


def test_decider_augments_separator(z):
    dec = EndsDecider(z, mode="two", separator=frozenset({0}), fuel=Fuel(500_000))
    # query {2} alone: augmented to {0, 2}, which pins {1} as a finite component
    assert dec.augmented([z_index(z, 2)]) == frozenset({0, z_index(z, 2)})
    assert not dec.no_finite_component([z_index(z, 2)])
    comp = dec.find_finite_component([z_index(z, 2)])
    assert comp == (z_index(z, 1),)


def test_decider_mode_validation(z):
    with pytest.raises(ConfigError):
        EndsDecider(z, mode="three")
    with pytest.raises(ConfigError):
        EndsDecider(z, mode="two", separator=frozenset())


# -- witnesses and bi-extensibility ---------------------------------------------


def test_witnesses(z):
    p = ThreePath(0, (z_index(z, 0), z_index(z, 1)))
    pair = witness_pair(z, p)
    assert pair is not None and pair[0] != pair[1]
    assert right_witness(z, p) not in p.image


def test_bi_extensible_examples(z2, z):
    dec2 = EndsDecider(z2, mode="one", fuel=Fuel(2_000_000))
    horiz = z2_indices(z2, [(0, 0), (1, 0)])
    assert is_bi_extensible(dec2, ThreePath(0, tuple(horiz)))

    decz = EndsDecider(z, mode="two", separator=frozenset({0}), fuel=Fuel(500_000))
    gap = ThreePath(0, (z_index(z, 0), z_index(z, 2)))
    assert not is_bi_extensible(decz, gap)


def test_fuel_exhaustion_is_an_error_not_a_verdict(z):
    # Z is two-ended: the one-ended connectivity target can never certify
    # V = {0}, and no finite component exists either, so only exhaustion fits
    with pytest.raises(FuelExhausted):
        decide_no_finite_component_one_end(z, [z_index(z, 0)], Fuel(3_000))
