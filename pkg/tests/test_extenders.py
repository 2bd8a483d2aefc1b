"""Right-/bi-extensible states and the steered extension step."""

from __future__ import annotations

import pytest

from tlaction import (
    EndsDecider,
    ExtensibleState,
    Fuel,
    builtin_group,
    cayley_oracle,
    extend_to_visit,
    make_bi_extensible,
)
from tlaction.decidability import is_bi_extensible
from tlaction.extenders import make_right_extensible
from tlaction.paths import check_jumps


@pytest.fixture
def z2_setup():
    graph = cayley_oracle(builtin_group("Z2"))
    dec = EndsDecider(graph, mode="one", fuel=Fuel(10_000_000))
    return graph, dec


@pytest.fixture
def z_setup():
    graph = cayley_oracle(builtin_group("Z"))
    dec = EndsDecider(graph, mode="two", separator=frozenset({0}), fuel=Fuel(10_000_000))
    return graph, dec


def z_index(graph, n):
    return graph.numbering.to_index((1,) * max(n, 0) + (-1,) * max(-n, 0))


# -- construction -------------------------------------------------------------


def test_right_extensible_covers_targets(z2_setup):
    graph, dec = z2_setup
    target = graph.numbering.to_index((1,))
    st = make_right_extensible(graph, dec, 0, target)
    assert 0 in st.path.image and target in st.path.image
    assert st.path.first == 0
    assert st.witness_end not in st.path.image
    check_jumps(graph, st.path)


def test_right_extensible_absorbs_gap(z_setup):
    graph, dec = z_setup
    # covering 0 and 2 must absorb 1, else {1} would be a finite component
    st = make_right_extensible(graph, dec, z_index(graph, 0), z_index(graph, 2))
    assert z_index(graph, 1) in st.path.image


def test_bi_extensible_state(z2_setup):
    graph, dec = z2_setup
    st = make_bi_extensible(graph, dec, 0)
    assert 0 in st.path.image
    assert st.bi_extensible
    assert st.witness_start != st.witness_end
    assert st.witness_start not in st.path.image
    assert st.witness_end not in st.path.image
    assert is_bi_extensible(dec, st.path)
    check_jumps(graph, st.path)


def test_bi_extensible_on_z(z_setup):
    graph, dec = z_setup
    st = make_bi_extensible(graph, dec, 0)
    assert 0 in st.path.image
    assert is_bi_extensible(dec, st.path)


# -- extension step -----------------------------------------------------------


def _domain(path):
    return (path.lo, path.hi)


def test_extend_visits_target_and_grows(z_setup):
    graph, dec = z_setup
    st = make_bi_extensible(graph, dec, 0)
    target = z_index(graph, 5)
    ext = extend_to_visit(graph, dec, st, target)
    assert target in ext.path.image
    lo0, hi0 = _domain(st.path)
    lo1, hi1 = _domain(ext.path)
    assert lo1 < lo0 and hi1 > hi0
    for n in range(lo0, hi0 + 1):
        assert ext.path.at(n) == st.path.at(n)
    assert is_bi_extensible(dec, ext.path)
    check_jumps(graph, ext.path)


def test_extend_already_visited_still_grows(z_setup):
    graph, dec = z_setup
    st = make_bi_extensible(graph, dec, 0)
    visited = st.path.vertices[0]
    ext = extend_to_visit(graph, dec, st, visited)
    lo0, hi0 = _domain(st.path)
    lo1, hi1 = _domain(ext.path)
    assert lo1 < lo0 and hi1 > hi0


def test_extend_on_z2_reaches_far_target(z2_setup):
    graph, dec = z2_setup
    st = make_bi_extensible(graph, dec, 0)
    target = graph.numbering.to_index((1, 1, 1, 2, 2, 2))  # a^3 b^3
    ext = extend_to_visit(graph, dec, st, target)
    assert target in ext.path.image
    assert is_bi_extensible(dec, ext.path)
    check_jumps(graph, ext.path)


def test_iterated_extension_nests_and_spreads(z2_setup):
    graph, dec = z2_setup
    st = make_bi_extensible(graph, dec, 0)
    lows, highs = [st.path.lo], [st.path.hi]
    prev = st
    for target in range(1, 13):
        nxt = extend_to_visit(graph, dec, prev, target)
        assert target in nxt.path.image
        for n in range(prev.path.lo, prev.path.hi + 1):
            assert nxt.path.at(n) == prev.path.at(n)
        lows.append(nxt.path.lo)
        highs.append(nxt.path.hi)
        prev = nxt
    assert all(a > b for a, b in zip(lows, lows[1:]))  # strictly decreasing
    assert all(a < b for a, b in zip(highs, highs[1:]))  # strictly increasing
    # injectivity across the whole final path
    assert len(set(prev.path.vertices)) == len(prev.path.vertices)


def test_extension_requires_bi_extensible(z2_setup):
    graph, dec = z2_setup
    st = make_right_extensible(graph, dec, 0, graph.numbering.to_index((1,)))
    from tlaction import InvariantError

    with pytest.raises(InvariantError):
        extend_to_visit(graph, dec, st, 5)
