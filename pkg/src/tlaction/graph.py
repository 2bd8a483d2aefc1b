"""Locally finite graphs presented by adjacency oracles.

The central instance is the Cayley graph of a :class:`~tlaction.groups.GroupOracle`
on its canonical numbering: vertices are numbering indices, and two indices
are adjacent when their canonical words differ by one generator letter on
the right.  All algorithms consume only the oracle interface (``neighbors``,
``degree``, ``adjacent``), so they apply to any graph presented this way.

Finite fragments are materialised as :class:`FinitePatch` values: immutable
induced subgraphs that support distance and component queries without
touching the oracle again, plus DOT/JSON export.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping

from .errors import Fuel, InvariantError
from .groups import GroupOracle, Numbering, canonical_numbering, word_to_str


class AdjacencyGraph:
    """Graph given only by ``adjacent(u, v)`` and ``degree(v)`` callables.

    ``neighbors(v)`` scans indices ``0, 1, 2, ...`` until ``degree(v)``
    neighbours have been found; this halts on every locally finite graph
    whose vertex set is an initial segment of the naturals (or all of them).
    """

    def __init__(
        self,
        adjacent: Callable[[int, int], bool],
        degree: Callable[[int], int],
        fuel: Fuel | None = None,
    ):
        self._adjacent = adjacent
        self._degree = degree
        self.fuel = fuel
        self._cache: dict[int, tuple[int, ...]] = {}

    def adjacent(self, u: int, v: int) -> bool:
        if self.fuel is not None:
            self.fuel.tick()
        return self._adjacent(u, v)

    def degree(self, v: int) -> int:
        if self.fuel is not None:
            self.fuel.tick()
        return self._degree(v)

    def neighbors(self, v: int) -> tuple[int, ...]:
        cached = self._cache.get(v)
        if cached is not None:
            return cached
        want = self.degree(v)
        out: list[int] = []
        u = 0
        while len(out) < want:
            if u != v and self.adjacent(u, v):
                out.append(u)
            u += 1
        result = tuple(out)
        self._cache[v] = result
        return result


class CayleyGraph:
    """Cayley graph of a group oracle on its canonical numbering.

    Neighbours of index ``v`` are the indices of ``word(v) * s`` over all
    generator letters ``s`` (inverses included), excluding ``v`` itself.
    Neighbour sets are cached; the graph is vertex-transitive and has
    degree at most twice the generator count everywhere.
    """

    def __init__(
        self,
        oracle: GroupOracle,
        numbering: Numbering | None = None,
        fuel: Fuel | None = None,
    ):
        self.oracle = oracle
        self.numbering = numbering if numbering is not None else canonical_numbering(oracle)
        self.fuel = fuel
        self._cache: dict[int, tuple[int, ...]] = {}

    def neighbors(self, v: int) -> tuple[int, ...]:
        if self.fuel is not None:
            self.fuel.tick()
        cached = self._cache.get(v)
        if cached is not None:
            return cached
        word = self.numbering.to_word(v)
        seen: set[int] = set()
        for lt in self.oracle.letters:
            idx = self.numbering.to_index(word + (lt,))
            if idx != v:
                seen.add(idx)
        result = tuple(sorted(seen))
        self._cache[v] = result
        return result

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def adjacent(self, u: int, v: int) -> bool:
        return u in self.neighbors(v)

    def label(self, v: int) -> str:
        """Human-readable label: the canonical word at index ``v``."""
        return word_to_str(self.numbering.to_word(v), self.oracle.generator_names)


def cayley_graph(
    oracle: GroupOracle,
    numbering: Numbering | None = None,
    fuel: Fuel | None = None,
) -> CayleyGraph:
    return CayleyGraph(oracle, numbering, fuel)


def cayley_oracle(
    oracle: GroupOracle,
    numbering: Numbering | None = None,
    fuel: Fuel | None = None,
) -> CayleyGraph:
    """The graph oracle of a group's Cayley graph on its generating set.

    Vertices are numbering indices; ``m`` and ``n`` are adjacent iff some
    generator or inverse carries one word to the other, with neighbour sets
    deduplicated through the word problem.
    """
    return CayleyGraph(oracle, numbering, fuel)


# ---------------------------------------------------------------------------
# breadth-first searches against an oracle
# ---------------------------------------------------------------------------


def ball(graph, center: int, radius: int) -> set[int]:
    """All vertices at distance <= radius from ``center``."""
    seen = {center}
    frontier = [center]
    for _ in range(radius):
        nxt: list[int] = []
        for v in frontier:
            for u in graph.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
        if not frontier:
            break
    return seen


def distance(graph, u: int, v: int, cap: int | None = None) -> int | None:
    """Graph distance from u to v; ``None`` when it exceeds ``cap``.

    Without a cap this is a semi-decision: it halts iff u and v are in the
    same component.
    """
    if u == v:
        return 0
    seen = {u}
    frontier = [u]
    d = 0
    while frontier:
        d += 1
        if cap is not None and d > cap:
            return None
        nxt: list[int] = []
        for w in frontier:
            for x in graph.neighbors(w):
                if x == v:
                    return d
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return None


def shortest_path(
    graph,
    start: int,
    goal: int | Callable[[int], bool],
    avoid: frozenset[int] | set[int] = frozenset(),
    cap: int | None = None,
) -> tuple[int, ...] | None:
    """A shortest path from ``start`` to ``goal`` spelled as a vertex tuple.

    ``goal`` may be a vertex or a predicate.  Vertices in ``avoid`` are not
    entered (the start is allowed regardless).  Ties are broken by visiting
    neighbours in sorted order, so the result is deterministic.
    """
    hit = goal if callable(goal) else (lambda v: v == goal)
    if hit(start):
        return (start,)
    parent: dict[int, int] = {start: start}
    frontier = [start]
    d = 0
    while frontier:
        d += 1
        if cap is not None and d > cap:
            return None
        nxt: list[int] = []
        for v in frontier:
            for u in graph.neighbors(v):
                if u in parent or u in avoid:
                    continue
                parent[u] = v
                if hit(u):
                    out = [u]
                    while out[-1] != start:
                        out.append(parent[out[-1]])
                    return tuple(reversed(out))
                nxt.append(u)
        frontier = nxt
    return None


def components_of(graph, vertices: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Connected components of the subgraph induced on a finite vertex set.

    Returned as a tuple of sorted vertex tuples, sorted by least vertex.
    """
    todo = set(vertices)
    comps: list[tuple[int, ...]] = []
    while todo:
        seed = min(todo)
        comp = {seed}
        stack = [seed]
        todo.discard(seed)
        while stack:
            v = stack.pop()
            for u in graph.neighbors(v):
                if u in todo:
                    todo.discard(u)
                    comp.add(u)
                    stack.append(u)
        comps.append(tuple(sorted(comp)))
    comps.sort(key=lambda c: c[0])
    return tuple(comps)


# ---------------------------------------------------------------------------
# finite patches
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinitePatch:
    """An immutable finite induced subgraph.

    ``vertices`` is sorted; ``edges`` holds each edge once as ``(u, v)``
    with ``u < v``, sorted.  All queries run against this data alone.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise InvariantError("patch vertices must be distinct")
        for u, v in self.edges:
            if not (u < v):
                raise InvariantError(f"patch edge ({u}, {v}) not normalised")
            if u not in vs or v not in vs:
                raise InvariantError(f"patch edge ({u}, {v}) leaves the vertex set")

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def _adj(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def distance(self, u: int, v: int, cap: int | None = None) -> int | None:
        """Distance inside the patch; None when unreachable (or beyond ``cap``)."""
        if u == v:
            return 0
        adj = self._adj
        seen = {u}
        frontier = [u]
        d = 0
        while frontier:
            d += 1
            if cap is not None and d > cap:
                return None
            nxt: list[int] = []
            for w in frontier:
                for x in adj[w]:
                    if x == v:
                        return d
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
            frontier = nxt
        return None

    def components(self) -> tuple[tuple[int, ...], ...]:
        adj = self._adj
        todo = set(self.vertices)
        comps: list[tuple[int, ...]] = []
        while todo:
            seed = min(todo)
            comp = {seed}
            stack = [seed]
            todo.discard(seed)
            while stack:
                v = stack.pop()
                for u in adj[v]:
                    if u in todo:
                        todo.discard(u)
                        comp.add(u)
                        stack.append(u)
            comps.append(tuple(sorted(comp)))
        comps.sort(key=lambda c: c[0])
        return tuple(comps)

    def induced(self, subset: Iterable[int]) -> "FinitePatch":
        keep = set(subset)
        missing = keep - set(self.vertices)
        if missing:
            raise InvariantError(f"subset leaves the patch: {sorted(missing)}")
        return FinitePatch(
            vertices=tuple(sorted(keep)),
            edges=tuple(e for e in self.edges if e[0] in keep and e[1] in keep),
        )

    def union(self, other: "FinitePatch") -> "FinitePatch":
        vs = sorted(set(self.vertices) | set(other.vertices))
        es = sorted(set(self.edges) | set(other.edges))
        return FinitePatch(vertices=tuple(vs), edges=tuple(es))


def components(patch: FinitePatch, deleted: Iterable[int] = ()) -> tuple[tuple[int, ...], ...]:
    """Connected components of ``patch`` after deleting a vertex set.

    Each component is a sorted vertex tuple; the list is sorted by least
    element.  ``deleted`` must be a subset of the patch's vertices.
    """
    gone = set(deleted)
    extra = gone - set(patch.vertices)
    if extra:
        raise InvariantError(f"deleted vertices not in patch: {sorted(extra)}")
    if not gone:
        return patch.components()
    return patch.induced(set(patch.vertices) - gone).components()


def induced_patch(graph, vertices: Iterable[int]) -> FinitePatch:
    """Materialise the subgraph induced on a finite vertex set."""
    vs = sorted(set(vertices))
    vset = set(vs)
    edges = set()
    for v in vs:
        for u in graph.neighbors(v):
            if u in vset and u != v:
                edges.add((min(u, v), max(u, v)))
    return FinitePatch(vertices=tuple(vs), edges=tuple(sorted(edges)))


def patch_to_json(patch: FinitePatch, labels: Mapping[int, str] | None = None) -> str:
    doc: dict = {
        "vertices": list(patch.vertices),
        "edges": [list(e) for e in patch.edges],
    }
    if labels is not None:
        doc["labels"] = {str(v): labels[v] for v in patch.vertices if v in labels}
    return json.dumps(doc, sort_keys=True, indent=2)


def patch_to_dot(patch: FinitePatch, labels: Mapping[int, str] | None = None) -> str:
    lines = ["graph patch {"]
    for v in patch.vertices:
        if labels is not None and v in labels:
            lines.append(f'  n{v} [label="{labels[v]}"];')
        else:
            lines.append(f"  n{v};")
    for u, v in patch.edges:
        lines.append(f"  n{u} -- n{v};")
    lines.append("}")
    return "\n".join(lines)
