"""Incremental evaluator of a translation-like ℤ-action on a Cayley graph.

Two modes realize the action v ∗ n:

* **transitive** (one- or two-ended groups): a single bi-infinite
  Hamiltonian 3-path is grown in nested stages — stage i is a bi-extensible
  finite 3-path visiting the first i+1 numbered vertices, and every stage
  extends the previous one with the domain grown on both sides.  Then
  v ∗ n = f(f⁻¹(v) + n), evaluated by growing stages until both the vertex
  and the shifted position are covered.

* **subgroup** (many-ended groups): v ∗ n is the vertex named by
  word(v)·cⁿ for a designated infinite-order word c whose cyclic subgroup
  has decidable membership; orbits are the right cosets v⟨c⟩.

The engine is stateful: the stage cache only grows.  Interleaved calls
from several threads require external synchronization; after a
synchronization point, already-built stages may be read concurrently, and
the engine may be handed off to another thread.
"""

from __future__ import annotations

import itertools
from typing import Callable

from .decidability import EndsDecider
from .errors import ConfigError, Fuel, InvariantError, default_fuel
from .extenders import (
    ExtensibleState,
    extend_to_visit,
    make_bi_extensible,
    state_from_path,
)
from .graph import CayleyGraph, ball, distance
from .groups import (
    GroupOracle,
    Numbering,
    Word,
    builtin_group,
    canonical_numbering,
    concat_words,
    inverse_word,
    power_word,
)
from .paths import ThreePath
from .stallings import instance_for, z_subgroup_membership


class ActionEngine:
    """See the module docstring.  ``visited_index`` (transitive mode) maps
    each visited vertex to its authoritative path position and is the
    realization of f⁻¹."""

    def __init__(
        self,
        oracle: GroupOracle,
        numbering: Numbering | None = None,
        fuel: Fuel | None = None,
        mode: str | None = None,
        subgroup_word: Word | None = None,
        membership: Callable[[Word], bool] | None = None,
    ):
        self.oracle = oracle
        self.fuel = fuel if fuel is not None else Fuel(default_fuel())
        self.numbering = numbering if numbering is not None else canonical_numbering(oracle)
        self.graph = CayleyGraph(oracle, self.numbering, self.fuel)
        if mode is None:
            mode = "transitive" if oracle.declared_ends in (1, 2) else "subgroup"
        if mode not in ("transitive", "subgroup"):
            raise ConfigError(f"engine mode must be 'transitive' or 'subgroup', got {mode!r}")
        self.mode = mode
        self._stages: list[ExtensibleState] = []
        self.visited_index: dict[int, int] = {}
        if mode == "transitive":
            ends = oracle.declared_ends
            if ends not in (1, 2):
                raise ConfigError(
                    "transitive mode requires a one- or two-ended group; "
                    "many-ended groups act through a subgroup"
                )
            if ends == 2:
                cert = oracle.ends_certificate
                if cert is None:
                    raise ConfigError("a two-ended group needs an ends certificate")
                separator = frozenset(
                    self.numbering.to_index(w) for w in cert.separator
                )
                self.dec = EndsDecider(self.graph, mode="two", separator=separator, fuel=self.fuel)
            else:
                self.dec = EndsDecider(self.graph, mode="one", fuel=self.fuel)
        else:
            if subgroup_word is None or membership is None:
                raise ConfigError(
                    "subgroup mode needs a designated infinite-order word and a "
                    "membership decision procedure for its cyclic subgroup"
                )
            self.dec = None
            self._c = subgroup_word
            self._membership = membership

    # -- transitive-mode stage construction --------------------------------

    def _seed_one_ended(self) -> ExtensibleState:
        return make_bi_extensible(self.graph, self.dec, 0)

    def _seed_two_ended(self) -> ExtensibleState:
        """Brute-force search for the least bi-extensible path containing
        the identity vertex and the certificate separator.

        Candidates are injective jump-≤3 sequences enumerated by length,
        then lexicographically by vertex index; the first one whose
        complement the decider certifies (exactly two infinite sides) and
        which has a canonical witness pair wins.
        """
        required = frozenset({0}) | self.dec.separator
        for length in itertools.count(1):
            self.fuel.tick()
            pool = sorted(ball(self.graph, 0, 3 * (length - 1)))
            if not required <= set(pool):
                continue
            found = self._seed_dfs([], length, pool, required)
            if found is not None:
                return found

    def _seed_dfs(
        self, seq: list[int], length: int, pool: list[int], required: frozenset[int]
    ) -> ExtensibleState | None:
        if len(seq) == length:
            path = ThreePath(start=0, vertices=tuple(seq))
            return state_from_path(self.graph, self.dec, path)
        missing = len(required.difference(seq))
        slots = length - len(seq)
        for x in pool:
            if x in seq:
                continue
            if seq and distance(self.graph, seq[-1], x, cap=3) is None:
                continue
            still_missing = missing - (1 if x in required else 0)
            if still_missing > slots - 1:
                continue
            self.fuel.tick()
            seq.append(x)
            found = self._seed_dfs(seq, length, pool, required)
            if found is not None:
                return found
            seq.pop()
        return None

    def _record(self, path: ThreePath) -> None:
        for pos in path.domain:
            v = path.at(pos)
            prev = self.visited_index.setdefault(v, pos)
            if prev != pos:
                raise InvariantError(
                    f"vertex {v} moved from position {prev} to {pos}; stages must nest"
                )

    def build_stage(self, i: int) -> ThreePath:
        """Compute (and cache) stage i; stage i visits vertices 0..i."""
        if self.mode != "transitive":
            raise ConfigError("stages exist only in transitive mode")
        while len(self._stages) <= i:
            if not self._stages:
                st = (
                    self._seed_one_ended()
                    if self.dec.mode == "one"
                    else self._seed_two_ended()
                )
            else:
                target = len(self._stages)
                st = extend_to_visit(self.graph, self.dec, self._stages[-1], target)
            self._stages.append(st)
            self._record(st.path)
        return self._stages[i].path

    @property
    def stage_count(self) -> int:
        return len(self._stages)

    def current_path(self) -> ThreePath:
        if not self._stages:
            self.build_stage(0)
        return self._stages[-1].path

    def ensure_visited(self, v: int) -> int:
        """Grow stages until vertex v is visited; returns its position."""
        if self.mode != "transitive":
            raise ConfigError("visited positions exist only in transitive mode")
        if v < 0:
            raise ConfigError("vertex indices are nonnegative")
        while v not in self.visited_index:
            self.build_stage(len(self._stages))
        return self.visited_index[v]

    # -- the action ---------------------------------------------------------

    def act(self, v: int, n: int) -> int:
        """v ∗ n."""
        if self.mode == "subgroup":
            word = concat_words(self.numbering.to_word(v), power_word(self._c, n))
            return self.numbering.to_index(word)
        pos = self.ensure_visited(v)
        target = pos + n
        while True:
            f = self.current_path()
            if f.lo <= target <= f.hi:
                return f.at(target)
            self.build_stage(len(self._stages))

    def same_orbit(self, u: int, v: int) -> bool:
        """Whether u and v lie in one orbit of the action."""
        if self.mode == "transitive":
            # force both names to be valid vertices, then: single orbit
            self.numbering.to_word(u)
            self.numbering.to_word(v)
            return True
        w = concat_words(
            inverse_word(self.numbering.to_word(u)), self.numbering.to_word(v)
        )
        return self._membership(w)

    def orbit_representatives(self, count: int) -> tuple[int, ...]:
        """The first ``count`` orbit representatives: vertex 0, then
        repeatedly the least-index vertex in a fresh orbit.  Transitive
        actions have a single orbit, represented by vertex 0."""
        if count <= 0:
            return ()
        if self.mode == "transitive":
            return (0,)
        reps: list[int] = []
        index = 0
        while len(reps) < count:
            self.fuel.tick()
            if all(not self.same_orbit(rep, index) for rep in reps):
                reps.append(index)
            index += 1
        return tuple(reps)


def engine_for(group: str | GroupOracle, fuel: Fuel | None = None) -> ActionEngine:
    """An engine for a built-in group (or a prebuilt oracle): transitive
    for one-/two-ended groups, subgroup mode with the designated cyclic
    subgroup for the many-ended built-ins."""
    oracle = builtin_group(group) if isinstance(group, str) else group
    fuel = fuel if fuel is not None else Fuel(default_fuel())
    if oracle.declared_ends in (1, 2):
        return ActionEngine(oracle, fuel=fuel)
    inst = instance_for(oracle.name)
    return ActionEngine(
        oracle,
        fuel=fuel,
        subgroup_word=inst.generator_word,
        membership=lambda w: z_subgroup_membership(inst, w, fuel),
    )
