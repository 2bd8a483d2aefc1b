"""Shared exception types and the step-budget ("fuel") accounting.

Every loop that consults a graph or group oracle an unbounded number of
times runs under a :class:`Fuel` budget.  Exhausting the budget raises
:class:`FuelExhausted`; it is always a distinct outcome, never silently
converted into a wrong answer.
"""

from __future__ import annotations

import os

DEFAULT_FUEL = 10_000_000
FUEL_ENV_VAR = "TLACTION_FUEL"


class ConfigError(ValueError):
    """Invalid user-supplied configuration (group name, flags, files)."""


class FuelExhausted(RuntimeError):
    """A bounded search consumed its whole step budget without an answer.

    This signals either insufficient fuel or an invalid ends declaration
    (a search that can never terminate on the graph as declared).
    """

    def __init__(self, message: str = "step budget exhausted", consumed: int | None = None):
        super().__init__(message)
        self.consumed = consumed


class EndsDeclarationError(RuntimeError):
    """The graph contradicts its declared end structure.

    Raised when a decision procedure reaches a state that is provably
    impossible on a graph with the declared number of ends (for example
    the two sides of a declared two-ended graph become connected).
    """


class InvariantError(RuntimeError):
    """A constructed object violates one of its defining conditions."""


def default_fuel() -> int:
    """Default step budget, overridable through the environment."""
    raw = os.environ.get(FUEL_ENV_VAR)
    if raw is None:
        return DEFAULT_FUEL
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{FUEL_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ConfigError(f"{FUEL_ENV_VAR} must be positive, got {value}")
    return value


class Fuel:
    """Mutable step counter shared by the oracle-consulting loops.

    A step is one elementary unit of search work: an oracle query or a
    vertex touched during exploration.  The counter is deterministic, so
    runs with equal budgets fail (or succeed) at identical points.
    """

    __slots__ = ("budget", "consumed")

    def __init__(self, budget: int | None = None):
        self.budget = default_fuel() if budget is None else int(budget)
        if self.budget <= 0:
            raise ConfigError(f"fuel budget must be positive, got {self.budget}")
        self.consumed = 0

    @property
    def remaining(self) -> int:
        return self.budget - self.consumed

    def tick(self, steps: int = 1) -> None:
        self.consumed += steps
        if self.consumed > self.budget:
            raise FuelExhausted(
                f"step budget of {self.budget} exhausted", consumed=self.consumed
            )

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Fuel(consumed={self.consumed}, budget={self.budget})"
