"""Outcomes of entailment sweeps and validity checks."""

from __future__ import annotations

from dataclasses import dataclass

from .models import Model, to_json_dict, worlds_in

__all__ = ["ValidUpTo", "CounterExample", "UnknownAtomError", "UnknownAgentError"]


class UnknownAtomError(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"model assigns no valuation to atom {self.name!r}"


class UnknownAgentError(KeyError):
    def __init__(self, agent: int):
        super().__init__(agent)
        self.agent = agent

    def __str__(self) -> str:
        return f"model has no knowledge function for agent {self.agent}"


@dataclass(frozen=True)
class ValidUpTo:
    """No counterexample among the enumerated models."""

    max_worlds: int

    @property
    def holds(self) -> bool:
        return True

    def __str__(self) -> str:
        return f"holds (no counter-model up to {self.max_worlds} worlds)"


@dataclass(frozen=True)
class CounterExample:
    """A model and evaluation point refuting a claim."""

    model: Model
    state: int
    world: int | None = None
    detail: str = ""

    @property
    def holds(self) -> bool:
        return False

    def to_json_dict(self) -> dict:
        out = {"model": to_json_dict(self.model), "state": worlds_in(self.state)}
        if self.world is not None:
            out["world"] = self.world
        if self.detail:
            out["detail"] = self.detail
        return out

    def __str__(self) -> str:
        where = f"state {worlds_in(self.state)}"
        if self.world is not None:
            where += f", world {self.world}"
        tail = f" ({self.detail})" if self.detail else ""
        return f"fails at {where}{tail}"
