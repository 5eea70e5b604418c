"""Truth at world-state pairs, with two knowledge clauses.

Formulas are evaluated as true or false relative to a world w and an
information state i. The might operator quantifies over the state:
``<>f`` is true at (w, i) iff f is true at (u, i) for some u in i. A
state accepts f when f is true at every one of its worlds under that
same state.

Knowledge comes in two variants over classical models:

* ``CLASSIC`` -- ``Kf`` is true at (w, i) iff the agent's state k^w
  accepts f.
* ``MODIFIED_FACTIVE`` -- additionally requires f itself to be true at
  (w, i), which buys veridicality at the price of transparency.

Entailment checks sweep every classical model up to a world bound and
every nonempty state, returning the first counterexample in enumeration
order.
"""

from __future__ import annotations

from enum import Enum

from .models import (
    ClassicalModel,
    enumerate_classical_models,
    full_mask,
    worlds_in,
)
from .results import CounterExample, UnknownAgentError, UnknownAtomError, ValidUpTo
from .syntax import And, Atom, Formula, Know, Might, Neg, atoms_of

__all__ = [
    "KVariant",
    "truth_at",
    "accepts",
    "entails_truth",
    "entails_acceptance",
    "find_accepting_state",
]


class KVariant(Enum):
    CLASSIC = "classic"
    MODIFIED_FACTIVE = "modified-factive"


class _Eval:
    """Per-model truth evaluator with memoization keyed by (node, w, i).

    Keys hold the (frozen, hashable) formula nodes, so entries stay
    sound even when callers build formulas on the fly.
    """

    def __init__(self, model: ClassicalModel, variant: KVariant):
        self.model = model
        self.variant = variant
        self._truth: dict[tuple[Formula, int, int], bool] = {}
        self._accept: dict[tuple[Formula, int], bool] = {}

    def truth(self, w: int, i: int, f: Formula) -> bool:
        key = (f, w, i)
        cached = self._truth.get(key)
        if cached is not None:
            return cached
        value = self._compute(w, i, f)
        self._truth[key] = value
        return value

    def _compute(self, w: int, i: int, f: Formula) -> bool:
        if isinstance(f, Atom):
            try:
                mask = self.model.valuation[f.name]
            except KeyError:
                raise UnknownAtomError(f.name) from None
            return bool(mask >> w & 1)
        if isinstance(f, Neg):
            return not self.truth(w, i, f.child)
        if isinstance(f, And):
            return self.truth(w, i, f.left) and self.truth(w, i, f.right)
        if isinstance(f, Might):
            return any(self.truth(u, i, f.child) for u in worlds_in(i))
        if isinstance(f, Know):
            if f.agent != 1:
                raise UnknownAgentError(f.agent)
            known = self.accepts_inner(self.model.k[w], f.child)
            if self.variant is KVariant.MODIFIED_FACTIVE:
                return known and self.truth(w, i, f.child)
            return known
        raise TypeError(f"not a formula: {f!r}")

    def accepts_inner(self, i: int, f: Formula) -> bool:
        key = (f, i)
        cached = self._accept.get(key)
        if cached is not None:
            return cached
        value = all(self.truth(w, i, f) for w in worlds_in(i))
        self._accept[key] = value
        return value


def truth_at(
    m: ClassicalModel, w: int, i: int, f: Formula, variant: KVariant = KVariant.CLASSIC
) -> bool:
    """Truth of f at world w under information state i."""
    if not 0 <= w < m.world_count:
        raise ValueError(f"world {w} out of range")
    return _Eval(m, variant).truth(w, i, f)


def accepts(
    m: ClassicalModel, i: int, f: Formula, variant: KVariant = KVariant.CLASSIC
) -> bool:
    """True iff f is true at every world of i (vacuously at the empty state)."""
    return _Eval(m, variant).accepts_inner(i, f)


def _sweep_atoms(premise: Formula, conclusion: Formula | None) -> tuple[str, ...]:
    names = set(atoms_of(premise))
    if conclusion is not None:
        names |= set(atoms_of(conclusion))
    return tuple(sorted(names)) or ("p",)


def entails_truth(
    premise: Formula,
    conclusion: Formula,
    max_worlds: int = 3,
    variant: KVariant = KVariant.CLASSIC,
) -> ValidUpTo | CounterExample:
    """Truth preservation at every (world, nonempty state) pair."""
    atoms = _sweep_atoms(premise, conclusion)
    for n in range(1, max_worlds + 1):
        for model in enumerate_classical_models(n, atoms):
            ev = _Eval(model, variant)
            for w in range(n):
                for i in range(1, full_mask(n) + 1):
                    if ev.truth(w, i, premise) and not ev.truth(w, i, conclusion):
                        return CounterExample(model, i, world=w)
    return ValidUpTo(max_worlds)


def entails_acceptance(
    premise: Formula,
    conclusion: Formula,
    max_worlds: int = 3,
    variant: KVariant = KVariant.CLASSIC,
) -> ValidUpTo | CounterExample:
    """Acceptance preservation across every nonempty state."""
    atoms = _sweep_atoms(premise, conclusion)
    for n in range(1, max_worlds + 1):
        for model in enumerate_classical_models(n, atoms):
            ev = _Eval(model, variant)
            for i in range(1, full_mask(n) + 1):
                if ev.accepts_inner(i, premise) and not ev.accepts_inner(i, conclusion):
                    return CounterExample(model, i)
    return ValidUpTo(max_worlds)


def find_accepting_state(
    f: Formula, max_worlds: int = 3, variant: KVariant = KVariant.CLASSIC
) -> CounterExample | None:
    """First (model, nonempty state) accepting f, or None if there is none."""
    atoms = _sweep_atoms(f, None)
    for n in range(1, max_worlds + 1):
        for model in enumerate_classical_models(n, atoms):
            ev = _Eval(model, variant)
            for i in range(1, full_mask(n) + 1):
                if ev.accepts_inner(i, f):
                    return CounterExample(model, i, detail="accepting state")
    return None
