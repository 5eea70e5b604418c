"""Bilateral support/rejection semantics over bounded models.

A state supports or rejects a formula directly; the two relations are
defined by mutual recursion. Highlights:

* rejecting a conjunction looks for a split i = i1 | i2 (empty halves
  allowed) rejecting the two conjuncts separately;
* might quantifies over singleton substates;
* ``K{a}f`` is supported when every accessible refinement of the
  agent's state, at every world of i, supports f; rejected when every
  world of i leaves some accessible refinement that fails to support f.

On valid models the K clauses collapse to quantifiers over worldly
information (``supports_K_pointwise``); both implementations are kept
and can be checked against each other.

Consequence: ``coherent_entails`` preserves support across internally
coherent states, ``assertorically_equivalent`` demands the same support
at every state. Both sweep all bounded models up to a world bound via
the batched engine and re-verify any counterexample with this module's
scalar evaluator before reporting it.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import engine
from .models import (
    BoundedModel,
    accessible_refinements,
    is_internally_coherent,
    worlds_in,
)
from .results import CounterExample, UnknownAgentError, UnknownAtomError, ValidUpTo
from .syntax import And, Atom, Formula, Know, Might, Neg, agents_of, atoms_of

__all__ = [
    "Verdict",
    "supports",
    "rejects",
    "verdict",
    "supports_K_pointwise",
    "rejects_K_pointwise",
    "coherent_entails",
    "assertorically_equivalent",
    "find_supporting_state",
]


@dataclass(frozen=True)
class Verdict:
    supports: bool
    rejects: bool


class _Eval:
    """Scalar evaluator; memoizes (state, subformula, side) per model.

    Keys hold the formula nodes themselves (they are frozen and
    hashable), so the memo stays sound across unrelated top-level calls.
    """

    def __init__(self, model: BoundedModel, k_impl: str = "acc"):
        self.model = model
        self.k_impl = k_impl
        self._memo: dict[tuple[int, Formula, bool], bool] = {}
        self._acc: dict[tuple[int, int], list[int]] = {}

    def _refinements(self, agent: int, w: int) -> list[int]:
        key = (agent, w)
        cached = self._acc.get(key)
        if cached is None:
            try:
                kw = self.model.kfun[agent][w]
            except KeyError:
                raise UnknownAgentError(agent) from None
            cached = sorted(accessible_refinements(kw, self.model))
            self._acc[key] = cached
        return cached

    def supports(self, i: int, f: Formula) -> bool:
        return self._eval(i, f, True)

    def rejects(self, i: int, f: Formula) -> bool:
        return self._eval(i, f, False)

    def _eval(self, i: int, f: Formula, positive: bool) -> bool:
        key = (i, f, positive)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        value = self._compute(i, f, positive)
        self._memo[key] = value
        return value

    def _compute(self, i: int, f: Formula, positive: bool) -> bool:
        if isinstance(f, Atom):
            try:
                mask = self.model.valuation[f.name]
            except KeyError:
                raise UnknownAtomError(f.name) from None
            if positive:
                return i & ~mask == 0
            return i & mask == 0
        if isinstance(f, Neg):
            return self._eval(i, f.child, not positive)
        if isinstance(f, And):
            if positive:
                return self._eval(i, f.left, True) and self._eval(i, f.right, True)
            for half in range(i + 1):
                if half & ~i:
                    continue
                if not self._eval(half, f.left, False):
                    continue
                rest = i & ~half
                # the other half may be any superset of the rest inside i
                for other in range(rest, i + 1):
                    if other & ~i or other & rest != rest:
                        continue
                    if self._eval(other, f.right, False):
                        return True
            return False
        if isinstance(f, Might):
            members = worlds_in(i)
            if positive:
                return any(self._eval(1 << w, f.child, True) for w in members)
            return all(self._eval(1 << w, f.child, False) for w in members)
        if isinstance(f, Know):
            if self.k_impl == "pointwise":
                return self._know_pointwise(i, f.agent, f.child, positive)
            return self._know_acc(i, f.agent, f.child, positive)
        raise TypeError(f"not a formula: {f!r}")

    def _know_acc(self, i: int, agent: int, child: Formula, positive: bool) -> bool:
        if positive:
            return all(
                self._eval(j, child, True)
                for w in worlds_in(i)
                for j in self._refinements(agent, w)
            )
        return all(
            any(not self._eval(j, child, True) for j in self._refinements(agent, w))
            for w in worlds_in(i)
        )

    def _know_pointwise(self, i: int, agent: int, child: Formula, positive: bool) -> bool:
        try:
            ks = self.model.kfun[agent]
        except KeyError:
            raise UnknownAgentError(agent) from None
        ifun = self.model.ifun
        if positive:
            return all(
                self._eval(ifun[u], child, True)
                for w in worlds_in(i)
                for u in worlds_in(ks[w])
            )
        return all(
            any(not self._eval(ifun[u], child, True) for u in worlds_in(ks[w]))
            for w in worlds_in(i)
        )


def supports(m: BoundedModel, i: int, f: Formula, k_impl: str = "acc") -> bool:
    """i supports f (accepts it as established)."""
    return _Eval(m, k_impl).supports(i, f)


def rejects(m: BoundedModel, i: int, f: Formula, k_impl: str = "acc") -> bool:
    """i rejects f (refutes it)."""
    return _Eval(m, k_impl).rejects(i, f)


def verdict(m: BoundedModel, i: int, f: Formula) -> Verdict:
    ev = _Eval(m)
    return Verdict(ev.supports(i, f), ev.rejects(i, f))


def supports_K_pointwise(m: BoundedModel, i: int, agent: int, f: Formula) -> bool:
    """i supports K{agent}f via the worldly-information form of the clause."""
    return _Eval(m)._know_pointwise(i, agent, f, True)


def rejects_K_pointwise(m: BoundedModel, i: int, agent: int, f: Formula) -> bool:
    """i rejects K{agent}f via the worldly-information form of the clause."""
    return _Eval(m)._know_pointwise(i, agent, f, False)


# ---------------------------------------------------------------------------
# Consequence relations

def _sweep_signature(
    premise: Formula, conclusion: Formula
) -> tuple[tuple[str, ...], tuple[int, ...]]:
    atoms = tuple(sorted(set(atoms_of(premise)) | set(atoms_of(conclusion)))) or ("p",)
    agents = tuple(sorted(set(agents_of(premise)) | set(agents_of(conclusion)))) or (1,)
    return atoms, agents


def coherent_entails(
    premise: Formula,
    conclusion: Formula,
    max_worlds: int = 3,
    backend: str | None = None,
) -> ValidUpTo | CounterExample:
    """Support preservation across internally coherent states."""
    atoms, agents = _sweep_signature(premise, conclusion)
    be = engine.get_backend(backend)
    for n in range(1, max_worlds + 1):
        batch = engine.bounded_batch(n, atoms, agents)
        sup_p, _ = engine.evaluate(batch, premise, backend=be)
        sup_c, _ = engine.evaluate(batch, conclusion, backend=be)
        hit = engine.first_hit(batch.ic_table(be) & sup_p & ~sup_c)
        if hit is not None:
            model = batch.models[hit[0]]
            state = hit[1]
            assert is_internally_coherent(state, model)
            assert supports(model, state, premise)
            assert not supports(model, state, conclusion)
            return CounterExample(model, state, detail="supports premise, not conclusion")
    return ValidUpTo(max_worlds)


def assertorically_equivalent(
    left: Formula,
    right: Formula,
    max_worlds: int = 3,
    coherent_only: bool = False,
    backend: str | None = None,
) -> ValidUpTo | CounterExample:
    """Same support at every state (optionally only coherent ones)."""
    atoms, agents = _sweep_signature(left, right)
    be = engine.get_backend(backend)
    for n in range(1, max_worlds + 1):
        batch = engine.bounded_batch(n, atoms, agents)
        sup_l, _ = engine.evaluate(batch, left, backend=be)
        sup_r, _ = engine.evaluate(batch, right, backend=be)
        diff = sup_l ^ sup_r
        if coherent_only:
            diff &= batch.ic_table(be)
        hit = engine.first_hit(diff)
        if hit is not None:
            model = batch.models[hit[0]]
            state = hit[1]
            assert supports(model, state, left) != supports(model, state, right)
            return CounterExample(model, state, detail="support differs")
    return ValidUpTo(max_worlds)


def find_supporting_state(
    f: Formula,
    max_worlds: int = 3,
    nonempty_only: bool = True,
    backend: str | None = None,
) -> CounterExample | None:
    """First (model, state) supporting f, or None when no state does."""
    atoms = atoms_of(f) or ("p",)
    agents = agents_of(f) or (1,)
    be = engine.get_backend(backend)
    for n in range(1, max_worlds + 1):
        batch = engine.bounded_batch(n, atoms, agents)
        sup, _ = engine.evaluate(batch, f, backend=be)
        if nonempty_only:
            sup = sup.copy()
            sup[:, 0] = False
        hit = engine.first_hit(sup)
        if hit is not None:
            model = batch.models[hit[0]]
            assert supports(model, hit[1], f)
            return CounterExample(model, hit[1], detail="supporting state")
    return None
