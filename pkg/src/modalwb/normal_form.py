"""Support/rejection normal forms: a diamond-restricted head plus
might-prefixed diamond-restricted conjuncts.

Every formula f gets two normal forms. On internally coherent states,
supporting f is equivalent to supporting `head & <>d1 & ... & <>dm` of
the support form, and rejecting f is equivalent to supporting the
rejection form's denotation. The construction is inductive:

* atoms and K-formulas are their own head (rejection head: negation);
* negation swaps the two forms;
* conjunction conjoins heads and concatenates diamond lists; its
  rejection disjoins the heads and re-anchors every diamond conjunct d
  of a rejection form with that form's head h, yielding `<>(h & d)`;
* might moves the whole support form into one diamond conjunct under a
  synthesized tautology head, and collapses the rejection form into a
  single head.

The tautology head is `(a | ~a)` for the alphabetically first atom of
the input. `verify_normal_form` replays the equivalence over every
bounded model and internally coherent state up to a bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import engine
from .results import CounterExample, ValidUpTo
from .syntax import (
    And,
    Atom,
    Formula,
    Know,
    Might,
    Neg,
    agents_of,
    atoms_of,
    conjoin,
    is_diamond_restricted,
    or_,
)

__all__ = ["NormalForm", "normal_form", "verify_normal_form"]


@dataclass(frozen=True)
class NormalForm:
    head: Formula
    diamonds: tuple[Formula, ...]

    def __post_init__(self):
        if not is_diamond_restricted(self.head):
            raise ValueError("normal form head must be diamond-restricted")
        for d in self.diamonds:
            if not is_diamond_restricted(d):
                raise ValueError("normal form diamond conjuncts must be diamond-restricted")

    def denote(self) -> Formula:
        """The conjunction head & <>d1 & ... & <>dn."""
        return conjoin([self.head] + [Might(d) for d in self.diamonds])


def _tautology(f: Formula) -> Formula:
    names = atoms_of(f)
    a = Atom(names[0] if names else "p")
    return or_(a, Neg(a))


def normal_form(f: Formula) -> tuple[NormalForm, NormalForm]:
    """(support form, rejection form) for f."""
    taut = _tautology(f)

    def build(g: Formula) -> tuple[NormalForm, NormalForm]:
        if isinstance(g, (Atom, Know)):
            return NormalForm(g, ()), NormalForm(Neg(g), ())
        if isinstance(g, Neg):
            sup, rej = build(g.child)
            return rej, sup
        if isinstance(g, And):
            lsup, lrej = build(g.left)
            rsup, rrej = build(g.right)
            sup = NormalForm(And(lsup.head, rsup.head), lsup.diamonds + rsup.diamonds)
            # a rejecting split pins each diamond witness to a world whose
            # singleton also supports that side's head
            rej = NormalForm(
                or_(lrej.head, rrej.head),
                tuple(And(lrej.head, d) for d in lrej.diamonds)
                + tuple(And(rrej.head, d) for d in rrej.diamonds),
            )
            return sup, rej
        if isinstance(g, Might):
            csup, crej = build(g.child)
            sup = NormalForm(taut, (conjoin([csup.head, *csup.diamonds]),))
            rej = NormalForm(conjoin([crej.head, *crej.diamonds]), ())
            return sup, rej
        raise TypeError(f"not a formula: {g!r}")

    return build(f)


def verify_normal_form(
    f: Formula, max_worlds: int = 3, backend: str | None = None
) -> ValidUpTo | CounterExample:
    """Check both equivalences over all bounded models and coherent states."""
    sup_nf, rej_nf = normal_form(f)
    sup_den = sup_nf.denote()
    rej_den = rej_nf.denote()
    atoms = tuple(sorted(set(atoms_of(f)) | set(atoms_of(sup_den)))) or ("p",)
    agents = agents_of(f) or (1,)
    be = engine.get_backend(backend)
    for n in range(1, max_worlds + 1):
        batch = engine.bounded_batch(n, atoms, agents)
        sup_f, rej_f = engine.evaluate(batch, f, backend=be)
        sup_s, _ = engine.evaluate(batch, sup_den, backend=be)
        sup_r, _ = engine.evaluate(batch, rej_den, backend=be)
        ic = batch.ic_table(be)
        bad = ic & ((sup_f ^ sup_s) | (rej_f ^ sup_r))
        hit = engine.first_hit(bad)
        if hit is not None:
            model = batch.models[hit[0]]
            state = hit[1]
            side = "support" if bool((sup_f ^ sup_s)[hit[0], state]) else "rejection"
            return CounterExample(model, state, detail=f"{side} form differs")
    return ValidUpTo(max_worlds)
