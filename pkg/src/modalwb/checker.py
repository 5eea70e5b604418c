"""Claim checking, the built-in fact suite, and counter-model search.

A Claim packages an entailment-style question (kind, formulas,
semantics) with an expected verdict; claims can be loaded from JSON
files and run in bulk. The built-in fact suite runs a frozen set of
such claims plus exhaustive invariant sweeps (union closure, pointwise
flatness, K-clause agreement, normal-form equivalence, knowledge
veridicality) over every bounded model and every formula up to the
bound, and reproduces the known two-world counter-models exactly.

Verdicts are always relative to the bound: "holds" means no
counterexample among the enumerated models. Every reported witness is
re-verified with the scalar evaluators before it is emitted.
"""

from __future__ import annotations

import json
import os.path
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable

import numpy as np

from . import domain, engine, stable
from .domain import KVariant
from .models import (
    BoundedModel,
    ClassicalModel,
    InformationModel,
    Model,
    drop_world,
    from_json_dict,
    is_internally_coherent,
    load_model,
    mask_of,
    permute_worlds,
    to_json_dict,
    validate,
    worlds_in,
)
from .normal_form import normal_form
from .results import CounterExample, ValidUpTo
from .syntax import (
    Formula,
    Know,
    Might,
    agents_of,
    enumerate_formulas,
    is_diamond_restricted,
    parse,
    print_formula,
)

__all__ = [
    "Bound",
    "Claim",
    "ClaimResult",
    "ClaimSchemaError",
    "FactReport",
    "run_claim",
    "check_claims_file",
    "run_fact_suite",
    "find_countermodel",
    "isomorphic",
    "KINDS",
    "SEMANTICS",
]

KINDS = (
    "truth-entails",
    "acceptance-entails",
    "coherent-entails",
    "assertoric-equiv",
    "incoherent",
    "supports",
)
SEMANTICS = ("domain-classic", "domain-modified", "stable")

_DOMAIN_VARIANTS = {
    "domain-classic": KVariant.CLASSIC,
    "domain-modified": KVariant.MODIFIED_FACTIVE,
}


@dataclass(frozen=True)
class Bound:
    """Search bounds for sweeps: worlds, formula size, atom signature."""

    max_worlds: int = 3
    max_formula_size: int = 6
    atoms: tuple[str, ...] = ("p", "q")
    jobs: int = 1
    backend: str | None = None


@dataclass(frozen=True)
class Claim:
    kind: str
    premise: Formula
    semantics: str
    expected: str
    conclusion: Formula | None = None
    claim_id: str = ""
    model_path: str | None = None
    state: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ClaimSchemaError(f"unknown kind {self.kind!r}")
        if self.semantics not in SEMANTICS:
            raise ClaimSchemaError(f"unknown semantics {self.semantics!r}")
        if self.expected not in ("holds", "fails"):
            raise ClaimSchemaError(f"expected must be 'holds' or 'fails'")
        if self.kind in ("truth-entails", "acceptance-entails"):
            if self.semantics == "stable":
                raise ClaimSchemaError(f"{self.kind} needs domain semantics")
            if self.conclusion is None:
                raise ClaimSchemaError(f"{self.kind} needs a conclusion")
        if self.kind in ("coherent-entails", "assertoric-equiv"):
            if self.semantics != "stable":
                raise ClaimSchemaError(f"{self.kind} needs stable semantics")
            if self.conclusion is None:
                raise ClaimSchemaError(f"{self.kind} needs a conclusion")
        if self.kind == "supports" and (self.model_path is None or self.state is None):
            raise ClaimSchemaError("supports needs a model file and a state")


class ClaimSchemaError(ValueError):
    pass


@dataclass(frozen=True)
class ClaimResult:
    verdict: str  # holds | fails
    witness: dict | None
    detail: str


@dataclass(frozen=True)
class FactReport:
    fact_id: str
    description: str
    expected: str
    verdict: str
    match: bool
    witness: dict | None
    detail: str
    elapsed: float

    def to_json_dict(self, timings: bool = False) -> dict:
        out = {
            "id": self.fact_id,
            "description": self.description,
            "expected": self.expected,
            "verdict": self.verdict,
            "match": self.match,
            "detail": self.detail,
            "witness": self.witness,
        }
        if timings:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out


# ---------------------------------------------------------------------------
# Running individual claims

def _outcome(result: ValidUpTo | CounterExample) -> ClaimResult:
    if isinstance(result, ValidUpTo):
        return ClaimResult("holds", None, str(result))
    return ClaimResult("fails", result.to_json_dict(), str(result))


def run_claim(claim: Claim, bound: Bound) -> ClaimResult:
    """Evaluate one claim's verdict (ignores claim.expected)."""
    n = bound.max_worlds
    if claim.kind == "truth-entails":
        res = domain.entails_truth(
            claim.premise, claim.conclusion, n, _DOMAIN_VARIANTS[claim.semantics]
        )
        return _outcome(res)
    if claim.kind == "acceptance-entails":
        res = domain.entails_acceptance(
            claim.premise, claim.conclusion, n, _DOMAIN_VARIANTS[claim.semantics]
        )
        return _outcome(res)
    if claim.kind == "coherent-entails":
        return _outcome(
            stable.coherent_entails(claim.premise, claim.conclusion, n, bound.backend)
        )
    if claim.kind == "assertoric-equiv":
        return _outcome(
            stable.assertorically_equivalent(
                claim.premise, claim.conclusion, n, backend=bound.backend
            )
        )
    if claim.kind == "incoherent":
        if claim.semantics == "stable":
            hit = stable.find_supporting_state(claim.premise, n, backend=bound.backend)
        else:
            hit = domain.find_accepting_state(
                claim.premise, n, _DOMAIN_VARIANTS[claim.semantics]
            )
        if hit is None:
            return ClaimResult("holds", None, f"no accepting state up to {n} worlds")
        return ClaimResult("fails", hit.to_json_dict(), str(hit))
    if claim.kind == "supports":
        model = load_model(claim.model_path)
        if claim.semantics == "stable":
            if not isinstance(model, BoundedModel):
                raise ClaimSchemaError("stable 'supports' needs a bounded model file")
            ok = stable.supports(model, claim.state, claim.premise)
        else:
            if not isinstance(model, ClassicalModel):
                raise ClaimSchemaError("domain 'supports' needs a classical model file")
            ok = domain.accepts(
                model, claim.state, claim.premise, _DOMAIN_VARIANTS[claim.semantics]
            )
        verdict = "holds" if ok else "fails"
        return ClaimResult(verdict, None, f"state {worlds_in(claim.state)}")
    raise AssertionError(f"unhandled kind {claim.kind}")


# ---------------------------------------------------------------------------
# Claims files

def _parse_formula_field(raw, where: str) -> Formula:
    if not isinstance(raw, str):
        raise ClaimSchemaError(f"{where}: formula must be a string")
    try:
        return parse(raw)
    except ValueError as exc:
        raise ClaimSchemaError(f"{where}: {exc}") from None


def claim_from_json(data: dict, index: int, base_dir: str = ".") -> Claim:
    where = f"claims[{index}]"
    if not isinstance(data, dict):
        raise ClaimSchemaError(f"{where}: must be an object")
    allowed = {"id", "kind", "premise", "conclusion", "semantics", "expected", "model", "state"}
    unknown = set(data) - allowed
    if unknown:
        raise ClaimSchemaError(f"{where}: unknown keys {sorted(unknown)}")
    for req in ("kind", "premise", "semantics", "expected"):
        if req not in data:
            raise ClaimSchemaError(f"{where}: missing {req!r}")
    conclusion = None
    if "conclusion" in data:
        conclusion = _parse_formula_field(data["conclusion"], f"{where}.conclusion")
    model_path = None
    if "model" in data:
        model_path = os.path.join(base_dir, data["model"])
    state = None
    if "state" in data:
        if not isinstance(data["state"], list):
            raise ClaimSchemaError(f"{where}.state: must be a list of world indices")
        state = mask_of(data["state"])
    try:
        return Claim(
            kind=data["kind"],
            premise=_parse_formula_field(data["premise"], f"{where}.premise"),
            conclusion=conclusion,
            semantics=data["semantics"],
            expected=data["expected"],
            claim_id=str(data.get("id", f"claim-{index}")),
            model_path=model_path,
            state=state,
        )
    except ClaimSchemaError as exc:
        raise ClaimSchemaError(f"{where}: {exc}") from None


@dataclass
class ClaimsReport:
    entries: list[tuple[Claim, ClaimResult]]

    @property
    def ok(self) -> bool:
        return all(res.verdict == claim.expected for claim, res in self.entries)


def check_claims_file(path: str, bound: Bound) -> ClaimsReport:
    """Run every claim in a JSON file, in file order."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)  # JSONDecodeError carries line numbers
    if isinstance(data, dict):
        claims_raw = data.get("claims")
    else:
        claims_raw = data
    if not isinstance(claims_raw, list):
        raise ClaimSchemaError("claims file must be a list or {'claims': [...]}")
    base_dir = os.path.dirname(os.path.abspath(path))
    claims = [claim_from_json(c, i, base_dir) for i, c in enumerate(claims_raw)]
    if bound.jobs > 1 and len(claims) > 1:
        args = [(claim, bound) for claim in claims]
        with ProcessPoolExecutor(max_workers=bound.jobs) as pool:
            results = list(pool.map(_run_claim_star, args))
    else:
        results = [run_claim(claim, bound) for claim in claims]
    return ClaimsReport(list(zip(claims, results)))


def _run_claim_star(args: tuple[Claim, Bound]) -> ClaimResult:
    return run_claim(*args)


# ---------------------------------------------------------------------------
# Canonical two-world counter-models

def _veridicality_gap_model() -> ClassicalModel:
    # p holds at world 1 only; the agent's state at world 0 spans both
    # worlds, so K<>p is true at (0, {0}) while <>p is false there.
    base = InformationModel(2, {"p": 0b10})
    return ClassicalModel(base, (0b11, 0b10))


def _transparency_gap_model() -> ClassicalModel:
    # p at world 0, q at world 1, knowledge state {0,1} everywhere:
    # {0,1} accepts K~(p&q) but not K~(p&<>q) under the factive variant.
    base = InformationModel(2, {"p": 0b01, "q": 0b10})
    return ClassicalModel(base, (0b11, 0b11))


def _uniformity_witness_model() -> BoundedModel:
    # p at world 0 only; each world's information and knowledge is its
    # own singleton. {0,1} supports <>p but not ~K~p.
    base = InformationModel(2, {"p": 0b01})
    return BoundedModel(base, (0b01, 0b10), {1: (0b01, 0b10)})


# ---------------------------------------------------------------------------
# Isomorphism

def _relabeled_equal(a: Model, b: Model) -> bool:
    if type(a) is not type(b) or a.world_count != b.world_count:
        return False
    if dict(a.valuation) != dict(b.valuation):
        return False
    if isinstance(a, ClassicalModel):
        return a.k == b.k
    if isinstance(a, BoundedModel):
        return a.ifun == b.ifun and dict(a.kfun) == dict(b.kfun)
    return True


def isomorphic(
    a: Model,
    b: Model,
    state_a: int | None = None,
    state_b: int | None = None,
    world_a: int | None = None,
    world_b: int | None = None,
) -> bool:
    """World-bijection equivalence, also matching states/worlds if given."""
    if a.world_count != b.world_count:
        return False
    n = a.world_count
    for perm in permutations(range(n)):
        image = permute_worlds(a, perm)
        if not _relabeled_equal(image, b):
            continue
        if state_a is not None:
            mapped = mask_of(perm[w] for w in worlds_in(state_a))
            if mapped != state_b:
                continue
        if world_a is not None and perm[world_a] != world_b:
            continue
        return True
    return False


# ---------------------------------------------------------------------------
# Counter-model search with minimization

def _claim_refuted_at(
    claim: Claim, model: Model, state: int, world: int | None, bound: Bound
) -> bool:
    """Does this (model, state[, world]) point still refute the claim?"""
    if claim.kind == "truth-entails":
        if world is None or not isinstance(model, ClassicalModel):
            return False
        variant = _DOMAIN_VARIANTS[claim.semantics]
        return domain.truth_at(model, world, state, claim.premise, variant) and not (
            domain.truth_at(model, world, state, claim.conclusion, variant)
        )
    if claim.kind == "acceptance-entails":
        if state == 0 or not isinstance(model, ClassicalModel):
            return False
        variant = _DOMAIN_VARIANTS[claim.semantics]
        return domain.accepts(model, state, claim.premise, variant) and not domain.accepts(
            model, state, claim.conclusion, variant
        )
    if claim.kind == "coherent-entails":
        if not isinstance(model, BoundedModel) or not is_internally_coherent(state, model):
            return False
        return stable.supports(model, state, claim.premise) and not stable.supports(
            model, state, claim.conclusion
        )
    if claim.kind == "assertoric-equiv":
        if not isinstance(model, BoundedModel):
            return False
        return stable.supports(model, state, claim.premise) != stable.supports(
            model, state, claim.conclusion
        )
    if claim.kind == "incoherent":
        if state == 0:
            return False
        if claim.semantics == "stable":
            return isinstance(model, BoundedModel) and stable.supports(
                model, state, claim.premise
            )
        return isinstance(model, ClassicalModel) and domain.accepts(
            model, state, claim.premise, _DOMAIN_VARIANTS[claim.semantics]
        )
    return False


def _drop_state_world(state: int, world: int | None, dropped: int):
    lower = state & ((1 << dropped) - 1)
    upper = state >> (dropped + 1)
    new_state = lower | (upper << dropped)
    if world is None:
        return new_state, None
    if world == dropped:
        return new_state, -1  # witness world removed; candidate unusable
    return new_state, (world if world < dropped else world - 1)


def _minimize(
    claim: Claim, cex: CounterExample, bound: Bound
) -> CounterExample:
    model, state, world = cex.model, cex.state, cex.world
    changed = True
    while changed and model.world_count > 1:
        changed = False
        for w in range(model.world_count):
            candidate = drop_world(model, w)
            if validate(candidate) is not None:
                continue
            new_state, new_world = _drop_state_world(state, world, w)
            if new_world == -1:
                continue
            if _claim_refuted_at(claim, candidate, new_state, new_world, bound):
                model, state, world = candidate, new_state, new_world
                changed = True
                break
    return CounterExample(model, state, world=world, detail=cex.detail)


def find_countermodel(claim: Claim, bound: Bound) -> CounterExample | None:
    """First counterexample in enumeration order, world-minimized.

    Returns None when the claim survives the whole sweep. Raises if the
    requested bound exceeds the enumeration cap (so "cannot search that
    far" is never conflated with "none found").
    """
    if claim.kind == "supports":
        raise ClaimSchemaError("supports claims name their own model; nothing to search")
    result = run_claim(claim, bound)
    if result.verdict == "holds":
        return None
    witness = result.witness
    model = _model_from_witness(witness)
    cex = CounterExample(
        model,
        mask_of(witness["state"]),
        world=witness.get("world"),
        detail=result.detail,
    )
    minimized = _minimize(claim, cex, bound)
    if not _claim_refuted_at(
        claim, minimized.model, minimized.state, minimized.world, bound
    ):
        raise AssertionError("minimized witness no longer refutes the claim")
    return minimized


def _model_from_witness(witness: dict) -> Model:
    return from_json_dict(witness["model"])


# ---------------------------------------------------------------------------
# Invariant sweeps over all formulas x all bounded models

_SWEEP_IDS = (
    "ver-stable-sweep",
    "union-closure",
    "k-clause-agreement",
    "restricted-flatness",
    "restricted-might-rejection",
    "normal-form-equivalence",
)


@dataclass
class _SweepState:
    # per check id: (sort key, payload) of the least violation seen
    best: dict[str, tuple[tuple, dict]] = field(default_factory=dict)
    formulas: int = 0

    def record(self, check: str, key: tuple, payload: dict) -> None:
        seen = self.best.get(check)
        if seen is None or key < seen[0]:
            self.best[check] = (key, payload)

    def merge(self, other: "_SweepState") -> None:
        for check, (key, payload) in other.best.items():
            self.record(check, key, payload)
        self.formulas += other.formulas


def _pointwise_all(table: np.ndarray, n_worlds: int) -> np.ndarray:
    """closure[m, j] = table holds at every singleton substate of j."""
    n_states = 1 << n_worlds
    singles = table[:, [1 << w for w in range(n_worlds)]]
    out = np.empty((table.shape[0], n_states), dtype=bool)
    for j in range(n_states):
        acc = np.ones(table.shape[0], dtype=bool)
        for w in range(n_worlds):
            if j >> w & 1:
                acc &= singles[:, w]
        out[:, j] = acc
    return out


def _sweep_range(bound: Bound, start: int, stop: int) -> _SweepState:
    """Run all formula-indexed sweep checks for formulas[start:stop]."""
    be = engine.get_backend(bound.backend)
    formulas = list(enumerate_formulas(bound.max_formula_size, bound.atoms, (1,)))
    batches = [
        engine.bounded_batch(n, tuple(sorted(bound.atoms)), (1,))
        for n in range(1, bound.max_worlds + 1)
    ]
    covers = {b.n_states: engine.covers(b.n_states) for b in batches}
    state = _SweepState()
    for f_idx in range(start, min(stop, len(formulas))):
        f = formulas[f_idx]
        restricted = is_diamond_restricted(f)
        has_k = bool(agents_of(f))
        kf = Know(1, f)
        mf = Might(f)
        sup_nf, rej_nf = normal_form(f)
        sup_den, rej_den = sup_nf.denote(), rej_nf.denote()
        state.formulas += 1
        for b_idx, batch in enumerate(batches):
            n = batch.n_worlds
            memo: dict = {}
            sup, rej = engine.evaluate(batch, f, k_impl="pointwise", backend=be, memo=memo)
            ic = batch.ic_table(be)

            def report(check: str, m_idx: int, st: int, extra: dict) -> None:
                payload = {
                    "formula": print_formula(f),
                    "n_worlds": n,
                    "model_index": m_idx,
                    "state": st,
                }
                payload.update(extra)
                state.record(check, (f_idx, b_idx, m_idx, st), payload)

            # knowledge veridicality: K f coherently entails f
            sup_k, _ = engine.evaluate(batch, kf, k_impl="pointwise", backend=be, memo=memo)
            hit = engine.first_hit(ic & sup_k & ~sup)
            if hit is not None:
                report("ver-stable-sweep", hit[0], hit[1], {})

            # union closure of support and rejection: every state reachable
            # as a union of two held states must be held, which is the
            # conjunction-rejection kernel applied to the table itself
            cov_a, cov_b, cov_u = covers[batch.n_states]
            for side, table in (("support", sup), ("rejection", rej)):
                closed = be.and_reject(table, table, cov_a, cov_b, cov_u)
                hit = engine.first_hit(closed & ~table)
                if hit is not None:
                    m_idx, u = hit
                    for p_idx in range(cov_a.shape[0]):
                        a, b = int(cov_a[p_idx]), int(cov_b[p_idx])
                        if int(cov_u[p_idx]) == u and table[m_idx, a] and table[m_idx, b]:
                            report(
                                "union-closure",
                                m_idx,
                                u,
                                {"side": side, "part_a": a, "part_b": b},
                            )
                            break

            # the two K clauses agree on valid models
            if has_k:
                sup2, rej2 = engine.evaluate(batch, f, k_impl="acc", backend=be)
                diff = (sup ^ sup2) | (rej ^ rej2)
                hit = engine.first_hit(diff)
                if hit is not None:
                    report("k-clause-agreement", hit[0], hit[1], {})

            # diamond-restricted formulas evaluate pointwise, and
            # rejecting <>f collapses to rejecting f
            if restricted:
                flat_sup = _pointwise_all(sup, n)
                flat_rej = _pointwise_all(rej, n)
                hit = engine.first_hit((sup ^ flat_sup) | (rej ^ flat_rej))
                if hit is not None:
                    report("restricted-flatness", hit[0], hit[1], {})
                _, rej_m = engine.evaluate(batch, mf, k_impl="pointwise", backend=be, memo=memo)
                hit = engine.first_hit(rej_m ^ rej)
                if hit is not None:
                    report("restricted-might-rejection", hit[0], hit[1], {})

            # normal forms agree on internally coherent states
            sup_s, _ = engine.evaluate(batch, sup_den, k_impl="pointwise", backend=be, memo=memo)
            sup_r, _ = engine.evaluate(batch, rej_den, k_impl="pointwise", backend=be, memo=memo)
            bad = ic & ((sup ^ sup_s) | (rej ^ sup_r))
            hit = engine.first_hit(bad)
            if hit is not None:
                side = "support" if bool((sup ^ sup_s)[hit[0], hit[1]]) else "rejection"
                report("normal-form-equivalence", hit[0], hit[1], {"side": side})
    return state


def _sweep_worker(args: tuple) -> _SweepState:
    bound = Bound(*args[0])
    return _sweep_range(bound, args[1], args[2])


def _run_sweeps(bound: Bound) -> _SweepState:
    formulas = list(enumerate_formulas(bound.max_formula_size, bound.atoms, (1,)))
    total = len(formulas)
    if bound.jobs <= 1 or total < 2 * bound.jobs:
        return _sweep_range(bound, 0, total)
    chunk = (total + bound.jobs - 1) // bound.jobs
    spans = [(i, min(i + chunk, total)) for i in range(0, total, chunk)]
    bound_tuple = (
        bound.max_worlds,
        bound.max_formula_size,
        bound.atoms,
        1,
        bound.backend,
    )
    merged = _SweepState()
    with ProcessPoolExecutor(max_workers=bound.jobs) as pool:
        for part in pool.map(_sweep_worker, [(bound_tuple, a, b) for a, b in spans]):
            merged.merge(part)
    return merged


def _sweep_witness(bound: Bound, payload: dict) -> dict:
    batch = engine.bounded_batch(payload["n_worlds"], tuple(sorted(bound.atoms)), (1,))
    model = batch.models[payload["model_index"]]
    out = {
        "model": to_json_dict(model),
        "state": worlds_in(payload["state"]),
        "formula": payload["formula"],
    }
    for key in ("side", "part_a", "part_b"):
        if key in payload:
            out[key] = (
                worlds_in(payload[key]) if key.startswith("part") else payload[key]
            )
    return out


# ---------------------------------------------------------------------------
# The built-in fact suite

@dataclass(frozen=True)
class _Fact:
    fact_id: str
    description: str
    expected: str
    runner: Callable[[Bound, "_SuiteContext"], tuple[str, dict | None, str, bool]]


class _SuiteContext:
    """Shares the heavy sweep results across the facts that read them."""

    def __init__(self):
        self._sweeps: _SweepState | None = None

    def sweeps(self, bound: Bound) -> _SweepState:
        if self._sweeps is None:
            self._sweeps = _run_sweeps(bound)
        return self._sweeps


def _claim_fact(claim: Claim):
    def runner(bound: Bound, ctx: _SuiteContext):
        res = run_claim(claim, bound)
        return res.verdict, res.witness, res.detail, True

    return runner


def _reproduced_fact(claim: Claim, canonical: Callable[[], Model], state: int, world: int | None = None):
    """Sweep must refute the claim; the canonical model is re-verified
    and emitted as the witness."""

    def runner(bound: Bound, ctx: _SuiteContext):
        res = run_claim(claim, bound)
        model = canonical()
        if not _claim_refuted_at(claim, model, state, world, bound):
            return res.verdict, res.witness, "canonical counter-model failed re-check", False
        witness = CounterExample(model, state, world=world).to_json_dict()
        return res.verdict, witness, "canonical two-world counter-model re-verified", True

    return runner


def _uniformity_fact(claim: Claim):
    def runner(bound: Bound, ctx: _SuiteContext):
        cex = find_countermodel(claim, bound)
        if cex is None:
            return "holds", None, "no counter-model found", True
        expected_model = _uniformity_witness_model()
        iso = isomorphic(cex.model, expected_model, cex.state, 0b11)
        detail = "minimized witness isomorphic to the canonical two-world model"
        if not iso:
            detail = "minimized witness NOT isomorphic to the canonical model"
        return "fails", cex.to_json_dict(), detail, iso

    return runner


def _asymmetry_fact():
    def runner(bound: Bound, ctx: _SuiteContext):
        ok_dir = stable.coherent_entails(
            parse("K~p"), parse("~<>p"), bound.max_worlds, bound.backend
        )
        bad_dir = stable.coherent_entails(
            parse("<>p"), parse("~K~p"), bound.max_worlds, bound.backend
        )
        good = ok_dir.holds and not bad_dir.holds
        detail = "K~p entails ~<>p while <>p does not entail ~K~p (contraposition fails)"
        if not good:
            detail = "asymmetry broken: expected one valid and one refuted direction"
        return ("holds" if good else "fails"), None, detail, True

    return runner


def _sweep_fact(check_id: str):
    def runner(bound: Bound, ctx: _SuiteContext):
        sweeps = ctx.sweeps(bound)
        found = sweeps.best.get(check_id)
        scope = (
            f"{sweeps.formulas} formulas (size <= {bound.max_formula_size}), "
            f"models up to {bound.max_worlds} worlds"
        )
        if found is None:
            return "holds", None, f"zero violations over {scope}", True
        return "fails", _sweep_witness(bound, found[1]), f"violation found over {scope}", True

    return runner


def _coherent_union_fact():
    def runner(bound: Bound, ctx: _SuiteContext):
        be = engine.get_backend(bound.backend)
        for n in range(1, bound.max_worlds + 1):
            batch = engine.bounded_batch(n, tuple(sorted(bound.atoms)), (1,))
            ic = batch.ic_table(be)
            for j in range(1, batch.n_states):
                union = np.zeros(batch.size, dtype=np.int64)
                for w in range(n):
                    if j >> w & 1:
                        union |= batch.ifun[:, w]
                bad = np.flatnonzero(ic[:, j] & (union != j))
                if bad.size:
                    model = batch.models[int(bad[0])]
                    witness = CounterExample(model, j).to_json_dict()
                    return "fails", witness, "coherent state is not the union of its worldly information", True
        return "holds", None, "every coherent state is the union of its members' worldly information", True

    return runner


def _suite_facts() -> list[_Fact]:
    c = parse
    facts: list[_Fact] = []

    def claim_fact(fact_id, description, expected, kind, premise, conclusion, semantics):
        facts.append(
            _Fact(
                fact_id,
                description,
                expected,
                _claim_fact(
                    Claim(
                        kind=kind,
                        premise=c(premise),
                        conclusion=c(conclusion) if conclusion else None,
                        semantics=semantics,
                        expected=expected,
                    )
                ),
            )
        )

    claim_fact(
        "ntrans-acceptance-classic",
        "classic acceptance: K~<>p entails K~p",
        "holds",
        "acceptance-entails",
        "K~<>p",
        "K~p",
        "domain-classic",
    )
    claim_fact(
        "ntrans-acceptance-classic-conv",
        "classic acceptance: K~p entails K~<>p",
        "holds",
        "acceptance-entails",
        "K~p",
        "K~<>p",
        "domain-classic",
    )
    facts.append(
        _Fact(
            "ver-truth-classic",
            "classic truth: K<>p does not entail <>p (knowledge is not veridical)",
            "fails",
            _reproduced_fact(
                Claim(
                    kind="truth-entails",
                    premise=c("K<>p"),
                    conclusion=c("<>p"),
                    semantics="domain-classic",
                    expected="fails",
                ),
                _veridicality_gap_model,
                state=0b01,
                world=0,
            ),
        )
    )
    claim_fact(
        "ntrans-acceptance-modified",
        "factive variant, acceptance: K~<>p entails K~p",
        "holds",
        "acceptance-entails",
        "K~<>p",
        "K~p",
        "domain-modified",
    )
    claim_fact(
        "ntrans-acceptance-modified-conv",
        "factive variant, acceptance: K~p entails K~<>p",
        "holds",
        "acceptance-entails",
        "K~p",
        "K~<>p",
        "domain-modified",
    )
    facts.append(
        _Fact(
            "gent-acceptance-modified",
            "factive variant: K~(p&q) does not yield K~(p&<>q) at the acceptance level",
            "fails",
            _reproduced_fact(
                Claim(
                    kind="acceptance-entails",
                    premise=c("K~(p&q)"),
                    conclusion=c("K~(p&<>q)"),
                    semantics="domain-modified",
                    expected="fails",
                ),
                _transparency_gap_model,
                state=0b11,
            ),
        )
    )
    for fid, formula in (
        ("might-contradiction-domain", "p & <>~p"),
        ("negated-might-contradiction-domain", "~p & <>p"),
    ):
        claim_fact(
            fid,
            f"domain semantics: no nonempty state accepts {formula}",
            "holds",
            "incoherent",
            formula,
            None,
            "domain-classic",
        )
    for fid, formula in (
        ("might-contradiction-stable", "p & <>~p"),
        ("negated-might-contradiction-stable", "~p & <>p"),
    ):
        claim_fact(
            fid,
            f"stable semantics: no nonempty state supports {formula}",
            "holds",
            "incoherent",
            formula,
            None,
            "stable",
        )
    claim_fact(
        "gent-stable",
        "coherent consequence: K~(p&<>q) entails K~(p&q)",
        "holds",
        "coherent-entails",
        "K~(p&<>q)",
        "K~(p&q)",
        "stable",
    )
    claim_fact(
        "gent-stable-conv",
        "coherent consequence: K~(p&q) entails K~(p&<>q)",
        "holds",
        "coherent-entails",
        "K~(p&q)",
        "K~(p&<>q)",
        "stable",
    )
    claim_fact(
        "ntrans-stable",
        "coherent consequence: K~<>p entails K~p",
        "holds",
        "coherent-entails",
        "K~<>p",
        "K~p",
        "stable",
    )
    claim_fact(
        "ntrans-stable-conv",
        "coherent consequence: K~p entails K~<>p",
        "holds",
        "coherent-entails",
        "K~p",
        "K~<>p",
        "stable",
    )
    claim_fact(
        "ntrans-assertoric",
        "K~<>p and K~p are assertorically equivalent",
        "holds",
        "assertoric-equiv",
        "K~<>p",
        "K~p",
        "stable",
    )
    claim_fact(
        "eluk-stable",
        "coherent consequence: K~p entails ~<>p",
        "holds",
        "coherent-entails",
        "K~p",
        "~<>p",
        "stable",
    )
    facts.append(
        _Fact(
            "uniformity-stable",
            "coherent consequence: <>p does not entail ~K~p",
            "fails",
            _uniformity_fact(
                Claim(
                    kind="coherent-entails",
                    premise=c("<>p"),
                    conclusion=c("~K~p"),
                    semantics="stable",
                    expected="fails",
                )
            ),
        )
    )
    facts.append(
        _Fact(
            "con-failure-pair",
            "K~p |= ~<>p holds while its contrapositive direction <>p |= ~K~p fails",
            "holds",
            _asymmetry_fact(),
        )
    )
    facts.append(
        _Fact(
            "coherent-union",
            "every internally coherent state is the union of its members' worldly information",
            "holds",
            _coherent_union_fact(),
        )
    )
    sweep_descriptions = {
        "ver-stable-sweep": "K f coherently entails f for every enumerated formula",
        "union-closure": "support and rejection are closed under unions of states",
        "k-clause-agreement": "refinement-based and pointwise K clauses agree everywhere",
        "restricted-flatness": "diamond-restricted formulas evaluate pointwise",
        "restricted-might-rejection": "rejecting <>f collapses to rejecting f when f is diamond-restricted",
        "normal-form-equivalence": "both normal forms match the formula on coherent states",
    }
    for check_id in _SWEEP_IDS:
        facts.append(
            _Fact(check_id, sweep_descriptions[check_id], "holds", _sweep_fact(check_id))
        )
    return facts


def run_fact_suite(bound: Bound | None = None) -> list[FactReport]:
    """Run the frozen fact set; every verdict is compared to its expectation."""
    bound = bound or Bound()
    ctx = _SuiteContext()
    reports = []
    for fact in _suite_facts():
        started = time.perf_counter()
        verdict, witness, detail, extra_ok = fact.runner(bound, ctx)
        elapsed = time.perf_counter() - started
        reports.append(
            FactReport(
                fact_id=fact.fact_id,
                description=fact.description,
                expected=fact.expected,
                verdict=verdict,
                match=(verdict == fact.expected) and extra_ok,
                witness=witness,
                detail=detail,
                elapsed=elapsed,
            )
        )
    return reports
