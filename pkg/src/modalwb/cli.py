"""Command-line front end.

Subcommands: eval, validate, entail, countermodel, nf, facts, check.
All semantic work happens in the library modules; this file only parses
arguments and formats output. Exit codes: 2 for usage errors, 1 when
`facts`/`check` find an expectation mismatch or `validate` rejects a
model, 0 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checker, domain, models, stable
from .checker import Bound, Claim
from .domain import KVariant
from .normal_form import normal_form, verify_normal_form
from .results import CounterExample, ValidUpTo
from .syntax import ParseError, agents_of, parse, print_formula

_SEMANTICS = ("stable", "domain-classic", "domain-modified")
_VARIANTS = {
    "domain-classic": KVariant.CLASSIC,
    "domain-modified": KVariant.MODIFIED_FACTIVE,
}


class _UsageError(Exception):
    pass


def _parse_formula(text: str):
    try:
        return parse(text)
    except ParseError as exc:
        raise _UsageError(f"formula {text!r}: {exc}") from None


def _parse_state(text: str) -> int:
    try:
        worlds = [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise _UsageError(f"state must be a comma-separated world list, got {text!r}")
    return models.mask_of(worlds)


def _load_model(path: str):
    try:
        return models.load_model(path)
    except FileNotFoundError:
        raise _UsageError(f"model file not found: {path}")
    except (models.InvalidModelError, ValueError, json.JSONDecodeError) as exc:
        raise _UsageError(f"model file {path}: {exc}")


def _emit(args, human: str, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _entail_result(args, result: ValidUpTo | CounterExample) -> None:
    if isinstance(result, ValidUpTo):
        _emit(
            args,
            f"holds (valid up to {result.max_worlds} worlds)",
            {"verdict": "holds", "max_worlds": result.max_worlds},
        )
    else:
        witness = result.to_json_dict()
        _emit(
            args,
            f"fails: {result}\nwitness: {json.dumps(witness, sort_keys=True)}",
            {"verdict": "fails", "witness": witness},
        )


# ---------------------------------------------------------------------------
# Subcommands

def _cmd_eval(args) -> int:
    f = _parse_formula(args.formula)
    model = _load_model(args.model)
    if args.semantics == "stable":
        if not isinstance(model, models.BoundedModel):
            raise _UsageError("stable semantics needs a bounded model (ifun/kfun)")
        if args.state is None:
            raise _UsageError("eval with stable semantics needs --state")
        state = _parse_state(args.state)
        v = stable.verdict(model, state, f)
        _emit(
            args,
            f"supports: {str(v.supports).lower()}\nrejects: {str(v.rejects).lower()}",
            {"supports": v.supports, "rejects": v.rejects},
        )
        return 0
    variant = _VARIANTS[args.semantics]
    if isinstance(model, models.BoundedModel):
        raise _UsageError("domain semantics needs a classical model (k), not a bounded one")
    if isinstance(model, models.InformationModel):
        if agents_of(f):
            raise _UsageError("this model file has no knowledge function")
        # knowledge-free formulas never consult k
        model = models.ClassicalModel(
            model, tuple(1 << w for w in range(model.world_count))
        )
    if args.state is None:
        raise _UsageError("eval needs --state")
    state = _parse_state(args.state)
    if args.world is not None:
        value = domain.truth_at(model, args.world, state, f, variant)
        _emit(args, f"truth: {str(value).lower()}", {"truth": value})
    else:
        value = domain.accepts(model, state, f, variant)
        _emit(args, f"accepts: {str(value).lower()}", {"accepts": value})
    return 0


def _cmd_validate(args) -> int:
    try:
        model = models.load_model(args.model)
    except models.InvalidModelError as exc:
        _emit(
            args,
            f"invalid: {exc.violation}",
            {"valid": False, "violation": str(exc.violation)},
        )
        return 1
    except FileNotFoundError:
        raise _UsageError(f"model file not found: {args.model}")
    except (ValueError, json.JSONDecodeError) as exc:
        raise _UsageError(f"model file {args.model}: {exc}")
    kind = type(model).__name__
    _emit(args, f"ok ({kind})", {"valid": True, "kind": kind})
    return 0


_KIND_FLAGS = {
    "truth": "truth-entails",
    "acceptance": "acceptance-entails",
    "coherent": "coherent-entails",
    "assertoric": "assertoric-equiv",
}


def _claim_from_args(args) -> Claim:
    kind = _KIND_FLAGS[args.kind]
    semantics = args.semantics
    if kind in ("coherent-entails", "assertoric-equiv") and semantics != "stable":
        raise _UsageError(f"--kind {args.kind} requires --semantics stable")
    if kind in ("truth-entails", "acceptance-entails") and semantics == "stable":
        raise _UsageError(f"--kind {args.kind} requires a domain semantics")
    return Claim(
        kind=kind,
        premise=_parse_formula(args.premise),
        conclusion=_parse_formula(args.conclusion),
        semantics=semantics,
        expected="holds",
    )


def _cmd_entail(args) -> int:
    claim = _claim_from_args(args)
    result = checker.run_claim(claim, Bound(max_worlds=args.max_worlds))
    if result.verdict == "holds":
        _emit(
            args,
            f"holds (valid up to {args.max_worlds} worlds)",
            {"verdict": "holds", "max_worlds": args.max_worlds},
        )
    else:
        _emit(
            args,
            f"fails: {result.detail}\nwitness: {json.dumps(result.witness, sort_keys=True)}",
            {"verdict": "fails", "witness": result.witness},
        )
    return 0


def _cmd_countermodel(args) -> int:
    claim = _claim_from_args(args)
    cex = checker.find_countermodel(claim, Bound(max_worlds=args.max_worlds))
    if cex is None:
        _emit(
            args,
            f"none found up to {args.max_worlds} worlds",
            {"found": False, "max_worlds": args.max_worlds},
        )
    else:
        witness = cex.to_json_dict()
        _emit(
            args,
            f"counter-model ({cex.model.world_count} worlds, minimized):\n"
            + json.dumps(witness, sort_keys=True, indent=2),
            {"found": True, "witness": witness},
        )
    return 0


def _cmd_nf(args) -> int:
    f = _parse_formula(args.formula)
    sup, rej = normal_form(f)
    uni = args.unicode
    payload = {
        "support": print_formula(sup.denote(), uni),
        "reject": print_formula(rej.denote(), uni),
        "support_head": print_formula(sup.head, uni),
        "support_diamonds": [print_formula(d, uni) for d in sup.diamonds],
        "reject_head": print_formula(rej.head, uni),
        "reject_diamonds": [print_formula(d, uni) for d in rej.diamonds],
    }
    human = [
        f"support: {payload['support']}",
        f"reject:  {payload['reject']}",
    ]
    if args.verify:
        outcome = verify_normal_form(f, max_worlds=args.max_worlds)
        if isinstance(outcome, ValidUpTo):
            payload["verified"] = True
            human.append(f"verified: equivalent up to {args.max_worlds} worlds")
        else:
            payload["verified"] = False
            payload["witness"] = outcome.to_json_dict()
            human.append(f"verification FAILED: {outcome}")
    _emit(args, "\n".join(human), payload)
    return 0 if payload.get("verified", True) else 1


def _cmd_facts(args) -> int:
    bound = Bound(
        max_worlds=args.max_worlds,
        max_formula_size=args.max_size,
        jobs=args.jobs,
    )
    reports = checker.run_fact_suite(bound)
    ok = all(r.match for r in reports)
    if args.format == "json":
        payload = {
            "bound": {"max_worlds": bound.max_worlds, "max_formula_size": bound.max_formula_size},
            "facts": [r.to_json_dict(timings=args.timings) for r in reports],
            "ok": ok,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for r in reports:
            status = "ok  " if r.match else "FAIL"
            line = f"{status} {r.fact_id}: {r.verdict} (expected {r.expected}) - {r.detail}"
            if args.timings:
                line += f" [{r.elapsed:.2f}s]"
            print(line)
        print(f"{'all expectations met' if ok else 'EXPECTATION MISMATCH'} "
              f"(worlds <= {bound.max_worlds}, formula size <= {bound.max_formula_size})")
    return 0 if ok else 1


def _cmd_check(args) -> int:
    bound = Bound(max_worlds=args.max_worlds, jobs=args.jobs)
    try:
        report = checker.check_claims_file(args.claims, bound)
    except FileNotFoundError:
        raise _UsageError(f"claims file not found: {args.claims}")
    except json.JSONDecodeError as exc:
        raise _UsageError(f"claims file {args.claims}: line {exc.lineno}: {exc.msg}")
    except checker.ClaimSchemaError as exc:
        raise _UsageError(f"claims file {args.claims}: {exc}")
    if args.format == "json":
        payload = {
            "claims": [
                {
                    "id": claim.claim_id,
                    "kind": claim.kind,
                    "expected": claim.expected,
                    "verdict": res.verdict,
                    "match": res.verdict == claim.expected,
                    "witness": res.witness,
                }
                for claim, res in report.entries
            ],
            "ok": report.ok,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for claim, res in report.entries:
            status = "ok  " if res.verdict == claim.expected else "FAIL"
            print(f"{status} {claim.claim_id}: {res.verdict} (expected {claim.expected}) - {res.detail}")
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modalwb",
        description="Model checking for epistemic might-logics over information states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("human", "json"), default="human")

    p = sub.add_parser("eval", help="evaluate a formula on a model file")
    p.add_argument("-m", "--model", required=True)
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("-s", "--state", help="comma-separated world indices, e.g. 0,1")
    p.add_argument("-w", "--world", type=int, help="world for truth evaluation (domain semantics)")
    p.add_argument("--semantics", choices=_SEMANTICS, default="stable")
    add_common(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("validate", help="validate a model file")
    p.add_argument("-m", "--model", required=True)
    add_common(p)
    p.set_defaults(func=_cmd_validate)

    for name, help_text in (
        ("entail", "check an entailment up to a world bound"),
        ("countermodel", "search for a minimized counter-model"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--kind", choices=tuple(_KIND_FLAGS), default="coherent")
        p.add_argument("-p", "--premise", required=True)
        p.add_argument("-c", "--conclusion", required=True)
        p.add_argument("--semantics", choices=_SEMANTICS, default="stable")
        p.add_argument("--max-worlds", type=int, default=3)
        add_common(p)
        p.set_defaults(func=_cmd_entail if name == "entail" else _cmd_countermodel)

    p = sub.add_parser("nf", help="print support and rejection normal forms")
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("--verify", action="store_true", help="verify the equivalence by sweep")
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--unicode", action="store_true")
    add_common(p)
    p.set_defaults(func=_cmd_nf)

    p = sub.add_parser("facts", help="run the built-in fact suite")
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--max-size", type=int, default=6, help="formula size bound for sweeps")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timings", action="store_true")
    add_common(p)
    p.set_defaults(func=_cmd_facts)

    p = sub.add_parser("check", help="run a claims file")
    p.add_argument("claims")
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    add_common(p)
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
