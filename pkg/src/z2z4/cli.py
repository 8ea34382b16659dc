"""Command-line front end.

Exit status: 0 success / holds, 1 fails (witness printed), 2 inconclusive,
3 usage, I/O or parse error. Exceeding the enumeration cap counts as
inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .code import DEFAULT_CAP, Z2Z4Code
from .codefile import format_code, read_code
from .constructions import (
    build_cstar,
    build_D,
    build_perfect,
    extend,
    hamming_cyclic,
    simplex_cyclic,
)
from .errors import CodeFileError, EnumerationCapError, ParameterError
from .verification import (
    DEFAULT_BUDGET,
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    AuditReport,
    _Timer,
    audit_theorem_3_11,
    cyclic_witness,
    exists_cyclic_arrangement,
    gray_linearity_witness,
    perfect_witness,
    uniqueness_search,
    verify_lemma_3_7,
    verify_prop_3_1,
    verify_structure_D,
)

FAMILIES = ("simplex", "hamming", "perfect", "cstar", "dual-perfect", "extended")
CHECKS = ("perfect", "cyclic", "cyclic-any", "gray-linear")
CLAIMS = ("prop_3_1", "lemma_3_7", "structure_d", "thm_3_11")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(3)


def build_family(family: str, r: int | None, t: int | None, cap: int) -> Z2Z4Code:
    if family == "cstar":
        return build_cstar(cap=cap)
    if r is None:
        raise UsageError(f"family {family!r} needs --r")
    if family == "simplex":
        return simplex_cyclic(r, cap=cap)
    if family == "hamming":
        return hamming_cyclic(r, cap=cap)
    if family == "dual-perfect":
        return build_D(r, cap=cap)
    if t is None:
        raise UsageError(f"family {family!r} needs --t")
    code = build_perfect(r, t, cap=cap)
    return extend(code) if family == "extended" else code


def _canonical(code: Z2Z4Code) -> Z2Z4Code:
    return Z2Z4Code(code.alpha, code.beta, code.reduced.rows, cap=code.cap, name=code.name)


def _emit_code(code: Z2Z4Code, args, comment: str) -> None:
    canon = _canonical(code)
    text = format_code(canon, comment)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    if args.json:
        print(json.dumps({"type": code.type.as_tuple(), "generators": [str(g) for g in canon.generators]}))
    elif not args.out:
        sys.stdout.write(text)


def _print_report(rep: AuditReport, as_json: bool) -> None:
    if as_json:
        print(json.dumps(rep.to_json()))
        return
    params = " ".join(f"{k}={v}" for k, v in rep.params.items())
    print(f"{rep.claim} [{params}]: {rep.verdict}" + (f" ({rep.note})" if rep.note else ""))
    for k, v in rep.counters.items():
        print(f"  {k}: {v}")
    if rep.witness is not None:
        print(f"  witness: {json.dumps(rep.witness)}")


def _exit_code(rep: AuditReport) -> int:
    if rep.verdict == FAILS:
        return 1
    if rep.verdict == INCONCLUSIVE:
        return 2
    return 0


def verify(code: Z2Z4Code, check: str, budget: int = DEFAULT_BUDGET, workers: int = 1) -> AuditReport:
    params = {"alpha": code.alpha, "beta": code.beta}
    counters = {"codewords": code.size}
    with _Timer() as tm:
        if check == "perfect":
            wit = perfect_witness(code, "column")
            if wit is None and code.shape.n_bits <= 24:
                wit = perfect_witness(code, "sphere")
            verdict = HOLDS if wit is None else FAILS
            note = ""
        elif check == "cyclic":
            g = cyclic_witness(code)
            wit = None if g is None else str(g)
            verdict = HOLDS if g is None else FAILS
            note = ""
        elif check == "cyclic-any":
            res = exists_cyclic_arrangement(code, budget=budget, workers=workers)
            counters.update(examined=res.examined, total=res.total)
            wit = res.arrangement.to_json() if res.arrangement else None
            verdict = {"found": "arrangement", "none": "no arrangement", "inconclusive": INCONCLUSIVE}[res.status]
            note = ""
        elif check == "gray-linear":
            pair = gray_linearity_witness(code)
            wit = None if pair is None else [str(pair[0]), str(pair[1])]
            verdict = HOLDS if pair is None else FAILS
            note = "Gray image is linear" if pair is None else "Gray image is nonlinear"
        else:
            raise UsageError(f"unknown check {check!r}")
    return AuditReport(check, params, verdict, witness=wit, counters=counters, elapsed_ms=tm.ms, note=note)


def audit(claim: str, r: int | None, t: int | None) -> AuditReport:
    if r is None:
        raise UsageError("audit needs --r")
    if claim == "prop_3_1":
        if t is None:
            raise UsageError("prop_3_1 needs --t")
        return verify_prop_3_1(r, t)
    if claim == "lemma_3_7":
        return verify_lemma_3_7(r)
    if claim == "structure_d":
        return verify_structure_D(r)
    if claim == "thm_3_11":
        return audit_theorem_3_11(r)
    raise UsageError(f"unknown claim {claim!r}")


def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap (codewords)")

    p = _Parser(prog="z2z4", description="Construct and verify Z2Z4-additive codes.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    b = sub.add_parser("build", parents=[common], help="emit a code file for a named family")
    b.add_argument("--family", choices=FAMILIES, required=True)
    b.add_argument("--r", type=int)
    b.add_argument("--t", type=int)
    b.add_argument("--out")

    ty = sub.add_parser("type", parents=[common], help="print (alpha, beta; gamma, delta; kappa)")
    ty.add_argument("--in", dest="inp", required=True)

    d = sub.add_parser("dual", parents=[common], help="write the dual code")
    d.add_argument("--in", dest="inp", required=True)
    d.add_argument("--out")

    v = sub.add_parser("verify", parents=[common], help="run a decision procedure on a code file")
    v.add_argument("--check", choices=CHECKS, required=True)
    v.add_argument("--in", dest="inp", required=True)
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.add_argument("--workers", type=int, default=1)

    a = sub.add_parser("audit", parents=[common], help="instance-level audit of a claim")
    a.add_argument("--claim", choices=CLAIMS, required=True)
    a.add_argument("--r", type=int)
    a.add_argument("--t", type=int)

    u = sub.add_parser("search-unique", parents=[common], help="exhaustive search at alpha=3, beta=6")
    u.add_argument("--workers", type=int, default=1)

    s = sub.add_parser("suite", parents=[common], help="run every acceptance criterion")
    s.add_argument("--workers", type=int, default=2)
    return p


def run(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.verb == "build":
            code = build_family(args.family, args.r, args.t, args.cap)
            params = ", ".join(f"{k}={getattr(args, k)}" for k in ("r", "t") if getattr(args, k) is not None)
            _emit_code(code, args, f"{args.family} {params}".strip() + f"\ntype {code.type}")
            return 0
        if args.verb == "type":
            code = read_code(args.inp, cap=args.cap)
            t = code.type
            if args.json:
                print(json.dumps(dict(zip(("alpha", "beta", "gamma", "delta", "kappa"), t.as_tuple()))))
            else:
                print(t)
            return 0
        if args.verb == "dual":
            code = read_code(args.inp, cap=args.cap)
            dual = code.dual()
            _emit_code(dual, args, f"dual of {args.inp}\ntype {dual.type}")
            return 0
        if args.verb == "verify":
            code = read_code(args.inp, cap=args.cap)
            rep = verify(code, args.check, args.budget, args.workers)
        elif args.verb == "audit":
            rep = audit(args.claim, args.r, args.t)
        elif args.verb == "search-unique":
            rep = uniqueness_search(workers=args.workers)
        elif args.verb == "suite":
            results = []
            for fn in acceptance.CRITERIA:
                res = fn(workers=args.workers) if fn is acceptance.criterion_9 else fn()
                results.append(res)
                if args.json:
                    print(json.dumps({"criterion": res.number, "title": res.title, "passed": res.passed,
                                      "detail": res.detail, "seconds": round(res.seconds, 3)}))
                else:
                    print(res.line(), flush=True)
            return 0 if all(r.passed for r in results) else 1
        else:  # pragma: no cover - argparse restricts verbs
            raise UsageError(args.verb)
        _print_report(rep, args.json)
        return _exit_code(rep)
    except EnumerationCapError as exc:
        print(f"z2z4: inconclusive: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ParameterError) as exc:
        print(f"z2z4: error: {exc}", file=sys.stderr)
        return 3
    except (OSError, CodeFileError) as exc:
        print(f"z2z4: error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
