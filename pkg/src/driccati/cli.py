"""Command-line front end.

Subcommands::

    driccati normalize MATRIX --op OP [--trace]
    driccati criterion R --op OP
    driccati solve R --op OP [--degree-bound N]
    driccati verify R G --op OP
    driccati verdict MATRIX --op OP [--assume-no-algebraic-solutions] [--degree-bound N] [--trace]
    driccati preset-qairy

Every subcommand accepts ``--json``.  Exit status is 0 for any completed
analysis (an inconclusive verdict included), 2 for bad input or usage and 3
when the q-Airy preset disagrees with its golden values.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .arith import Place
from .criterion import (
    HypothesisReport,
    build_criterion,
    build_R,
    hypothesis_check,
    lemma_nullspace_check,
    LEMMAS,
    verify_construction,
)
from .errors import DegenerateInput, DriccatiError, ParseError
from .extension import render_y
from .linop import LinearDiffOp
from .normal_form import NormalizationResult, normalize
from .operators import DiffOp, parse_op
from .parser import parse_elem, parse_matrix, render
from .solver import SolveOutcome, replay_certificate, solve

NO_SOLUTION = "NoDiffAlgebraicSolution"
CONSTRUCTED = "DiffRiccatiConstructed"
INCONCLUSIVE = "Inconclusive"

DEFAULT_WINDOW = 3

QAIRY_MATRIX = "[[-q*t,1],[1,0]]"
QAIRY_GOLDEN = {
    "e": "-q^2*t",
    "r": "1/(q^3*t^2)",
    "Q": "[[-q*t,1],[-q*t,0]]",
    "witness": ("infinity", 2),
    "Dr": "-2/(q^3*t^3)",
    "coeffs": ("-1/(q^3*t^2)", "-q - 1/(q^4*t^2)", "q^2 + 1/(q^3*t^2)", "1/(q^4*t^2)"),
    "rhs": "2/t",
    "certificate": ("indicial_infinity", 1, "-2"),
    "verdict": NO_SOLUTION,
}

CAVEAT_UNCHECKED = ("the hypothesis that no iterate of the Riccati equation has a solution "
                    "algebraic over F is not verified by this tool; pass "
                    "--assume-no-algebraic-solutions to assert it")
CAVEAT_CONDITIONAL = ("conditional on the asserted absence of algebraic solutions "
                      "for every iterate of the Riccati equation")
CAVEAT_DR_ZERO = ("Dr = 0: transcendence criterion hypotheses not met; "
                  "differential Riccati construction shown")


# ---------------------------------------------------------------------------
# serialization


def _place_name(P: Place | None) -> str | None:
    return None if P is None else str(P)


def ser_normalization(res: NormalizationResult | None, trace: bool, reason: str | None = None) -> dict:
    if res is None:
        return {"outcome": "degenerate", "reason": reason}
    out = {"outcome": res.outcome, "r": render(res.r), "Q": render(res.Q)}
    if res.outcome == "tietze":
        out["e"] = render(res.e)
    else:
        out["B"] = render(res.B)
    out["forms"] = [s.form.value for s in res.trace]
    if trace:
        out["trace"] = [{"form": s.form.value, "P": render(s.P), "result": render(s.result)}
                        for s in res.trace]
    return out


def ser_hypotheses(rep: HypothesisReport) -> dict:
    return {
        "r_nonzero": rep.r_nonzero,
        "Dr_nonzero": rep.Dr_nonzero,
        "Dr": None if rep.Dr is None else render(rep.Dr),
        "place_witness": _place_name(rep.place_witness),
        "witness_valuation": rep.witness_order,
        "algebraic_solution_hypothesis": rep.algebraic_solution_hypothesis,
        "certified": rep.certified,
        "passed": rep.passed,
        "notes": list(rep.notes),
    }


def ser_operator(L: LinearDiffOp) -> dict:
    return {"op": L.op.spec(), "coeffs": [render(c) for c in L.coeffs], "rhs": render(L.rhs)}


def ser_outcome(L: LinearDiffOp, out: SolveOutcome) -> dict:
    data = {
        "status": out.status,
        "complete": out.complete,
        "g": None if out.g is None else render(out.g),
        "nullspace": [render(b) for b in out.nullspace_basis],
        "window": None if out.window is None else list(out.window),
        "denominator": None if out.denominator is None else render(out.denominator),
        "certificate": None,
    }
    cert = out.certificate
    if cert is not None:
        data["certificate"] = {
            "kind": cert.kind,
            "order": cert.order,
            "residual": None if cert.residual is None else render(cert.residual),
            "rank": cert.rank,
            "augmented_rank": cert.augmented_rank,
            "replayed": replay_certificate(L, cert),
        }
    return data


def dump_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=True)


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class VerdictReport:
    input: dict
    normalization: dict
    verdict: str
    conditional: bool = False
    R: str | None = None
    reason: str | None = None
    hypotheses: dict | None = None
    criterion: dict | None = None
    solve: dict | None = None
    construction: dict | None = None
    lemma_checks: dict | None = None
    caveats: list = field(default_factory=list)

    def __post_init__(self):
        self.check()

    def check(self):
        """Refuse to exist in a state that contradicts the verdict rules."""
        if self.verdict == NO_SOLUTION:
            if not (self.hypotheses and self.hypotheses["passed"]):
                raise AssertionError("nonexistence verdict without fully passed hypotheses")
            if not (self.solve and self.solve["status"] == "no_solution" and self.solve["complete"]):
                raise AssertionError("nonexistence verdict without a complete no-solution outcome")
            if not self.conditional:
                raise AssertionError("nonexistence verdicts are always conditional")
        elif self.verdict == CONSTRUCTED:
            if not (self.construction and self.construction["commutation_defect"] == "0"
                    and self.construction["criterion_residual"] == "0"):
                raise AssertionError("construction verdict without a zero commutation defect")
            if self.R is None:
                raise AssertionError("construction verdict without R")
        elif self.verdict == INCONCLUSIVE:
            if not self.reason:
                raise AssertionError("inconclusive verdict without a reason")
        else:
            raise AssertionError(f"unknown verdict {self.verdict!r}")

    @property
    def label(self) -> str:
        return f"{NO_SOLUTION}(conditional)" if self.verdict == NO_SOLUTION else self.verdict

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "normalization": self.normalization,
            "hypotheses": self.hypotheses,
            "criterion": self.criterion,
            "solve": self.solve,
            "construction": self.construction,
            "lemma_checks": self.lemma_checks,
            "verdict": {"kind": self.verdict, "label": self.label, "conditional": self.conditional,
                        "R": self.R, "reason": self.reason},
            "caveats": list(self.caveats),
        }


def _solve_criterion(L: LinearDiffOp, degree_bound: int | None) -> SolveOutcome:
    n = degree_bound if degree_bound is not None else DEFAULT_WINDOW
    return solve(L, (-n, n))


def run_verdict(matrix_src: str, op: DiffOp, assume: bool = False,
                degree_bound: int | None = None, trace: bool = False) -> VerdictReport:
    A = parse_matrix(matrix_src)
    echo = {"matrix": render(A), "op": op.spec(), "assume_no_algebraic_solutions": assume,
            "degree_bound": degree_bound}
    try:
        res = normalize(op, A)
    except DegenerateInput as exc:
        return VerdictReport(echo, ser_normalization(None, trace, str(exc)), INCONCLUSIVE,
                             reason=f"Degenerate: {exc}")
    norm = ser_normalization(res, trace)
    if res.outcome == "periodic":
        return VerdictReport(echo, norm, INCONCLUSIVE,
                             reason="Periodic: the reduced equation satisfies tau(B) B = r I "
                                    "and has no Tietze form")
    r = res.r
    hyp = hypothesis_check(op, r, assume)
    L = build_criterion(op, r)
    outcome = _solve_criterion(L, degree_bound)
    common = dict(hypotheses=ser_hypotheses(hyp), criterion=ser_operator(L),
                  solve=ser_outcome(L, outcome))
    caveats = []
    lemma_checks = None
    if degree_bound is not None and hyp.certified:
        lemma_checks = {name: lemma_nullspace_check(op, r, name, degree_bound).only_trivial
                        for name in LEMMAS}

    if outcome.solvable:
        g = outcome.g
        check = verify_construction(op, r, g)
        construction = {"g": render(g), "criterion_residual": render(check.criterion_residual),
                        "commutation_defect": render_y(check.commutation_defect)}
        if not hyp.Dr_nonzero:
            caveats.append(CAVEAT_DR_ZERO)
        elif not hyp.certified:
            caveats.append("no tau-stable place certifies the valuation hypothesis")
        if not outcome.complete:
            caveats.append("solution found by bounded search")
        if check.criterion_residual or check.commutation_defect:
            return VerdictReport(echo, norm, INCONCLUSIVE, construction=construction,
                                 lemma_checks=lemma_checks, caveats=caveats,
                                 reason="constructed R failed verification", **common)
        return VerdictReport(echo, norm, CONSTRUCTED, R=render_y(build_R(op, r, g)),
                             construction=construction, lemma_checks=lemma_checks,
                             caveats=caveats, **common)

    reasons = []
    if not outcome.complete:
        reasons.append(f"bounded search over t^k, |k| <= {outcome.window[1]}, found no rational "
                       "solution of the criterion; this does not prove there is none")
    if not hyp.Dr_nonzero:
        reasons.append("Dr = 0")
    if hyp.place_witness is None:
        reasons.append("no tau-stable place where r vanishes")
    if not assume:
        reasons.append("no-algebraic-solutions hypothesis unchecked")
        caveats.append(CAVEAT_UNCHECKED)
    if reasons:
        return VerdictReport(echo, norm, INCONCLUSIVE, reason="; ".join(reasons),
                             lemma_checks=lemma_checks, caveats=caveats, **common)
    caveats.append(CAVEAT_CONDITIONAL)
    return VerdictReport(echo, norm, NO_SOLUTION, conditional=True, lemma_checks=lemma_checks,
                         caveats=caveats, **common)


def check_qairy(report: VerdictReport) -> list[str]:
    """Compare a q-Airy report with the embedded golden values; return mismatches."""
    gold = QAIRY_GOLDEN
    bad = []

    def expect(name, got, want):
        if got != want:
            bad.append(f"{name}: got {got!r}, expected {want!r}")

    def same(name, got, want, parse=parse_elem):
        # compare as field elements, not as strings
        try:
            ok = got is not None and parse(got) == parse(want)
        except ParseError:
            ok = False
        if not ok:
            bad.append(f"{name}: got {got!r}, expected {want!r}")

    norm = report.normalization
    same("e", norm.get("e"), gold["e"])
    same("r", norm.get("r"), gold["r"])
    same("Q", norm.get("Q"), gold["Q"], parse_matrix)
    hyp = report.hypotheses or {}
    expect("witness", (hyp.get("place_witness"), hyp.get("witness_valuation")), gold["witness"])
    same("Dr", hyp.get("Dr"), gold["Dr"])
    crit = report.criterion or {}
    coeffs = crit.get("coeffs", [])
    expect("criterion order", len(coeffs), len(gold["coeffs"]))
    for i, (got, want) in enumerate(zip(coeffs, gold["coeffs"])):
        same(f"criterion coefficient {i}", got, want)
    same("criterion rhs", crit.get("rhs"), gold["rhs"])
    cert = (report.solve or {}).get("certificate") or {}
    kind, order, residual = gold["certificate"]
    expect("certificate", (cert.get("kind"), cert.get("order")), (kind, order))
    same("certificate residual", cert.get("residual"), residual)
    expect("certificate replay", cert.get("replayed"), True)
    expect("verdict", report.verdict, gold["verdict"])
    return bad


# ---------------------------------------------------------------------------
# human-readable output


def _lines(data, indent=0):
    pad = "  " * indent
    for key in sorted(data):
        value = data[key]
        if isinstance(value, dict):
            yield f"{pad}{key}:"
            yield from _lines(value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            yield f"{pad}{key}:"
            for item in value:
                yield f"{pad}  -"
                yield from _lines(item, indent + 2)
        elif isinstance(value, list):
            yield f"{pad}{key}: " + (", ".join(str(v) for v in value) if value else "(none)")
        else:
            yield f"{pad}{key}: {'-' if value is None else value}"


def emit(data: dict, as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(dump_json(data) + "\n")
    else:
        out.write("\n".join(_lines(data)) + "\n")


def _emit_verdict(report: VerdictReport, as_json: bool, out):
    if as_json:
        emit(report.to_dict(), True, out)
        return
    data = report.to_dict()
    verdict = data.pop("verdict")
    caveats = data.pop("caveats")
    emit({k: v for k, v in data.items() if v is not None}, False, out)
    out.write(f"verdict: {verdict['label']}\n")
    if verdict["R"] is not None:
        out.write(f"  D(f) + R(f) = 0 with R(Y) = {verdict['R']}\n")
    if verdict["reason"]:
        out.write(f"  reason: {verdict['reason']}\n")
    for c in caveats:
        out.write(f"caveat: {c}\n")


# ---------------------------------------------------------------------------
# commands


def cmd_normalize(args, out) -> int:
    op = parse_op(args.op)
    A = parse_matrix(args.matrix)
    try:
        data = ser_normalization(normalize(op, A), args.trace)
    except DegenerateInput as exc:
        data = ser_normalization(None, args.trace, str(exc))
    emit({"input": {"matrix": render(A), "op": op.spec()}, "normalization": data}, args.json, out)
    return 0


def cmd_criterion(args, out) -> int:
    op = parse_op(args.op)
    r = parse_elem(args.r)
    L = build_criterion(op, r)
    emit({"r": render(r), "criterion": ser_operator(L),
          "hypotheses": ser_hypotheses(hypothesis_check(op, r))}, args.json, out)
    return 0


def cmd_solve(args, out) -> int:
    op = parse_op(args.op)
    r = parse_elem(args.r)
    L = build_criterion(op, r)
    outcome = _solve_criterion(L, args.degree_bound)
    emit({"r": render(r), "criterion": ser_operator(L), "solve": ser_outcome(L, outcome)},
         args.json, out)
    return 0


def cmd_verify(args, out) -> int:
    op = parse_op(args.op)
    r, g = parse_elem(args.r), parse_elem(args.g)
    check = verify_construction(op, r, g)
    emit({"r": render(r), "g": render(g), "R": render_y(build_R(op, r, g)),
          "criterion_residual": render(check.criterion_residual),
          "commutation_defect": render_y(check.commutation_defect),
          "consistent": check.consistent}, args.json, out)
    return 0


def cmd_verdict(args, out) -> int:
    report = run_verdict(args.matrix, parse_op(args.op), args.assume_no_algebraic_solutions,
                         args.degree_bound, args.trace)
    _emit_verdict(report, args.json, out)
    return 0


def cmd_preset_qairy(args, out) -> int:
    report = run_verdict(QAIRY_MATRIX, DiffOp.qdilation(), True, args.degree_bound, args.trace)
    _emit_verdict(report, args.json, out)
    bad = check_qairy(report)
    for line in bad:
        print(f"golden mismatch: {line}", file=sys.stderr)
    return 3 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="driccati",
                                description="Differential transcendence tests for difference Riccati equations.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *positional):
        sp = sub.add_parser(name, help=help_text)
        for arg, h in positional:
            sp.add_argument(arg, help=h)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    def with_op(sp):
        sp.add_argument("--op", default="qdilation", help="shift:c, qdilation or mahler:p (default qdilation)")
        return sp

    def with_bound(sp):
        sp.add_argument("--degree-bound", type=int, default=None,
                        help="degree bound for functional-equation checks and bounded solving")
        return sp

    matrix = ("matrix", "2x2 matrix such as [[-q*t,1],[1,0]]")
    r_arg = ("r", "the coefficient r of tau(y) = 1 + r/y")
    sp = with_op(add("normalize", cmd_normalize, "reduce to Tietze normal form", matrix))
    sp.add_argument("--trace", action="store_true", help="show every reduction step")
    with_op(add("criterion", cmd_criterion, "build the third-order criterion for r", r_arg))
    with_bound(with_op(add("solve", cmd_solve, "solve the criterion for r in Q(q)(t)", r_arg)))
    with_op(add("verify", cmd_verify, "check the differential Riccati construction for (r, g)",
                r_arg, ("g", "candidate rational solution of the criterion")))
    sp = with_bound(with_op(add("verdict", cmd_verdict, "full pipeline", matrix)))
    sp.add_argument("--assume-no-algebraic-solutions", action="store_true",
                    help="assert that no iterate of the Riccati equation has an algebraic solution")
    sp.add_argument("--trace", action="store_true", help="show every reduction step")
    sp = with_bound(add("preset-qairy", cmd_preset_qairy, "run the q-Airy example and check golden values"))
    sp.add_argument("--trace", action="store_true", help="show every reduction step")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "degree_bound", None) is not None and args.degree_bound < 1:
        print("error: --degree-bound must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except (ParseError, DriccatiError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
