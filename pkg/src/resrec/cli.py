"""Command line front end: ``resrec {discover,resistance,verify,oracle}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .binet import DEFAULT_PRECISION, PrecisionError
from .exactnum import poly_divides, poly_str, poly_to_json
from .expander import ProcedureCapError, check_identity, run_procedure, soundness_range
from .graphfam import FamilySpec, oracle_sequence
from .recsolve import (
    DegenerateSystemError,
    build_recurrence,
    eliminate,
    failing_windows,
    minimal_polynomial,
    y_to_X,
)
from .resistance import ResistanceModel, resistance_exact, verify_conjecture
from .stencil import StencilClosureError, seed_family

COMMANDS = ("discover", "resistance", "verify", "oracle")


@dataclass
class RunConfig:
    command: str
    family: FamilySpec = field(default_factory=FamilySpec)
    rep_size: int = 10
    max_families: int = 200
    precision: int = DEFAULT_PRECISION
    n_lo: int | None = None
    n_hi: int | None = None
    method: str = "all"
    fmt: str = "json"
    out: str | None = None


def _parser() -> argparse.ArgumentParser:
    env_prec = os.environ.get("RESREC_PRECISION")
    p = argparse.ArgumentParser(
        prog="resrec",
        description="Determinant recursions and resistance distance for straight linear k-trees.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--k", type=int, default=3, help="bandwidth (1 = path, 3 = linear 3-tree)")
    p.add_argument("--part", choices=("numerator", "denominator", "custom"), default="denominator")
    p.add_argument("--delete-rows", type=int, nargs="*", default=[],
                   help="custom part: rows to delete (1-based; 0 = last, -1 = second to last)")
    p.add_argument("--delete-cols", type=int, nargs="*", default=[])
    p.add_argument("--rep-size", type=int, default=10)
    p.add_argument("--max-families", type=int, default=200)
    p.add_argument("--precision", type=int, default=int(env_prec) if env_prec else DEFAULT_PRECISION)
    p.add_argument("--n-lo", type=int)
    p.add_argument("--n-hi", type=int)
    p.add_argument("--n", type=int, help="shorthand for --n-lo N --n-hi N")
    p.add_argument("--method", choices=("exact", "recurrence", "binet", "all"), default="all")
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out")
    return p


def parse_config(argv=None) -> RunConfig:
    parser = _parser()
    a = parser.parse_args(argv)
    if a.n is not None:
        a.n_lo = a.n_hi = a.n
    if a.precision < 20:
        parser.error("--precision must be at least 20 digits")
    if a.n_lo is not None and a.n_hi is not None and a.n_hi < a.n_lo:
        parser.error("empty range: --n-hi is below --n-lo")
    if a.command == "resistance" and (a.n_lo is None or a.n_hi is None):
        parser.error("resistance needs --n or both --n-lo and --n-hi")
    try:
        fam = FamilySpec(a.k, a.part, tuple(a.delete_rows), tuple(a.delete_cols))
    except ValueError as exc:
        parser.error(str(exc))
    return RunConfig(a.command, fam, a.rep_size, a.max_families, a.precision,
                     a.n_lo, a.n_hi, a.method, a.fmt, a.out)


# ---------------------------------------------------------------------------
# commands; each returns (report_dict, passed)


def cmd_discover(cfg: RunConfig):
    spec = cfg.family
    seed = seed_family(spec, cfg.rep_size)
    system = run_procedure(seed, cfg.max_families, cfg.rep_size)
    p_y = eliminate(system)
    p_x = y_to_X(p_y)
    n_hi = cfg.n_hi or max(45, 2 * len(p_x) + 10)
    seq = oracle_sequence(spec, spec.min_index, n_hi)
    fam_min = seed.min_size
    char = minimal_polynomial(seq.window(max(fam_min, cfg.n_lo or fam_min), n_hi))
    rec = build_recurrence(char, seq)
    sound = all(
        check_identity(system, eq, n) for eq in system.equations for n in soundness_range(system, eq, 3)
    )
    divides = poly_divides(char, p_x)
    report = {
        "command": "discover",
        "family": spec.to_json(),
        "rep_size": cfg.rep_size,
        "families": len(system.families),
        "equations": system.render(),
        "system": system.to_json(),
        "annihilator_y": poly_to_json(p_y),
        "annihilator_y_text": poly_str(p_y, "y"),
        "annihilator_X": poly_to_json(p_x),
        "annihilator_X_text": poly_str(p_x, "X"),
        "minimal_polynomial": poly_to_json(char),
        "minimal_polynomial_text": poly_str(char, "X"),
        "recurrence": rec.to_json(verified_window=[rec.cutoff, n_hi]),
        "cutoff": rec.cutoff,
        "failing_windows": failing_windows(char, seq),
        "family_min_size": fam_min,
        "gates": {"minimal_divides_annihilator": divides, "identities_sound": sound},
        "provenance": {"annihilator": "elimination", "minimal_polynomial": "oracle"},
    }
    return report, divides and sound


def cmd_resistance(cfg: RunConfig):
    methods = ("exact", "recurrence", "binet") if cfg.method == "all" else (cfg.method,)
    model = None
    if cfg.method != "exact":
        model = ResistanceModel(cfg.family.k, cfg.precision, cfg.rep_size, cfg.max_families)
    rows, ok = [], True
    t0 = time.perf_counter()
    tol = mpmath.mpf(10) ** (20 - cfg.precision)
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        try:
            if model is None:
                row = {"n": n, "methods": ["exact"], "R_exact": str(resistance_exact(cfg.family.k, n))}
            else:
                res = model.result(n, methods)
                row = res.to_row()
                if res.exact is not None and res.recurrence is not None and res.exact != res.recurrence:
                    row["agreement"] = False
                    ok = False
                if res.rel_gap is not None and n >= 3 and res.rel_gap >= tol:
                    row["agreement"] = False
                    ok = False
        except PrecisionError as exc:
            row = {"n": n, "error": str(exc)}
            ok = False
        rows.append(row)
    report = {
        "command": "resistance",
        "family": {"kind": cfg.family.kind, "k": cfg.family.k},
        "precision": cfg.precision,
        "methods": list(methods),
        "rows": rows,
        "timestamp": {"wall_time_s": round(time.perf_counter() - t0, 3)},
    }
    return report, ok


def cmd_verify(cfg: RunConfig):
    n_lo = cfg.n_lo if cfg.n_lo is not None else 10
    n_hi = cfg.n_hi if cfg.n_hi is not None else 80
    model = ResistanceModel(cfg.family.k, cfg.precision, cfg.rep_size, cfg.max_families)
    rep = verify_conjecture(n_lo, n_hi, cfg.precision, cfg.family.k, model)
    final_ok = rep.final_error < Fraction(1, 10**6)
    closed_ok = rep.closed_form_gap < mpmath.mpf(10) ** (30 - cfg.precision)
    decay_ok = rep.tail_decay is None or rep.tail_decay <= 0.6
    if rep.tail_decay is None:
        decay_ok = all(r["error"] == 0 for r in rep.rows[-10:])
    passed = bool(final_ok and closed_ok and decay_ok)
    report = {"command": "verify", **rep.to_json(),
              "gates": {"final_error": bool(final_ok), "closed_form": bool(closed_ok),
                        "decay": bool(decay_ok)}}
    report["summary"] = (
        f"{'PASS' if passed else 'FAIL'}: |Delta({n_hi}) - {report['limit']}| = "
        f"{mpmath.nstr(mpmath.mpf(rep.final_error.numerator) / rep.final_error.denominator, 5)}, "
        f"closed-form gap = {mpmath.nstr(rep.closed_form_gap, 5)}, "
        f"tail decay = {rep.tail_decay if rep.tail_decay is None else round(rep.tail_decay, 4)}"
    )
    return report, passed, rep


def cmd_oracle(cfg: RunConfig):
    spec = cfg.family
    lo = cfg.n_lo if cfg.n_lo is not None else spec.min_index
    hi = cfg.n_hi if cfg.n_hi is not None else lo + 20
    seq = oracle_sequence(spec, lo, hi)
    return {"command": "oracle", "family": spec.to_json(), "sequence": seq.to_json()}, True


# ---------------------------------------------------------------------------
# rendering


def _text(report: dict) -> str:
    cmd = report["command"]
    lines = []
    if cmd == "discover":
        lines.append(f"family: {report['family']}")
        lines.append(f"families: {report['families']}")
        lines.extend(report["equations"])
        lines.append(f"annihilator: {report['annihilator_y_text']}  (X form: {report['annihilator_X_text']})")
        lines.append(f"minimal polynomial: {report['minimal_polynomial_text']}")
        lines.append(f"cutoff: {report['cutoff']}  (stencil min size {report['family_min_size']})")
    elif cmd == "resistance":
        for row in report["rows"]:
            lines.append("  ".join(f"{k}={v}" for k, v in row.items() if k != "methods"))
    elif cmd == "verify":
        lines.append("n  R_exact  Delta  error  ratio")
        for row in report["rows"]:
            lines.append(f"{row['n']}  {row['R_exact']}  {row['Delta']}  {row['error']}  {row['ratio']}")
        lines.append(report["summary"])
    else:
        seq = report["sequence"]
        for i, t in enumerate(seq["terms"]):
            lines.append(f"{seq['start'] + i}  {t}")
    return "\n".join(lines) + "\n"


def _csv(report: dict, extra=None) -> str:
    if report["command"] == "verify" and extra is not None:
        return extra.to_csv()
    if report["command"] == "resistance":
        cols = ["n", "R_exact", "R_recurrence", "R_binet", "binet_rel_gap"]
        out = [",".join(cols)]
        for row in report["rows"]:
            out.append(",".join(str(row.get(c, "")) for c in cols))
        return "\n".join(out) + "\n"
    if report["command"] == "oracle":
        seq = report["sequence"]
        return "n,det\n" + "".join(f"{seq['start'] + i},{t}\n" for i, t in enumerate(seq["terms"]))
    return json.dumps(report, indent=2) + "\n"


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    cfg = parse_config(argv)
    extra = None
    try:
        if cfg.command == "discover":
            report, ok = cmd_discover(cfg)
        elif cfg.command == "resistance":
            report, ok = cmd_resistance(cfg)
        elif cfg.command == "verify":
            report, ok, extra = cmd_verify(cfg)
        else:
            report, ok = cmd_oracle(cfg)
    except (ProcedureCapError, DegenerateSystemError, StencilClosureError, PrecisionError,
            ArithmeticError, ValueError) as exc:
        print(f"resrec: error: {exc}", file=sys.stderr)
        return 1
    if cfg.fmt == "json":
        body = json.dumps(report, indent=2) + "\n"
    elif cfg.fmt == "csv":
        body = _csv(report, extra)
    else:
        body = _text(report)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(body)
        if cfg.command == "verify":
            print(report["summary"], file=stdout)
    else:
        stdout.write(body)
        if cfg.command == "verify" and cfg.fmt != "text":
            print(report["summary"], file=sys.stderr)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
