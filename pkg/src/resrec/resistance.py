"""End-to-end resistance of straight linear k-trees, computed three ways.

``R(n) = Det(L^n({1,n}|{1,n})) / Det(L^n(1|1))``; with the minor-size indexing
of :mod:`resrec.graphfam` this is ``N[n-2] / D[n-1]``.

* exact: two fraction-free determinants per ``n``;
* recurrence: numerator and denominator advanced by their integer
  recurrences, no matrices at all;
* binet: ratio of two closed forms evaluated in high precision.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .binet import BinetForm, classify_roots, default_precision, eval_binet, fit_binet
from .exactnum import det_fraction_free, poly_divides, poly_to_json, rat_to_str
from .expander import run_procedure
from .graphfam import FamilySpec, build_laplacian, delete, oracle_sequence
from .recsolve import (
    LinearRecurrence,
    SisterSequence,
    build_recurrence,
    eliminate,
    extend_backward,
    minimal_polynomial,
    y_to_X,
)
from .stencil import seed_family

LIMIT_3TREE = Fraction(1, 14)


def resistance_exact(k: int, n: int, denominator_vertex: int = 1) -> Fraction:
    """Bapat's determinant ratio.  ``denominator_vertex`` picks which single
    vertex is deleted in the denominator (any vertex gives the same value)."""
    if n < 2:
        raise ValueError("need at least 2 vertices")
    lap = build_laplacian(k, n)
    num = det_fraction_free(delete(lap, [1, n], [1, n]))
    den = det_fraction_free(delete(lap, [denominator_vertex], [denominator_vertex]))
    if den == 0:
        raise ZeroDivisionError("denominator determinant vanished")
    return Fraction(num, den)


@dataclass
class PartModel:
    """Recurrence, sister sequence and closed form for one determinant part."""

    spec: FamilySpec
    families: int
    annihilator_y: tuple
    recurrence: LinearRecurrence
    sister: SisterSequence
    binet: BinetForm | None = None
    family_min_size: int = 0

    def term(self, m: int) -> int:
        """Exact determinant at minor size ``m``, for ``m >= cutoff``."""
        if m < self.recurrence.cutoff:
            raise ValueError(f"index {m} is below the recurrence cutoff {self.recurrence.cutoff}")
        if m > self.sister.hi:
            self.sister.extend_forward(m)
        return self.sister[m]

    def to_json(self) -> dict:
        out = {
            "family": self.spec.to_json(),
            "families": self.families,
            "annihilator_y": poly_to_json(self.annihilator_y),
            "annihilator_X": poly_to_json(y_to_X(self.annihilator_y)),
            "family_min_size": self.family_min_size,
            "recurrence": self.recurrence.to_json(),
        }
        if self.binet is not None:
            out["binet"] = self.binet.to_json()
        return out


def build_part(
    spec: FamilySpec,
    n_hi: int = 45,
    precision: int | None = None,
    rep_size: int = 10,
    max_families: int = 200,
    backward: int = 4,
) -> PartModel:
    """Discover, verify and fit one part.

    The elimination annihilator bounds the order; the minimal polynomial of
    the oracle terms beyond the family's stencil size is the recurrence used,
    and it must divide the annihilator.
    """
    system = run_procedure(seed_family(spec, rep_size), max_families, rep_size)
    p_y = eliminate(system)
    p_x = y_to_X(p_y)
    order_bound = len(p_x) - 1
    seq = oracle_sequence(spec, spec.min_index, max(n_hi, 2 * order_bound + 12))
    fam_min = system.families[0].min_size
    char = minimal_polynomial(seq.window(fam_min, seq.stop - 1))
    if not poly_divides(char, p_x):
        raise ArithmeticError("minimal polynomial does not divide the elimination annihilator")
    rec = build_recurrence(char, seq)
    sister = extend_backward(seq, rec, backward + rec.cutoff - spec.min_index)
    part = PartModel(spec, len(system.families), p_y, rec, sister, family_min_size=fam_min)
    if precision is not None:
        d = rec.order
        lo = 0 if spec.part == "denominator" else 1
        part.binet = fit_binet(char, {i: sister[i] for i in range(lo, lo + d)}, precision)
    return part


@dataclass
class ResistanceResult:
    n: int
    exact: Fraction | None = None
    recurrence: Fraction | None = None
    binet: object = None
    methods: list = field(default_factory=list)
    rel_gap: object = None

    def to_row(self) -> dict:
        row = {"n": self.n, "methods": list(self.methods)}
        if self.exact is not None:
            row["R_exact"] = rat_to_str(self.exact)
        if self.recurrence is not None:
            row["R_recurrence"] = rat_to_str(self.recurrence)
        if self.binet is not None:
            row["R_binet"] = mpmath.nstr(self.binet, 30)
        if self.rel_gap is not None:
            row["binet_rel_gap"] = mpmath.nstr(self.rel_gap, 5)
        return row


class ResistanceModel:
    """Numerator and denominator models for the k-tree, built once."""

    def __init__(self, k: int = 3, precision: int | None = None, rep_size: int = 10,
                 max_families: int = 200, n_hi: int = 45):
        self.k = k
        self.precision = precision or default_precision()
        self.num = build_part(FamilySpec(k, "numerator"), n_hi, self.precision, rep_size, max_families)
        self.den = build_part(FamilySpec(k, "denominator"), n_hi, self.precision, rep_size, max_families)

    # -- the three methods -------------------------------------------------

    def exact(self, n: int) -> Fraction:
        return resistance_exact(self.k, n)

    def recurrence(self, n: int) -> Fraction:
        if n - 2 < self.num.recurrence.cutoff or n - 1 < self.den.recurrence.cutoff:
            return resistance_exact(self.k, n)
        return Fraction(self.num.term(n - 2), self.den.term(n - 1))

    def binet(self, n: int):
        with mp.workdps(self.precision + 10):
            return eval_binet(self.num.binet, n - 2) / eval_binet(self.den.binet, n - 1)

    # -- asymptotics ------------------------------------------------------------

    def dominant(self):
        """``(r, d, n0, n1)``: dominant root and its coefficients in both forms."""
        bd, bn = self.den.binet, self.num.binet
        i = bd.dominant_index()
        r = bd.roots[i][0]
        j = bn.root_index(r)
        cn = bn.coeffs[j]
        return r, bd.coeffs[i][0], cn[0], (cn[1] if len(cn) > 1 else mpf(0))

    def asymptotic_slope(self):
        r, d, _, n1 = self.dominant()
        with mp.workdps(self.precision + 10):
            return (n1 / (d * r)).real

    def asymptotic(self, n: int):
        r, d, n0, n1 = self.dominant()
        with mp.workdps(self.precision + 10):
            return ((n0 + n1 * (n - 2)) * r ** (n - 2) / (d * r ** (n - 1))).real

    def subdominant_ratio(self):
        """Largest ``|r| / |r_dominant|`` over numerator roots outside the unit
        circle, excluding the dominant root; sets the geometric error rate."""
        prof = classify_roots(self.num.binet)
        mags = prof.magnitudes
        top = mags[prof.dominant]
        rest = [m for m, on in zip(mags, prof.on_unit_circle) if m < top - prof.tol and m > 1 and not on]
        return max(rest) / top if rest else mpf(1) / top

    def result(self, n: int, methods=("exact", "recurrence", "binet")) -> ResistanceResult:
        res = ResistanceResult(n, methods=list(methods))
        if "exact" in methods:
            res.exact = self.exact(n)
        if "recurrence" in methods:
            res.recurrence = self.recurrence(n)
        if "binet" in methods:
            res.binet = self.binet(n)
            ref = res.exact if res.exact is not None else res.recurrence
            if ref is not None:
                with mp.workdps(self.precision + 10):
                    refv = mpf(ref.numerator) / ref.denominator
                    res.rel_gap = abs(res.binet - refv) / abs(refv)
        return res


# ---------------------------------------------------------------------------
# recurrence-only fast path (no Binet fit)


_FAST_CACHE: dict = {}


def _fast_parts(k: int):
    if k not in _FAST_CACHE:
        _FAST_CACHE[k] = (
            build_part(FamilySpec(k, "numerator")),
            build_part(FamilySpec(k, "denominator")),
        )
    return _FAST_CACHE[k]


def resistance_recurrence(n: int, k: int = 3) -> Fraction:
    num, den = _fast_parts(k)
    if n - 2 < num.recurrence.cutoff or n - 1 < den.recurrence.cutoff:
        return resistance_exact(k, n)
    return Fraction(num.term(n - 2), den.term(n - 1))


# ---------------------------------------------------------------------------
# convergence of successive differences


def block_decay(errors: list, width: int) -> list:
    """Per-step decay estimated from maxima of ``|e|`` over consecutive blocks.

    Consecutive ratios ``e(n+1)/e(n)`` swing wildly when the sub-dominant
    roots are a complex pair; block maxima follow the envelope instead.
    """
    blocks = [max(abs(e) for e in errors[i:i + width]) for i in range(0, len(errors) - width + 1, width)]
    out = []
    for a, b in zip(blocks, blocks[1:]):
        if a == 0 or b == 0:
            continue
        out.append(float((mpf(b.numerator) / b.denominator / (mpf(a.numerator) / a.denominator)) ** (mpf(1) / width)))
    return out


@dataclass
class ConvergenceReport:
    k: int
    limit: Fraction
    rows: list  # dicts: n, R, delta, error, ratio
    closed_form_slope: object = None
    closed_form_gap: object = None
    predicted_rate: object = None
    decay: list = field(default_factory=list)
    dominant_magnitude: object = None
    subdominant_magnitude: object = None

    @property
    def final_error(self) -> Fraction:
        return abs(self.rows[-1]["error"])

    @property
    def tail_decay(self) -> float | None:
        return max(self.decay[-2:]) if self.decay else None

    def to_json(self) -> dict:
        def f(x):
            return None if x is None else mpmath.nstr(x, 30)

        return {
            "k": self.k,
            "limit": rat_to_str(self.limit),
            "closed_form_slope": f(self.closed_form_slope),
            "closed_form_gap": f(self.closed_form_gap),
            "predicted_rate": f(self.predicted_rate),
            "dominant_magnitude": f(self.dominant_magnitude),
            "subdominant_magnitude": f(self.subdominant_magnitude),
            "block_decay": self.decay,
            "rows": [
                {
                    "n": r["n"],
                    "R_exact": rat_to_str(r["R"]),
                    "Delta": rat_to_str(r["delta"]),
                    "error": mpmath.nstr(mpf(r["error"].numerator) / r["error"].denominator, 12),
                    "ratio": None if r["ratio"] is None else mpmath.nstr(r["ratio"], 12),
                }
                for r in self.rows
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "R_exact", "Delta", "error", "ratio"])
        for row in self.to_json()["rows"]:
            w.writerow([row["n"], row["R_exact"], row["Delta"], row["error"], row["ratio"] or ""])
        return buf.getvalue()


def verify_conjecture(n_lo: int = 10, n_hi: int = 80, precision: int | None = None,
                      k: int = 3, model: ResistanceModel | None = None,
                      block: int = 10) -> ConvergenceReport:
    """Exact ``Delta(n) = R(n+1) - R(n)`` against the limiting slope."""
    if n_hi <= n_lo:
        raise ValueError("n_hi must exceed n_lo")
    model = model or ResistanceModel(k, precision)
    if k == 3:
        limit = LIMIT_3TREE
    else:
        with mp.workdps(model.precision):
            limit = Fraction(mpmath.nstr(model.asymptotic_slope(), 40)).limit_denominator(10**6)
    rs = {n: model.recurrence(n) for n in range(n_lo, n_hi + 2)}
    rows = []
    for n in range(n_lo, n_hi + 1):
        delta = rs[n + 1] - rs[n]
        rows.append({"n": n, "R": rs[n], "delta": delta, "error": delta - limit, "ratio": None})
    for a, b in zip(rows, rows[1:]):
        if a["error"] != 0:
            a["ratio"] = mpf(b["error"].numerator * a["error"].denominator) / (
                b["error"].denominator * a["error"].numerator
            )
    slope = model.asymptotic_slope()
    with mp.workdps(model.precision):
        gap = abs(slope - mpf(limit.numerator) / limit.denominator)
    prof_n = classify_roots(model.num.binet)
    report = ConvergenceReport(
        k,
        limit,
        rows,
        closed_form_slope=slope,
        closed_form_gap=gap,
        predicted_rate=model.subdominant_ratio(),
        decay=block_decay([r["error"] for r in rows], block),
        dominant_magnitude=prof_n.magnitudes[prof_n.dominant],
        subdominant_magnitude=prof_n.subdominant_magnitude,
    )
    return report


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t
