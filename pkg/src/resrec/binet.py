"""Binet closed forms for integer linear recurrences.

A sequence annihilated by ``prod (X - r_i)^{m_i}`` has the form
``s_n = sum_i q_i(n) r_i^n`` with ``deg q_i < m_i``.  Multiplicities come from
an exact square-free decomposition; the roots themselves are computed in
mpmath at a caller-chosen number of decimal digits.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpc, mpf

from .exactnum import poly_eval, squarefree_decomposition

DEFAULT_PRECISION = 50


class PrecisionError(ArithmeticError):
    pass


def default_precision() -> int:
    return int(os.environ.get("RESREC_PRECISION", DEFAULT_PRECISION))


@dataclass
class BinetForm:
    roots: list  # [(mpc, multiplicity), ...]
    coeffs: list  # per root: [c_0, c_1, ...] for c_0 + c_1 n + ...
    precision: int = DEFAULT_PRECISION

    @property
    def order(self) -> int:
        return sum(m for _, m in self.roots)

    def root_index(self, target, tol=1e-6) -> int:
        """Position of the root nearest ``target``."""
        with mp.workdps(self.precision):
            dists = [abs(r - target) for r, _ in self.roots]
        i = min(range(len(dists)), key=dists.__getitem__)
        if dists[i] > tol:
            raise LookupError(f"no root within {tol} of {target}")
        return i

    def dominant_index(self) -> int:
        with mp.workdps(self.precision):
            return max(range(len(self.roots)), key=lambda i: abs(self.roots[i][0]))

    def to_json(self) -> dict:
        digits = self.precision

        def c2s(z):
            z = mpc(z)
            return {"re": mpmath.nstr(z.real, digits), "im": mpmath.nstr(z.imag, digits)}

        with mp.workdps(self.precision):
            return {
                "precision": self.precision,
                "roots": [
                    {"value": c2s(r), "multiplicity": m, "coeff_poly": [c2s(c) for c in cs]}
                    for (r, m), cs in zip(self.roots, self.coeffs)
                ],
            }


@dataclass
class RootProfile:
    magnitudes: list
    on_unit_circle: list
    inside_disk: list
    dominant: int
    subdominant_magnitude: object = None
    tol: float = 1e-12
    notes: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# roots


def _simple_roots(f, precision: int) -> list:
    """Roots of a square-free integer polynomial (ascending coefficients)."""
    deg = len(f) - 1
    if deg == 1:
        return [mpc(mpf(-f[0]) / f[1])]
    desc = [int(c) for c in reversed(f)]
    with mp.workdps(precision + 20):
        try:
            approx = mpmath.polyroots(desc, maxsteps=200, extraprec=4 * precision)
        except mpmath.libmp.NoConvergence as exc:
            raise PrecisionError(f"root finding did not converge at {precision} digits") from exc
        df = [i * c for i, c in enumerate(f)][1:]
        polished = []
        for r in approx:
            r = mpc(r)
            for _ in range(60):
                step = poly_eval(f, r) / poly_eval(df, r)
                r -= step
                if abs(step) <= abs(r) * mpf(10) ** (-(precision + 15)):
                    break
            polished.append(r)
    return polished


def _enforce_conjugates(roots: list, precision: int) -> list:
    tol = mpf(10) ** (-(precision // 2))
    out = []
    used = [False] * len(roots)
    for i, r in enumerate(roots):
        if used[i]:
            continue
        used[i] = True
        if abs(r.imag) <= tol * max(1, abs(r)):
            out.append(mpc(r.real, 0))
            continue
        j = min(
            (j for j in range(len(roots)) if not used[j]),
            key=lambda j: abs(roots[j] - mpmath.conj(r)),
            default=None,
        )
        if j is None or abs(roots[j] - mpmath.conj(r)) > tol * max(1, abs(r)):
            raise PrecisionError("complex root without a conjugate partner")
        used[j] = True
        avg = (r + mpmath.conj(roots[j])) / 2
        if avg.imag < 0:
            avg = mpmath.conj(avg)
        out.extend([avg, mpmath.conj(avg)])
    return out


def _root_key(r):
    return (-float(abs(r)), -float(r.real), -float(r.imag))


def find_roots(p, precision: int | None = None) -> list:
    """``[(root, multiplicity), ...]`` for an integer polynomial in X."""
    precision = precision or default_precision()
    out = []
    with mp.workdps(precision + 10):
        for f, m in squarefree_decomposition(p):
            roots = _enforce_conjugates(_simple_roots(f, precision), precision)
            norm = mpf(max(abs(c) for c in f))
            bound = mpf(10) ** (1 - precision) * norm
            for r in roots:
                if abs(poly_eval(f, r)) >= bound * max(1, abs(r)) ** (len(f) - 1):
                    raise PrecisionError(f"root residual too large at {precision} digits")
                out.append((r, m))
    out.sort(key=lambda rm: _root_key(rm[0]))
    return out


# ---------------------------------------------------------------------------
# fitting and evaluation


def _basis(roots, n):
    row = []
    for r, m in roots:
        rn = r**n
        for t in range(m):
            row.append(mpf(n) ** t * rn)
    return row


def fit_binet(char_poly, anchors: dict, precision: int | None = None) -> BinetForm:
    """Solve the confluent Vandermonde system on ``order`` consecutive anchors.

    ``anchors`` maps index -> exact integer value; the first ``order``
    consecutive indices starting at the smallest key are used, the rest are
    checked as residuals.
    """
    precision = precision or default_precision()
    roots = find_roots(char_poly, precision)
    d = sum(m for _, m in roots)
    idx = sorted(anchors)
    if len(idx) < d or idx[d - 1] - idx[0] != d - 1:
        raise ValueError(f"need {d} consecutive anchor terms")
    with mp.workdps(precision + 10):
        a = mpmath.matrix([_basis(roots, n) for n in idx[:d]])
        b = mpmath.matrix([mpf(anchors[n]) for n in idx[:d]])
        try:
            x = mpmath.lu_solve(a, b)
        except ZeroDivisionError as exc:
            raise PrecisionError("singular Binet system; raise the precision") from exc
        coeffs, k = [], 0
        for _, m in roots:
            coeffs.append([mpc(x[k + t]) for t in range(m)])
            k += m
    form = BinetForm(roots, coeffs, precision)
    scale = max(abs(anchors[n]) for n in idx) or 1
    tol = mpf(10) ** (6 - precision) * scale
    with mp.workdps(precision + 10):
        worst = max(abs(_eval_complex(form, n) - anchors[n]) for n in idx)
    if worst >= tol:
        raise PrecisionError(
            f"Binet fit residual {mpmath.nstr(worst, 5)} exceeds tolerance; raise the precision"
        )
    return form


def _eval_complex(b: BinetForm, n):
    total = mpc(0)
    for (r, _), cs in zip(b.roots, b.coeffs):
        q = mpc(0)
        for c in reversed(cs):
            q = q * n + c
        total += q * r**n
    return total


def eval_binet(b: BinetForm, n: int):
    """Real value of the closed form at index ``n``."""
    with mp.workdps(b.precision + 10):
        z = _eval_complex(b, n)
        # relative bound; values near zero are compared against 1
        if abs(z.imag) >= mpf(10) ** (6 - b.precision) * max(abs(z.real), 1):
            raise PrecisionError("precision exhausted: imaginary residue too large")
        return +z.real


def classify_roots(b: BinetForm, tol: float = 1e-12) -> RootProfile:
    with mp.workdps(b.precision):
        mags = [abs(r) for r, _ in b.roots]
        on = [abs(mg - 1) < tol for mg in mags]
        inside = [mg < 1 - tol for mg in mags]
        dom = max(range(len(mags)), key=mags.__getitem__)
        rest = [mg for mg in mags if mg < mags[dom] - tol]
        sub = max(rest) if rest else None
    return RootProfile(mags, on, inside, dom, sub, tol)
