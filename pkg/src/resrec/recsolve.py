"""From determinant identities to linear recurrences.

Conventions: a polynomial in the backward shift ``y`` with coefficients
``c_0 + c_1 y + ... + c_d y^d`` annihilates ``s`` when
``sum_i c_i s_{n-i} = 0``.  The matching characteristic polynomial in ``X``
is the coefficient reversal, and a polynomial ``C(X) = sum_i c_i X^i`` acts
on a sequence as ``(C s)_n = sum_i c_i s_{n+i}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import (
    det_fraction_free,
    poly_divmod,
    poly_monic_sign,
    poly_mul,
    poly_primitive,
    poly_str,
    poly_to_json,
    poly_trim,
)
from .expander import EquationSystem
from .graphfam import DetSequence


class DegenerateSystemError(ArithmeticError):
    pass


@dataclass
class LinearRecurrence:
    char_poly: tuple  # ascending in X, primitive, positive leading coefficient
    cutoff: int
    initial_terms: dict = field(default_factory=dict)  # index -> int

    @property
    def order(self) -> int:
        return len(self.char_poly) - 1

    def holds_at(self, seq, n: int) -> bool:
        return apply_poly(self.char_poly, seq, n) == 0

    def to_json(self, verified_window=None) -> dict:
        out = {
            "char_poly_X": poly_to_json(self.char_poly),
            "char_poly_text": poly_str(self.char_poly, "X"),
            "order": self.order,
            "cutoff": self.cutoff,
            "initial_terms": {str(i): str(v) for i, v in sorted(self.initial_terms.items())},
        }
        if verified_window is not None:
            out["verified_window"] = list(verified_window)
        return out


@dataclass
class SisterSequence:
    """Doubly infinite extension of a determinant sequence."""

    recurrence: LinearRecurrence
    terms: dict = field(default_factory=dict)

    @property
    def lo(self) -> int:
        return min(self.terms)

    @property
    def hi(self) -> int:
        return max(self.terms)

    def __getitem__(self, n: int) -> int:
        return self.terms[n]

    def extend_forward(self, upto: int) -> None:
        c = self.recurrence.char_poly
        d = len(c) - 1
        lead = c[-1]
        n = self.hi + 1
        while n <= upto:
            acc = -sum(c[i] * self.terms[n - d + i] for i in range(d))
            q, r = divmod(acc, lead)
            if r:
                raise ArithmeticError("sequence not forward-extendable over the integers")
            self.terms[n] = q
            n += 1

    def as_det_sequence(self, lo: int, hi: int, label: str = "sister") -> DetSequence:
        if hi > self.hi:
            self.extend_forward(hi)
        return DetSequence(label, lo, [self.terms[i] for i in range(lo, hi + 1)])


def apply_poly(c, seq, n: int):
    """``(C s)_n = sum_i c_i s_{n+i}``; ``seq`` is anything indexable by int."""
    return sum(ci * seq[n + i] for i, ci in enumerate(c) if ci)


# ---------------------------------------------------------------------------
# elimination


def _interpolate(xs: list[int], ys: list[int]) -> tuple:
    """Exact Newton interpolation; coefficients ascending."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        nxt = [Fraction(0)] * n
        for k in range(n - 1):
            nxt[k + 1] += poly[k]
            nxt[k] -= poly[k] * xs[i]
        nxt[0] += coef[i]
        poly = nxt
    if any(c.denominator != 1 for c in poly):
        raise ArithmeticError("interpolated determinant is not an integer polynomial")
    return poly_trim(int(c) for c in poly)


def system_matrix_at(system: EquationSystem, y: int) -> list:
    """``I - A(y)`` evaluated at an integer point."""
    a = system.coefficient_matrix()
    m = len(a)
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            v = sum(c * y**k for k, c in enumerate(a[i][j]))
            row.append((1 if i == j else 0) - v)
        out.append(row)
    return out


def eliminate_raw(system: EquationSystem) -> tuple:
    """``det(I - A(y))`` as an integer polynomial in ``y``.

    Every coefficient has degree at most one, so the determinant has degree at
    most the number of families and is recovered exactly from that many + 1
    integer evaluations.
    """
    a = system.coefficient_matrix()
    deg_bound = sum(max((len(c) - 1 for c in row if c), default=0) for row in a)
    xs = list(range(deg_bound + 1))
    ys = [det_fraction_free(system_matrix_at(system, x)) for x in xs]
    return _interpolate(xs, ys)


def eliminate(system: EquationSystem) -> tuple:
    """Annihilator ``p(y)`` of every family in the system, primitive form."""
    p = eliminate_raw(system)
    if not p:
        raise DegenerateSystemError("degenerate system: det(I - A(y)) vanishes identically")
    return poly_primitive(p)


def y_to_X(p) -> tuple:
    """Backward-shift annihilator to characteristic polynomial in X."""
    p = poly_trim(p)
    if not p:
        raise ValueError("zero input")
    return poly_monic_sign(tuple(reversed(p)))


# ---------------------------------------------------------------------------
# minimal polynomials


def berlekamp_massey(terms) -> tuple:
    """Shortest connection polynomial over Q for ``terms``.

    Returns ``C(y) = 1 + c_1 y + ... + c_L y^L`` (ascending, Fractions) with
    ``sum_i c_i s_{n-i} = 0`` for ``L <= n < len(terms)``.
    """
    s = [Fraction(t) for t in terms]
    c = [Fraction(1)]
    b = [Fraction(1)]
    length = 0
    shift = 1
    bd = Fraction(1)
    for n in range(len(s)):
        d = s[n] + sum(c[i] * s[n - i] for i in range(1, length + 1) if i < len(c))
        if d == 0:
            shift += 1
            continue
        coef = d / bd
        t = list(c)
        need = len(b) + shift
        if len(c) < need:
            c = c + [Fraction(0)] * (need - len(c))
        for i, bi in enumerate(b):
            c[i + shift] -= coef * bi
        if 2 * length <= n:
            length = n + 1 - length
            b = t
            bd = d
            shift = 1
        else:
            shift += 1
    c = c[: length + 1] + [Fraction(0)] * max(0, length + 1 - len(c))
    return tuple(c)


def minimal_polynomial(seq: DetSequence, expected_order: int | None = None) -> tuple:
    """Least-degree characteristic polynomial (in X) of the supplied window."""
    terms = list(seq.terms)
    if len(terms) < 2:
        raise ValueError("insufficient terms: need at least 2")
    if expected_order is not None and len(terms) < 2 * expected_order + 2:
        raise ValueError(
            f"insufficient terms: {len(terms)} < {2 * expected_order + 2} for order {expected_order}"
        )
    conn = berlekamp_massey(terms)
    length = len(conn) - 1
    if 2 * length + 2 > len(terms):
        raise ValueError(
            f"insufficient terms: recurrence of order {length} not determined by {len(terms)} terms"
        )
    # connection polynomial of order L reversed gives X^L C(1/X)
    return poly_monic_sign(tuple(reversed(conn)))


def detect_cutoff(char_poly, seq: DetSequence) -> int:
    """Smallest index ``n0`` such that every window starting at or after
    ``n0`` satisfies the recurrence (within the stored terms)."""
    d = len(char_poly) - 1
    starts = range(seq.start, seq.stop - d)
    if not starts:
        raise ValueError("sequence shorter than recurrence order")
    cutoff = seq.stop - d
    for n in reversed(starts):
        if apply_poly(char_poly, seq, n) != 0:
            break
        cutoff = n
    return cutoff


def failing_windows(char_poly, seq: DetSequence) -> list[int]:
    d = len(char_poly) - 1
    return [n for n in range(seq.start, seq.stop - d) if apply_poly(char_poly, seq, n) != 0]


def build_recurrence(char_poly, seq: DetSequence) -> LinearRecurrence:
    cutoff = detect_cutoff(char_poly, seq)
    d = len(char_poly) - 1
    if cutoff + 2 * d > seq.stop:
        raise ValueError("recurrence verified on fewer than order windows")
    init = {i: seq[i] for i in range(cutoff, cutoff + d)}
    return LinearRecurrence(tuple(char_poly), cutoff, init)


# ---------------------------------------------------------------------------
# factor certification and sister sequences


def factor_annihilates(a, b, c, x, n1: int) -> bool:
    """Finite test that ``c`` annihilates ``x`` given ``a = b * c`` annihilates it:
    ``(c x)_n`` must vanish for ``deg(b)`` consecutive ``n`` from ``n1``."""
    if poly_mul(b, c) != poly_trim(a):
        raise ValueError("not a factorization")
    db = len(poly_trim(b)) - 1
    return all(apply_poly(c, x, n) == 0 for n in range(n1, n1 + db))


def extend_backward(seq: DetSequence, rec: LinearRecurrence, count: int) -> SisterSequence:
    """Run the recurrence backwards ``count`` steps below its cutoff."""
    c = rec.char_poly
    d = len(c) - 1
    lo = max(rec.cutoff, seq.start)
    if lo + d > seq.stop:
        raise ValueError("need at least `order` terms at or after the cutoff")
    terms = {i: seq[i] for i in range(lo, seq.stop)}
    c0 = c[0]
    if c0 == 0:
        raise ArithmeticError("sequence not backward-extendable over the integers")
    for n in range(lo - 1, lo - 1 - count, -1):
        acc = -sum(c[i] * terms[n + i] for i in range(1, d + 1))
        q, r = divmod(acc, c0)
        if r:
            raise ArithmeticError("sequence not backward-extendable over the integers")
        terms[n] = q
    return SisterSequence(rec, terms)


def divides_over_q(b, a) -> bool:
    return not poly_divmod(a, b)[1]
