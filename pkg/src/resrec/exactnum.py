"""Exact integer/rational arithmetic shared by the rest of the package.

Polynomials are tuples of ints in ascending degree order; the empty tuple is
the zero polynomial.  The formal variable is the backward shift ``y`` or the
characteristic variable ``X`` depending on context; nothing here cares which.

Matrices are lists of rows of Python ints.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Poly = tuple  # tuple[int, ...], ascending degree
Matrix = list  # list[list[int]]


# ---------------------------------------------------------------------------
# rationals


def rat(num, den=1) -> Fraction:
    return Fraction(num, den)


def rat_to_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# polynomials


def poly_trim(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Sequence) -> int:
    """Degree of ``p``; -1 for the zero polynomial."""
    return len(poly_trim(p)) - 1


def poly_add(a: Sequence, b: Sequence) -> tuple:
    n = max(len(a), len(b))
    return poly_trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def poly_neg(a: Sequence) -> tuple:
    return tuple(-c for c in a)


def poly_sub(a: Sequence, b: Sequence) -> tuple:
    return poly_add(a, poly_neg(b))


def poly_scale(a: Sequence, s) -> tuple:
    return poly_trim(c * s for c in a)


def poly_mul(a: Sequence, b: Sequence) -> tuple:
    a, b = poly_trim(a), poly_trim(b)
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return poly_trim(out)


def poly_pow(a: Sequence, e: int) -> tuple:
    out: tuple = (1,)
    for _ in range(e):
        out = poly_mul(out, a)
    return out


def poly_derivative(a: Sequence) -> tuple:
    return poly_trim(i * a[i] for i in range(1, len(a)))


def poly_eval(a: Sequence, x):
    """Horner evaluation; works for ints, Fractions, mpmath numbers."""
    acc = 0 * x
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_divmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    """Division over the rationals.  Coefficients come back as Fractions."""
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in poly_trim(a)]
    db = len(b) - 1
    lead = Fraction(b[-1])
    if len(rem) - 1 < db:
        return (), poly_trim(rem)
    quot = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        q = rem[k + db] / lead
        quot[k] = q
        if q:
            for i, bi in enumerate(b):
                rem[k + i] -= q * bi
    return poly_trim(quot), poly_trim(rem[:db])


def poly_content(a: Sequence) -> int:
    return reduce(gcd, (abs(int(c)) for c in a), 0)


def poly_clear_denominators(a: Sequence) -> tuple:
    """Scale a rational polynomial to a primitive integer one (sign kept)."""
    a = [Fraction(c) for c in poly_trim(a)]
    if not a:
        return ()
    lcm = 1
    for c in a:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in a]
    g = poly_content(ints)
    return tuple(c // g for c in ints)


def poly_primitive(p: Sequence) -> tuple:
    """Strip common powers of the variable, remove content, make the constant
    term positive.

    >>> poly_primitive([0, -2, 4, -2])
    (1, -2, 1)
    """
    p = poly_trim(p)
    if not p:
        raise ValueError("zero input")
    k = 0
    while p[k] == 0:
        k += 1
    p = poly_clear_denominators(p[k:])
    if p[0] < 0:
        p = poly_neg(p)
    return p


def poly_monic_sign(p: Sequence) -> tuple:
    """Primitive integer form with positive leading coefficient.

    Used for characteristic polynomials in X, where the top coefficient is the
    one that must be positive.
    """
    p = poly_clear_denominators(p)
    if not p:
        raise ValueError("zero input")
    if p[-1] < 0:
        p = poly_neg(p)
    return p


def poly_exact_div(a: Sequence, b: Sequence) -> tuple:
    q, r = poly_divmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    if any(Fraction(c).denominator != 1 for c in q):
        return tuple(Fraction(c) for c in q)
    return tuple(int(c) for c in q)


def poly_divides(b: Sequence, a: Sequence) -> bool:
    """True if ``b`` divides ``a`` over Q[x]."""
    return not poly_divmod(a, b)[1]


def poly_gcd(a: Sequence, b: Sequence) -> tuple:
    """Greatest common divisor over Q[x], returned primitive with positive lead."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, poly_clear_denominators(r)
    if not a:
        return ()
    return poly_monic_sign(a)


def _monic(a: Sequence) -> tuple:
    a = poly_trim(a)
    lead = Fraction(a[-1])
    return tuple(Fraction(c) / lead for c in a)


def _qgcd(a: Sequence, b: Sequence) -> tuple:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return _monic(a)


def squarefree_decomposition(p: Sequence) -> list[tuple[tuple, int]]:
    """Yun's algorithm: ``p = c * prod(f_i ** m_i)`` with the f_i square-free
    and pairwise coprime.  Returns ``[(f_i, m_i), ...]`` with nonconstant f_i,
    each as a primitive integer polynomial.
    """
    f = _monic(poly_monic_sign(p))
    if len(f) <= 1:
        return []
    out = []
    df = poly_derivative(f)
    a0 = _qgcd(f, df)
    b = poly_divmod(f, a0)[0]
    c = poly_divmod(df, a0)[0]
    d = poly_sub(c, poly_derivative(b))
    m = 1
    while len(b) > 1:
        a = _qgcd(b, d)
        if len(a) > 1:
            out.append((poly_monic_sign(a), m))
        b = poly_divmod(b, a)[0]
        c = poly_divmod(d, a)[0]
        d = poly_sub(c, poly_derivative(b))
        m += 1
    return out


def poly_to_json(p: Sequence) -> list[str]:
    return [rat_to_str(c) for c in poly_trim(p)]


def poly_from_json(items: Sequence[str]) -> tuple:
    vals = [Fraction(s) for s in items]
    if all(v.denominator == 1 for v in vals):
        return poly_trim(int(v) for v in vals)
    return poly_trim(vals)


def poly_str(p: Sequence, var: str = "X") -> str:
    """Render e.g. ``X^5 - 5X^4 + 3X^3 - 3X^2 + 5X - 1``, highest degree first."""
    p = poly_trim(p)
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = rat_to_str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{rat_to_str(mag)}{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# matrices


def shape(m: Matrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise ValueError("ragged matrix")
    return rows, cols


def det_fraction_free(m: Matrix) -> int:
    """Exact determinant by Bareiss elimination.

    Rows are held sparsely (column -> value) so banded inputs only pay for
    their nonzeros; every intermediate is an integer because each division
    by the previous pivot is exact.  The 0x0 determinant is 1.
    """
    n, cols = shape(m)
    if n != cols:
        raise ValueError(f"determinant of non-square {n}x{cols} matrix")
    rows = [{j: int(v) for j, v in enumerate(r) if v} for r in m]
    sign = 1
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if rows[i].get(k)), None)
        if piv is None:
            return 0
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        rk = rows[k]
        p = rk[k]
        tail_k = {j: v for j, v in rk.items() if j > k}
        for i in range(k + 1, n):
            ri = rows[i]
            a = ri.pop(k, 0)
            if a == 0:
                if p != prev:
                    rows[i] = {j: v * p // prev for j, v in ri.items()}
                continue
            new = {}
            for j, v in ri.items():
                new[j] = v * p
            for j, v in tail_k.items():
                new[j] = new.get(j, 0) - a * v
            rows[i] = {j: v // prev for j, v in new.items() if v}
        prev = p
    return sign * prev if n else 1
