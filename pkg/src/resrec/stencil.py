"""Boundary-stencil representation of infinite families of banded matrices.

A family member of size ``n`` is a banded Toeplitz matrix plus two small
correction blocks: one pinned to the top-left corner and one pinned to the
bottom-right corner::

    member(n) = toeplitz(band, n) + pad_top_left(top) + pad_bottom_right(bottom)

Deleting the first row and a nearby column of a member changes only the
top-left corner, so the minors of a family form another family of the same
shape, one size smaller.  Keeping the correction blocks trimmed (no zero
outer rows or columns) makes the representation canonical: two families are
equal exactly when their band and both blocks coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

from .exactnum import Matrix, shape
from .graphfam import delete

DEFAULT_REP_SIZE = 10


class StencilClosureError(ValueError):
    pass


def _trim_top(block) -> tuple:
    rows = [list(r) for r in block]
    while rows and not any(rows[-1]):
        rows.pop()
    width = max((max((j + 1 for j, v in enumerate(r) if v), default=0) for r in rows), default=0)
    return tuple(tuple(r[:width]) + (0,) * (width - len(r[:width])) for r in rows)


def _trim_bottom(block) -> tuple:
    # anchored bottom-right: trim leading zero rows and leading zero columns
    flipped = [list(reversed(r)) for r in reversed(block)]
    t = _trim_top(flipped)
    return tuple(tuple(reversed(r)) for r in reversed(t))


def _dims(block) -> tuple[int, int]:
    return len(block), (len(block[0]) if block else 0)


@dataclass(frozen=True)
class MatrixFamily:
    band: tuple  # ((offset, value), ...) sorted by offset, zero values omitted
    top: tuple = ()
    bottom: tuple = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "band", tuple(sorted((o, v) for o, v in self.band if v)))
        object.__setattr__(self, "top", tuple(tuple(r) for r in self.top))
        object.__setattr__(self, "bottom", tuple(tuple(r) for r in self.bottom))

    @property
    def bandwidth(self) -> int:
        return max((abs(o) for o, _ in self.band), default=0)

    @property
    def min_size(self) -> int:
        rt, ct = _dims(self.top)
        rb, cb = _dims(self.bottom)
        return max(rt + rb, ct + cb, 1)

    @property
    def key(self) -> tuple:
        return (self.band, self.top, self.bottom)

    def transpose(self) -> "MatrixFamily":
        return MatrixFamily(
            band=tuple((-o, v) for o, v in self.band),
            top=tuple(zip(*self.top)) if self.top else (),
            bottom=tuple(zip(*self.bottom)) if self.bottom else (),
            label=self.label,
        )

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "band": {str(o): v for o, v in self.band},
            "top_block": [list(r) for r in self.top],
            "bottom_block": [list(r) for r in self.bottom],
            "min_size": self.min_size,
        }

    @classmethod
    def from_json(cls, data: dict) -> "MatrixFamily":
        return cls(
            band=tuple((int(o), v) for o, v in data["band"].items()),
            top=data["top_block"],
            bottom=data["bottom_block"],
            label=data.get("label", ""),
        )


def toeplitz(band, n: int) -> Matrix:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for off, v in band:
            j = i + off
            if 0 <= j < n:
                m[i][j] = v
    return m


def member(f: MatrixFamily, n: int) -> Matrix:
    """The size-``n`` member of ``f``."""
    if n < f.min_size:
        raise ValueError(f"family member needs n >= {f.min_size}, got {n}")
    m = toeplitz(f.band, n)
    for i, row in enumerate(f.top):
        for j, v in enumerate(row):
            m[i][j] += v
    rb, cb = _dims(f.bottom)
    for i, row in enumerate(f.bottom):
        for j, v in enumerate(row):
            m[n - rb + i][n - cb + j] += v
    return m


def canonicalize(f: MatrixFamily) -> MatrixFamily:
    return replace(f, top=_trim_top(f.top), bottom=_trim_bottom(f.bottom))


def _split_corrections(diff: Matrix) -> tuple[tuple, tuple]:
    """Split a correction matrix into its top-left and bottom-right parts."""
    n, _ = shape(diff)
    half = n // 2
    top = [[0] * half for _ in range(half)]
    rest = n - half
    bottom = [[0] * rest for _ in range(rest)]
    for i, row in enumerate(diff):
        for j, v in enumerate(row):
            if not v:
                continue
            if i < half and j < half:
                top[i][j] = v
            elif i >= half and j >= half:
                bottom[i - half][j - half] = v
            else:
                raise StencilClosureError("stencil closure violated: corrections meet off the corners")
    return _trim_top(top), _trim_bottom(bottom)


def family_from_generator(
    gen: Callable[[int], Matrix], band, size: int, label: str = ""
) -> MatrixFamily:
    """Fit a family to concrete matrices ``gen(n)``.

    The corner corrections are read off at ``size`` (which must separate the
    two corners) and the fit is checked at ``size + 1`` and ``size + 2``.
    """
    band = tuple(sorted((o, v) for o, v in band if v))
    m = gen(size)
    t = toeplitz(band, size)
    diff = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(m, t)]
    top, bottom = _split_corrections(diff)
    fam = MatrixFamily(band, top, bottom, label)
    for n in (size + 1, size + 2):
        if member(fam, n) != gen(n):
            raise StencilClosureError(f"generator is not a stencil family at size {n}")
    return fam


def _work_size(f: MatrixFamily, rep_size: int) -> int:
    rt, ct = _dims(f.top)
    rb, cb = _dims(f.bottom)
    b = f.bandwidth
    # top block of a minor can reach row/col max(rt, ct) + 2b; keep it clear
    # of the bottom block with room to spare
    need = 2 * (max(rt, ct) + 2 * b + 2) + max(rb, cb) + 2
    return max(rep_size, need, f.min_size + 1)


def boundary_limit(f: MatrixFamily) -> int:
    rt, ct = _dims(f.top)
    return max(ct, rt, 1) + f.bandwidth


def _row_minor(f: MatrixFamily, j: int, rep_size: int) -> MatrixFamily:
    if not 1 <= j <= boundary_limit(f):
        raise StencilClosureError(
            f"stencil closure violated: column {j} is outside the boundary region"
        )
    n = _work_size(f, rep_size)
    m = delete(member(f, n), [1], [j])
    t = toeplitz(f.band, n - 1)
    diff = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(m, t)]
    top, bottom = _split_corrections(diff)
    if bottom != f.bottom:
        raise StencilClosureError("stencil closure violated: bottom block changed")
    return MatrixFamily(f.band, top, bottom)


def minor_family(f: MatrixFamily, axis: str, j: int, rep_size: int = DEFAULT_REP_SIZE) -> MatrixFamily:
    """Family whose size ``n-1`` member is member ``n`` of ``f`` with the
    first row and column ``j`` removed (``axis="row"``), or row ``j`` and
    the first column removed (``axis="column"``)."""
    if axis == "row":
        return canonicalize(_row_minor(f, j, rep_size))
    if axis == "column":
        return canonicalize(_row_minor(f.transpose(), j, rep_size).transpose())
    raise ValueError(f"axis must be 'row' or 'column', not {axis!r}")


def equals(f: MatrixFamily, g: MatrixFamily, rep_size: int = DEFAULT_REP_SIZE) -> bool:
    """Stencil identity, confirmed on two concrete members."""
    if f.key != g.key:
        return False
    n = max(rep_size, f.min_size)
    return member(f, n) == member(g, n) and member(f, n + 1) == member(g, n + 1)


def laplacian_band(k: int) -> tuple:
    return tuple((o, -1) for o in range(-k, k + 1) if o) + ((0, 2 * k),)


def seed_family(spec, rep_size: int = DEFAULT_REP_SIZE) -> MatrixFamily:
    """Stencil for a :class:`~resrec.graphfam.FamilySpec` part."""
    size = max(rep_size, 4 * spec.k + 4)
    label = {"denominator": "D", "numerator": "N"}.get(spec.part, "M")
    return family_from_generator(spec.minor, laplacian_band(spec.k), size, label)
