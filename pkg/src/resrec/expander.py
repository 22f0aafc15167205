"""Laplace expansion procedure over matrix families.

Starting from a seed family, every family is expanded along its first row or
first column (whichever has fewer nonzeros, ties to the row).  Each minor is
looked up in the registry of known families; unknown ones are numbered in
discovery order and queued.  The run ends when the queue is empty, leaving
one determinant identity per family::

    Det(M(i)) = sum_j a_ij(y) Det(M(j)),   a_ij = c * y
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .exactnum import det_fraction_free, poly_to_json
from .stencil import DEFAULT_REP_SIZE, MatrixFamily, canonicalize, member, minor_family

DEFAULT_MAX_FAMILIES = 200


class ProcedureCapError(RuntimeError):
    pass


@dataclass(frozen=True)
class DetIdentity:
    lhs: int
    rhs: tuple  # ((coeff_poly_in_y, family_id), ...)

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs,
            "terms": [{"coeff": poly_to_json(c), "family": fid} for c, fid in self.rhs],
        }


@dataclass
class EquationSystem:
    families: list = field(default_factory=list)
    equations: list = field(default_factory=list)
    seed: int = 0
    prefix: str = "M"

    def name(self, i: int) -> str:
        return f"{self.prefix}({i})"

    def coefficient_matrix(self) -> list:
        """``A[i][j]`` as a polynomial in y (ascending tuple)."""
        m = len(self.families)
        a = [[() for _ in range(m)] for _ in range(m)]
        for eq in self.equations:
            for coeff, fid in eq.rhs:
                a[eq.lhs][fid] = coeff
        return a

    def render(self) -> list[str]:
        return [render_identity(eq, self.name) for eq in self.equations]

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "families": [dict(f.to_json(), id=self.name(i)) for i, f in enumerate(self.families)],
            "equations": [eq.to_json() for eq in self.equations],
            "text": self.render(),
        }


def render_identity(eq: DetIdentity, name=lambda i: f"M({i})") -> str:
    """Text form such as ``D(0) = 2 y D(0) + y D(1)``."""
    if not eq.rhs:
        return f"{name(eq.lhs)} = 0"
    out = []
    for coeff, fid in eq.rhs:
        deg = len(coeff) - 1
        c = coeff[-1]
        ypart = "y" if deg == 1 else (f"y^{deg}" if deg > 1 else "")
        mag = abs(c)
        factor = " ".join(p for p in (str(mag) if mag != 1 or not ypart else "", ypart) if p)
        term = f"{factor} {name(fid)}"
        if not out:
            out.append(("- " if c < 0 else "") + term)
        else:
            out.append(("- " if c < 0 else "+ ") + term)
    return f"{name(eq.lhs)} = " + " ".join(out)


def _nonzeros(vec) -> list[tuple[int, int]]:
    return [(i + 1, v) for i, v in enumerate(vec) if v]


def choose_axis(f: MatrixFamily, rep_size: int = DEFAULT_REP_SIZE) -> str:
    m = member(f, max(rep_size, f.min_size))
    row = _nonzeros(m[0])
    col = _nonzeros([r[0] for r in m])
    return "column" if len(col) < len(row) else "row"


def has_zero_line(f: MatrixFamily, rep_size: int = DEFAULT_REP_SIZE) -> bool:
    m = member(f, max(rep_size, f.min_size))
    return any(not any(r) for r in m) or any(not any(c) for c in zip(*m))


def expand_once(f: MatrixFamily, rep_size: int = DEFAULT_REP_SIZE) -> list[tuple[int, MatrixFamily]]:
    """Expansion terms ``[(integer_coefficient, minor_family), ...]``.

    The coefficient multiplies ``y Det(minor)``.  A family with an all-zero row
    or column has determinant zero and expands to no terms.
    """
    f = canonicalize(f)
    if has_zero_line(f, rep_size):
        return []
    axis = choose_axis(f, rep_size)
    m = member(f, max(rep_size, f.min_size))
    line = m[0] if axis == "row" else [r[0] for r in m]
    terms = []
    for j, v in _nonzeros(line):
        sign = 1 if j % 2 == 1 else -1
        terms.append((sign * v, minor_family(f, axis, j, rep_size)))
    return terms


def run_procedure(
    seed: MatrixFamily,
    max_families: int = DEFAULT_MAX_FAMILIES,
    rep_size: int = DEFAULT_REP_SIZE,
    prefix: str | None = None,
) -> EquationSystem:
    """Expand to a fixed point.  Raises :class:`ProcedureCapError` when the
    registry would grow past ``max_families``."""
    if max_families < 1:
        raise ValueError("max_families must be >= 1")
    seed = canonicalize(seed)
    system = EquationSystem(prefix=prefix or seed.label or "M")
    index: dict = {seed.key: 0}
    system.families.append(seed)
    todo = deque([0])
    equations: dict[int, DetIdentity] = {}
    while todo:
        fid = todo.popleft()
        merged: dict[int, int] = {}
        for coeff, minor in expand_once(system.families[fid], rep_size):
            mid = index.get(minor.key)
            if mid is None:
                if len(system.families) >= max_families:
                    raise ProcedureCapError(
                        f"procedure did not terminate within cap of {max_families} families"
                    )
                mid = len(system.families)
                index[minor.key] = mid
                system.families.append(minor)
                todo.append(mid)
            merged[mid] = merged.get(mid, 0) + coeff
        rhs = tuple(((0, c), mid) for mid, c in merged.items() if c)
        equations[fid] = DetIdentity(fid, rhs)
    system.equations = [equations[i] for i in range(len(system.families))]
    return system


def check_identity(system: EquationSystem, eq: DetIdentity, n: int) -> bool:
    """Substitute exact determinants of size-``n`` members into ``eq``."""
    lhs = det_fraction_free(member(system.families[eq.lhs], n))
    rhs = 0
    for coeff, fid in eq.rhs:
        for shift, c in enumerate(coeff):
            if c:
                rhs += c * det_fraction_free(member(system.families[fid], n - shift))
    return lhs == rhs


def soundness_range(system: EquationSystem, eq: DetIdentity, span: int = 6) -> range:
    """Sizes where every family in ``eq`` is well formed."""
    lo = system.families[eq.lhs].min_size
    for coeff, fid in eq.rhs:
        lo = max(lo, system.families[fid].min_size + len(coeff) - 1)
    return range(lo + 1, lo + 1 + span)
