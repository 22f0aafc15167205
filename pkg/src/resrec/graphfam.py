"""Laplacians of straight linear k-trees and their standard minors.

Vertex indices are 1-based throughout, matching the deletion notation
``M(A|B)``: delete the rows listed in ``A`` and the columns listed in ``B``.

Two determinant sequences feed the resistance formula, both indexed by the
size ``m`` of the (square) minor:

* ``denominator``: ``L^{m+1}(1|1)``, the spanning-tree count of the graph on
  ``m + 1`` vertices;
* ``numerator``: ``L^{m+2}({1, m+2}|{1, m+2})``, the first and last vertex
  removed from the graph on ``m + 2`` vertices.

With these, the end-to-end resistance of the graph on ``n`` vertices is
``numerator[n-2] / denominator[n-1]``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactnum import Matrix, det_fraction_free, shape

PARTS = ("numerator", "denominator", "custom")


@dataclass(frozen=True)
class FamilySpec:
    """Which family of Laplacian minors to generate.

    For ``part="custom"`` the deletion sets are given relative to the
    Laplacian size ``N``: positive entries count from the front (1 is the
    first vertex) and nonpositive entries from the back (0 is the last
    vertex, -1 the one before).  The minor size is ``m = N - len(rows)``.
    """

    k: int = 3
    part: str = "denominator"
    rows: tuple = ()
    cols: tuple = ()
    kind: str = "straight-linear-k-tree"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("bandwidth k must be >= 1")
        if self.part not in PARTS:
            raise ValueError(f"part must be one of {PARTS}")
        if self.kind != "straight-linear-k-tree":
            raise ValueError(f"unsupported family kind {self.kind!r}")
        if self.part == "custom":
            if len(self.rows) != len(self.cols):
                raise ValueError("custom deletions must remove as many rows as columns")
        elif self.rows or self.cols:
            raise ValueError("deletion sets are fixed for numerator/denominator parts")

    @property
    def deleted_count(self) -> int:
        if self.part == "denominator":
            return 1
        if self.part == "numerator":
            return 2
        return len(self.rows)

    @property
    def min_index(self) -> int:
        """Smallest minor size whose Laplacian has at least 2 vertices."""
        return max(0, 2 - self.deleted_count)

    def laplacian_size(self, m: int) -> int:
        return m + self.deleted_count

    def deletions(self, m: int) -> tuple[list[int], list[int]]:
        size = self.laplacian_size(m)
        if self.part == "denominator":
            return [1], [1]
        if self.part == "numerator":
            return [1, size], [1, size]
        resolve = lambda idx: [i if i > 0 else size + i for i in idx]  # noqa: E731
        return resolve(self.rows), resolve(self.cols)

    def minor(self, m: int) -> Matrix:
        size = self.laplacian_size(m)
        rows, cols = self.deletions(m)
        return delete(build_laplacian(self.k, size), rows, cols)

    def label(self) -> str:
        if self.part == "custom":
            return f"k={self.k} custom({list(self.rows)}|{list(self.cols)})"
        return f"k={self.k} {self.part}"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "k": self.k, "part": self.part}
        if self.part == "custom":
            out["rows"] = list(self.rows)
            out["cols"] = list(self.cols)
        return out


@dataclass
class DetSequence:
    """Exact determinant values; ``terms[t]`` belongs to index ``start + t``."""

    label: str
    start: int
    terms: list = field(default_factory=list)

    def __post_init__(self):
        if not self.terms:
            raise ValueError("DetSequence needs at least one term")

    @property
    def stop(self) -> int:
        """One past the last stored index."""
        return self.start + len(self.terms)

    def __getitem__(self, n: int) -> int:
        if not self.start <= n < self.stop:
            raise IndexError(f"index {n} outside [{self.start}, {self.stop})")
        return self.terms[n - self.start]

    def indices(self) -> range:
        return range(self.start, self.stop)

    def window(self, lo: int, hi: int) -> "DetSequence":
        return DetSequence(self.label, lo, [self[i] for i in range(lo, hi + 1)])

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "start": self.start,
            "terms": [str(t) for t in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DetSequence":
        return cls(data["label"], int(data["start"]), [int(t) for t in data["terms"]])


def build_laplacian(k: int, n: int) -> Matrix:
    """Laplacian of the graph on ``n`` vertices with ``i ~ j`` iff ``0 < |i-j| <= k``."""
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if k < 1:
        raise ValueError("bandwidth k must be >= 1")
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        lo, hi = max(0, i - k), min(n - 1, i + k)
        for j in range(lo, hi + 1):
            if j != i:
                m[i][j] = -1
        m[i][i] = hi - lo
    return m


def _check_indices(idx: Sequence[int], bound: int, what: str) -> None:
    if len(set(idx)) != len(idx):
        raise ValueError(f"duplicate {what} indices: {list(idx)}")
    for i in idx:
        if not 1 <= i <= bound:
            raise ValueError(f"{what} index {i} out of range 1..{bound}")


def delete(m: Matrix, rows: Iterable[int], cols: Iterable[int]) -> Matrix:
    """``m(rows|cols)`` with 1-based indices; order of survivors is kept."""
    rows, cols = list(rows), list(cols)
    nr, nc = shape(m)
    _check_indices(rows, nr, "row")
    _check_indices(cols, nc, "column")
    drop_r, drop_c = set(rows), set(cols)
    keep_c = [j for j in range(nc) if j + 1 not in drop_c]
    return [[m[i][j] for j in keep_c] for i in range(nr) if i + 1 not in drop_r]


def oracle_sequence(spec: FamilySpec, n_lo: int, n_hi: int, workers: int = 1) -> DetSequence:
    """Exact determinants of the family's minors for sizes ``n_lo..n_hi``."""
    if n_lo < spec.min_index:
        raise ValueError(f"{spec.label()} is defined from index {spec.min_index}")
    if n_hi < n_lo:
        raise ValueError("empty index range")
    sizes = range(n_lo, n_hi + 1)

    def one(m: int) -> int:
        return det_fraction_free(spec.minor(m))

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            terms = list(pool.map(one, sizes))
    else:
        terms = [one(m) for m in sizes]
    return DetSequence(spec.label(), n_lo, terms)
