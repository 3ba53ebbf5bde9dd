"""Exact linear algebra over the rationals.

Dense matrices of Fractions, reduced row echelon form with first-nonzero
pivoting, and the kernel/image/quotient trio the cohomology pipeline runs
on.  Determinism matters more than pivot heuristics at these sizes: the
same input always produces the same echelon basis, so printed bases and
JSON reports are stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

__all__ = [
    "IntegrityError",
    "QMatrix",
    "Subspace",
    "coefficient_matrix",
    "image_subspace",
    "kernel_basis",
    "quotient_basis",
    "rref",
]


class IntegrityError(RuntimeError):
    """An internal consistency assertion failed (signals an upstream bug)."""


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if data:
            cols = len(data[0])
            if any(len(row) != cols for row in data):
                raise ValueError("ragged matrix")
        elif cols is None:
            cols = 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "QMatrix":
        if columns:
            rows = len(columns[0])
            data = tuple(
                tuple(Fraction(col[i]) for col in columns) for i in range(rows)
            )
            return cls(rows, len(columns), data)
        return cls(rows or 0, 0, tuple(() for _ in range(rows or 0)))

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [list(map(Fraction, row)) for row in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                factor = work[i][c]
                work[i] = [a - factor * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


@dataclass(frozen=True)
class Subspace:
    """Row span in reduced echelon form with strictly increasing pivots."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[Fraction]], ambient_dim: int) -> "Subspace":
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match the ambient dimension")
        rows, pivots = rref(vectors)
        return cls(ambient_dim, tuple(tuple(r) for r in rows), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vector: Sequence[Fraction]) -> list[Fraction]:
        """Remainder of a vector after elimination against the basis."""
        v = [Fraction(x) for x in vector]
        for row, p in zip(self.basis, self.pivots):
            if v[p]:
                factor = v[p]
                v = [a - factor * b for a, b in zip(v, row)]
        return v

    def contains(self, vector: Sequence[Fraction]) -> bool:
        return not any(self.reduce(vector))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)


def kernel_basis(m: QMatrix) -> Subspace:
    """Reduced echelon basis of the null space."""
    rows, pivots = rref(m.entries)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    vectors = []
    for fc in free_cols:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        for row, pc in zip(rows, pivots):
            if row[fc]:
                v[pc] = -row[fc]
        vectors.append(v)
    return Subspace.from_vectors(vectors, m.cols)


def image_subspace(m: QMatrix) -> Subspace:
    """Echelonized column space."""
    columns = [m.column(j) for j in range(m.cols)]
    return Subspace.from_vectors(columns, m.rows)


def quotient_basis(kernel: Subspace, image: Subspace) -> list[tuple[Fraction, ...]]:
    """Representatives of kernel/image, as echelon vectors extending the
    image basis inside the kernel.  Containment of the image in the kernel
    is asserted; failure means the complex upstream is broken."""
    if kernel.ambient_dim != image.ambient_dim:
        raise IntegrityError("quotient spaces live in different ambient dimensions")
    if not kernel.contains_subspace(image):
        raise IntegrityError("image is not contained in the kernel (d^2 != 0 upstream?)")
    added = []
    working = image
    for vector in kernel.basis:
        remainder = working.reduce(vector)
        if any(remainder):
            added.append(remainder)
            working = Subspace.from_vectors(list(working.basis) + [remainder], kernel.ambient_dim)
    reduced, _ = rref(added)
    return [tuple(r) for r in reduced]


def coefficient_matrix(
    inputs: Sequence, map_fn: Callable, target_coords: Callable, target_dim: int
) -> QMatrix:
    """Matrix of a linear map: column i holds the target-space coordinates
    of map_fn(inputs[i])."""
    columns = [target_coords(map_fn(e)) for e in inputs]
    for col in columns:
        if len(col) != target_dim:
            raise IntegrityError("target-space ordering mismatch")
    data = tuple(tuple(col[i] for col in columns) for i in range(target_dim))
    return QMatrix(target_dim, len(columns), data)
