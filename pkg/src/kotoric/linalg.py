"""Exact integer and F2 linear algebra.

Integer matrices are plain lists of lists of Python ints (arbitrary
precision); internally rows are kept sparse as ``{column: value}`` dicts so
the windowed lattices built by :mod:`kotoric.toric` stay cheap to reduce.
F2 matrices pack each row into a single Python int.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

SparseRow = dict  # column index -> nonzero int

__all__ = [
    "F2Matrix",
    "LatticeQuotient",
    "f2_kernel_basis",
    "f2_rank",
    "hermite_normal_form",
    "int_rank",
    "smith_normal_form",
]


def _to_sparse(A: Sequence[Sequence[int]]) -> list[SparseRow]:
    return [{j: int(v) for j, v in enumerate(row) if v} for row in A]


def _to_dense(rows: Sequence[SparseRow], ncols: int) -> list[list[int]]:
    out = []
    for row in rows:
        dense = [0] * ncols
        for j, v in row.items():
            dense[j] = v
        out.append(dense)
    return out


def _axpy(target: SparseRow, q: int, source: SparseRow) -> None:
    """target -= q * source, in place."""
    if not q:
        return
    for j, v in source.items():
        w = target.get(j, 0) - q * v
        if w:
            target[j] = w
        else:
            target.pop(j, None)


def _hnf_sparse(
    rows: list[SparseRow],
    ncols: int,
    transform: list[SparseRow] | None = None,
    columns: Iterable[int] | None = None,
) -> list[int]:
    """Row-style Hermite reduction of ``rows`` in place.

    Columns are swept in the order given by ``columns`` (default 0..ncols-1).
    On return the first ``len(pivots)`` rows are the nonzero echelon rows,
    with positive pivots and entries above each pivot reduced into
    ``[0, pivot)``; remaining rows are zero. ``transform`` (if given) receives
    the same row operations. Returns the pivot columns in sweep order.
    """
    n = len(rows)
    pivots: list[int] = []
    top = 0
    order = range(ncols) if columns is None else columns
    for col in order:
        if top >= n:
            break
        cand = [r for r in range(top, n) if col in rows[r]]
        if not cand:
            continue
        while len(cand) > 1:
            # smallest entry first, fewest nonzeros to break ties (fill-in)
            p = min(cand, key=lambda r: (abs(rows[r][col]), len(rows[r])))
            pv = rows[p][col]
            nxt = [p]
            for r in cand:
                if r == p:
                    continue
                q = rows[r][col] // pv
                _axpy(rows[r], q, rows[p])
                if transform is not None:
                    _axpy(transform[r], q, transform[p])
                if col in rows[r]:
                    nxt.append(r)
            cand = nxt
        p = cand[0]
        if p != top:
            rows[p], rows[top] = rows[top], rows[p]
            if transform is not None:
                transform[p], transform[top] = transform[top], transform[p]
        if rows[top][col] < 0:
            rows[top] = {j: -v for j, v in rows[top].items()}
            if transform is not None:
                transform[top] = {j: -v for j, v in transform[top].items()}
        pv = rows[top][col]
        for r in range(top):
            v = rows[r].get(col)
            if v is not None:
                q = v // pv
                _axpy(rows[r], q, rows[top])
                if transform is not None:
                    _axpy(transform[r], q, transform[top])
        pivots.append(col)
        top += 1
    return pivots


def hermite_normal_form(
    A: Sequence[Sequence[int]],
) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ A``, ``U`` unimodular, ``H`` in
    echelon form with positive pivots, entries above each pivot in
    ``[0, pivot)`` and zero rows last.
    """
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    rows = _to_sparse(A)
    U = [{i: 1} for i in range(nrows)]
    _hnf_sparse(rows, ncols, U)
    return _to_dense(rows, ncols), _to_dense(U, nrows)


def int_rank(A: Sequence[Sequence[int]] | Sequence[SparseRow], ncols: int | None = None) -> int:
    """Rank over Q of an integer matrix (dense rows or sparse dict rows)."""
    if not A:
        return 0
    if isinstance(A[0], dict):
        rows = [dict(r) for r in A]
        if ncols is None:
            ncols = 1 + max((max(r) for r in rows if r), default=-1)
    else:
        rows = _to_sparse(A)
        ncols = len(A[0])
    return len(_hnf_sparse(rows, ncols))


def smith_normal_form(A: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors d1 | d2 | ... of ``A``, zero-padded to min(shape)."""
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    k = min(nrows, ncols)
    if k == 0:
        return []
    rows = _to_sparse(A)
    width = ncols
    # alternate row and column Hermite passes until the matrix is diagonal
    while True:
        piv = _hnf_sparse(rows, width)
        rows = [r for r in rows[: len(piv)]]
        if all(set(r) == {i} for i, r in enumerate(rows) if r) and all(
            piv[i] == i for i in range(len(piv))
        ):
            break
        cols: list[SparseRow] = [{} for _ in range(width)]
        for i, r in enumerate(rows):
            for j, v in r.items():
                cols[j][i] = v
        rows, width = cols, len(rows)
    diag = [abs(rows[i][i]) for i in range(len(rows))]
    # enforce divisibility: (a, b) -> (gcd, lcm)
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            if a and b and b % a:
                g = gcd(a, b)
                diag[i], diag[j] = g, a * b // g
            elif a == 0 and b:
                diag[i], diag[j] = b, 0
    nz = sorted(d for d in diag if d)
    return nz + [0] * (k - len(nz))


@dataclass
class LatticeQuotient:
    """Normal forms in ``Z^ncols / L`` for a relation lattice ``L``.

    Columns are swept in ``order`` (default natural order), so the pivot
    columns are the earliest ones in that order; callers put the columns they
    want eliminated first.
    """

    ncols: int
    relations: list[SparseRow]
    order: list[int] | None = None
    pivot_rows: list[SparseRow] = field(init=False)
    pivot_cols: list[int] = field(init=False)

    def __post_init__(self) -> None:
        rows = [dict(r) for r in self.relations if r]
        piv = _hnf_sparse(rows, self.ncols, columns=self.order)
        self.pivot_rows = rows[: len(piv)]
        self.pivot_cols = piv

    @property
    def relation_rank(self) -> int:
        return len(self.pivot_cols)

    @property
    def rank(self) -> int:
        """Free rank of the quotient."""
        return self.ncols - self.relation_rank

    @property
    def unit_pivots(self) -> bool:
        return all(r[c] == 1 for r, c in zip(self.pivot_rows, self.pivot_cols))

    def free_columns(self) -> list[int]:
        """Columns without a pivot; a Z-basis of the quotient when every
        pivot is 1."""
        taken = set(self.pivot_cols)
        return [j for j in range(self.ncols) if j not in taken]

    def torsion(self) -> list[int]:
        """Invariant factors > 1 of the quotient."""
        if not self.pivot_rows:
            return []
        dense = _to_dense(self.pivot_rows, self.ncols)
        return [d for d in smith_normal_form(dense) if d > 1]

    def reduce(self, vec: SparseRow) -> SparseRow:
        """Canonical coset representative (pivot entries in [0, pivot))."""
        out = {j: v for j, v in vec.items() if v}
        for row, col in zip(self.pivot_rows, self.pivot_cols):
            v = out.get(col)
            if v is not None:
                _axpy(out, v // row[col], row)
        return out

    def contains(self, vec: SparseRow) -> bool:
        return not self.reduce(vec)

    def image_rank(self, vectors: Iterable[SparseRow]) -> int:
        """Rank of the image of ``vectors`` in the quotient."""
        rows = [dict(r) for r in self.pivot_rows]
        rows.extend(dict(v) for v in vectors if v)
        return len(_hnf_sparse(rows, self.ncols)) - self.relation_rank


# ---------------------------------------------------------------------------
# F2


@dataclass(frozen=True)
class F2Matrix:
    """Matrix over F2; row ``i`` is the int whose bit ``j`` is entry (i, j)."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    @classmethod
    def from_dense(cls, A: Sequence[Sequence[int]]) -> "F2Matrix":
        ncols = len(A[0]) if A else 0
        packed = tuple(sum(1 << j for j, v in enumerate(r) if v % 2) for r in A)
        return cls(len(A), ncols, packed)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    def to_dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def transpose(self) -> "F2Matrix":
        cols = tuple(
            sum(1 << i for i, r in enumerate(self.rows) if (r >> j) & 1)
            for j in range(self.ncols)
        )
        return F2Matrix(self.ncols, self.nrows, cols)

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= other.rows[j]
                r >>= 1
                j += 1
            out.append(acc)
        return F2Matrix(self.nrows, other.ncols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.rows)


def f2_echelon(rows: Iterable[int]) -> dict[int, int]:
    """Reduced echelon basis of the span of ``rows``, keyed by leading bit
    (highest set bit)."""
    basis: dict[int, int] = {}
    for r in rows:
        r = f2_reduce(r, basis)
        if r:
            lead = r.bit_length() - 1
            for k in list(basis):
                if (basis[k] >> lead) & 1:
                    basis[k] ^= r
            basis[lead] = r
    return basis


def f2_reduce(v: int, basis: dict[int, int]) -> int:
    """Reduce ``v`` against an echelon basis from :func:`f2_echelon`."""
    out = 0
    while v:
        lead = v.bit_length() - 1
        b = basis.get(lead)
        if b is None:
            out |= 1 << lead
            v ^= 1 << lead
        else:
            v ^= b
    return out


def f2_rank(A: F2Matrix) -> int:
    return len(f2_echelon(A.rows))


def f2_kernel_basis(A: F2Matrix) -> list[int]:
    """Basis of ``{x : A x = 0}``, each ``x`` packed as an int over the
    columns of ``A``."""
    basis = f2_echelon(A.rows)
    pivots = set(basis)
    out = []
    for free in range(A.ncols):
        if free in pivots:
            continue
        x = 1 << free
        for lead, row in basis.items():
            if (row >> free) & 1:
                x |= 1 << lead
        out.append(x)
    return out
