"""Immutable dense square matrices and the structural operations on them.

Entries live on one of two backends (see :mod:`diagforge.scalars`): exact
rational entries, or float/complex entries.  Every operation is pure; the
inputs are never modified.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .scalars import (
    ComplexRational,
    coerce_scalars,
    is_real,
    re_part,
    scalar_abs,
    scalar_family,
    to_float,
)


def normalize_vector(values: Sequence, family: Optional[str] = None) -> tuple:
    """Normalize a vector of scalars onto one backend.

    With ``family`` given ('exact' or 'float'), integers adapt to it and a
    contradicting entry raises.  Without it, the vector's own family wins
    (all-int vectors stay exact).
    """
    own = scalar_family(values)
    if family is None:
        family = "exact" if own == "int" else own
    elif own != "int" and own != family:
        raise TypeError(f"{own} vector used in {family} context; convert explicitly")
    return tuple(coerce_scalars(values, family))


class DenseMatrix:
    """Square matrix with immutable entries on a single scalar backend."""

    __slots__ = ("n", "rows", "exact")

    def __init__(self, rows):
        data = [list(r) for r in rows]
        n = len(data)
        if n == 0:
            raise ValueError("matrix must have at least one row")
        for r in data:
            if len(r) != n:
                raise ValueError("matrix must be square")
        family = scalar_family(x for r in data for x in r)
        if family == "int":
            family = "exact"
        normalized = [coerce_scalars(r, family) for r in data]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(tuple(r) for r in normalized))
        object.__setattr__(self, "exact", family == "exact")

    def __setattr__(self, name, value):
        raise AttributeError("DenseMatrix is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> "DenseMatrix":
        one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, exact: bool = True) -> "DenseMatrix":
        zero = Fraction(0) if exact else 0.0
        return cls([[zero] * n for _ in range(n)])

    @classmethod
    def diagonal_matrix(cls, entries: Sequence) -> "DenseMatrix":
        d = normalize_vector(entries)
        zero = Fraction(0) if scalar_family(d) != "float" else 0.0
        n = len(d)
        return cls([[d[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_numpy(cls, arr: np.ndarray) -> "DenseMatrix":
        return cls([[x for x in row] for row in arr.tolist()])

    # -- access -------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def diagonal(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(self.n))

    def trace(self):
        t = self.rows[0][0]
        for i in range(1, self.n):
            t = t + self.rows[i][i]
        return t

    def to_lists(self) -> list:
        return [list(r) for r in self.rows]

    # -- conversions ----------------------------------------------------

    def to_float(self) -> "DenseMatrix":
        if not self.exact:
            return self
        return DenseMatrix([[to_float(x) for x in r] for r in self.rows])

    def to_numpy(self) -> np.ndarray:
        flat = [to_float(x) for r in self.rows for x in r]
        dtype = complex if any(isinstance(x, complex) for x in flat) else float
        arr = np.array(flat, dtype=dtype)
        return arr.reshape(self.n, self.n)

    # -- algebra --------------------------------------------------------

    def _require_same_backend(self, other: "DenseMatrix"):
        if self.exact != other.exact:
            raise TypeError("mixed exact/float matrices; convert explicitly")
        if self.n != other.n:
            raise ValueError("dimension mismatch")

    def __add__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        self._require_same_backend(other)
        return DenseMatrix(
            [
                [self.rows[i][j] + other.rows[i][j] for j in range(self.n)]
                for i in range(self.n)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        self._require_same_backend(other)
        return DenseMatrix(
            [
                [self.rows[i][j] - other.rows[i][j] for j in range(self.n)]
                for i in range(self.n)
            ]
        )

    def __matmul__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        self._require_same_backend(other)
        n = self.n
        out = []
        for i in range(n):
            ri = self.rows[i]
            out.append(
                [
                    sum(ri[k] * other.rows[k][j] for k in range(n))
                    for j in range(n)
                ]
            )
        return DenseMatrix(out)

    def matvec(self, v: Sequence) -> tuple:
        x = normalize_vector(v, "exact" if self.exact else "float")
        if len(x) != self.n:
            raise ValueError("dimension mismatch")
        return tuple(sum(r[k] * x[k] for k in range(self.n)) for r in self.rows)

    def scale(self, s) -> "DenseMatrix":
        (s,) = normalize_vector([s], "exact" if self.exact else "float")
        return DenseMatrix([[s * x for x in r] for r in self.rows])

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(
            [[self.rows[j][i] for j in range(self.n)] for i in range(self.n)]
        )

    # -- predicates -----------------------------------------------------

    def is_diagonal(self) -> bool:
        return all(
            not self.rows[i][j]
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )

    def is_scalar_matrix(self, tol: float = 0.0) -> bool:
        """True when the matrix is alpha*I (within tol off the exact backend)."""
        d0 = self.rows[0][0]
        if self.exact or tol == 0.0:
            return self.is_diagonal() and all(x == d0 for x in self.diagonal())
        off = max(
            (scalar_abs(self.rows[i][j]) for i in range(self.n) for j in range(self.n) if i != j),
            default=0.0,
        )
        spread = max(scalar_abs(x - d0) for x in self.diagonal())
        return off <= tol and spread <= tol

    def max_abs(self) -> float:
        return max(scalar_abs(x) for r in self.rows for x in r)

    def min_real_entry(self):
        """Smallest real part over all entries (entrywise bound helper)."""
        return min(re_part(x) for r in self.rows for x in r)

    def is_real(self) -> bool:
        return all(is_real(x) for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.exact == other.exact and self.rows == other.rows

    def __hash__(self):
        return hash((self.exact, self.rows))

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"DenseMatrix({self.n}x{self.n} {kind})"


# -- structural operations ---------------------------------------------


def rank_one_add(A: DenseMatrix, v: Sequence, q: Sequence) -> DenseMatrix:
    """Return A + v q^T (outer-product update)."""
    fam = "exact" if A.exact else "float"
    vv = normalize_vector(v, fam)
    qq = normalize_vector(q, fam)
    if len(vv) != A.n or len(qq) != A.n:
        raise ValueError("dimension mismatch")
    return DenseMatrix(
        [
            [A.rows[i][j] + vv[i] * qq[j] for j in range(A.n)]
            for i in range(A.n)
        ]
    )


def diag_similarity(A: DenseMatrix, d: Sequence, zero_tol: float = 1e-10) -> DenseMatrix:
    """Return D^{-1} A D for D = diag(d).

    Entries of d must be nonzero; on the float backend, |d_i| must exceed
    zero_tol * max|d_i|.  The diagonal of A is preserved entry for entry
    (the i==i ratio is taken as exactly one).
    """
    fam = "exact" if A.exact else "float"
    dd = normalize_vector(d, fam)
    if len(dd) != A.n:
        raise ValueError("dimension mismatch")
    if A.exact:
        if any(not x for x in dd):
            raise ValueError("zero scale entry in diagonal similarity")
    else:
        dmax = max(scalar_abs(x) for x in dd)
        if dmax == 0.0 or any(scalar_abs(x) <= zero_tol * dmax for x in dd):
            raise ValueError("near-zero scale entry in diagonal similarity")
    out = []
    for i in range(A.n):
        row = []
        for j in range(A.n):
            if i == j:
                row.append(A.rows[i][j])
            else:
                row.append(A.rows[i][j] * (dd[j] / dd[i]))
        out.append(row)
    return DenseMatrix(out)


def permute_similarity(A: DenseMatrix, perm: Sequence[int]) -> DenseMatrix:
    """Return P^T A P, i.e. entry (i, j) becomes A[perm[i]][perm[j]].

    ``perm`` is 0-based and must be a bijection on range(n).  The diagonal
    of the result reads A[perm[0]][perm[0]], A[perm[1]][perm[1]], ...
    """
    p = list(perm)
    if sorted(p) != list(range(A.n)):
        raise ValueError("perm must be a permutation of range(n)")
    return DenseMatrix([[A.rows[p[i]][p[j]] for j in range(A.n)] for i in range(A.n)])


def row_sums(A: DenseMatrix) -> tuple:
    return tuple(sum(r) for r in A.rows)


def is_constant_row_sum(A: DenseMatrix, tol: float = 1e-9):
    """Return the common row sum when all rows agree, else None.

    Exact backend: agreement must be exact and ``tol`` is ignored.  Float
    backend: the maximum deviation from the mean row sum must be at most
    ``tol * max(1, |mean|)``; the mean is returned.
    """
    sums = row_sums(A)
    if A.exact:
        alpha = sums[0]
        return alpha if all(s == alpha for s in sums) else None
    mean = sum(sums) / A.n
    dev = max(scalar_abs(s - mean) for s in sums)
    if dev <= tol * max(1.0, scalar_abs(mean)):
        return mean
    return None


def exact_nullspace(A: DenseMatrix) -> list:
    """Basis of the nullspace of an exact-backend matrix.

    Gauss-Jordan elimination over the rational (or complex rational)
    field.  Returns a list of vectors (tuples); empty when A is regular.
    """
    if not A.exact:
        raise TypeError("exact_nullspace requires the exact backend")
    n = A.n
    M = [list(r) for r in A.rows]
    pivot_of_col: dict[int, int] = {}
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(n):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [M[i][j] - f * M[r][j] for j in range(n)]
        pivot_of_col[c] = r
        r += 1
    basis = []
    free_cols = [c for c in range(n) if c not in pivot_of_col]
    for f in free_cols:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for c, pr in pivot_of_col.items():
            x[c] = -M[pr][f]
        basis.append(tuple(x))
    return basis
