"""Exact linear algebra over unbounded integers.

Determinants use fraction-free (Bareiss) elimination; positive definiteness
is decided by Sylvester's criterion on leading principal minors, which the
same elimination produces as pivots; the Smith normal form uses
smallest-pivot pivoting with full row/column reduction so that output is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence


class MatrixError(ValueError):
    """Invalid matrix input for an operation."""


@dataclass(frozen=True)
class IntMatrix:
    """Dense square matrix of (unbounded) integers."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows):
            raise MatrixError("matrix must be square and non-empty")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n))
                         for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n))
                         for i in range(n)))

    def is_symmetric(self) -> bool:
        return all(self.rows[i][j] == self.rows[j][i]
                   for i in range(self.dim) for j in range(i))

    def minor_matrix(self, i: int, j: int) -> "IntMatrix":
        """Submatrix with row i and column j removed."""
        return IntMatrix(tuple(
            tuple(x for cj, x in enumerate(r) if cj != j)
            for ri, r in enumerate(self.rows) if ri != i))

    def submatrix(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(self.rows[i][j] for j in idx) for i in idx))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        n = self.dim
        if other.dim != n:
            raise MatrixError("dimension mismatch")
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.rows))

    def mul_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.dim:
            raise MatrixError("dimension mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def scaled(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * x for x in r) for r in self.rows))


def determinant(m: IntMatrix) -> int:
    """Exact determinant via two-step fraction-free elimination."""
    n = m.dim
    r = m.rows
    if n == 1:
        return r[0][0]
    if n == 2:
        return r[0][0] * r[1][1] - r[0][1] * r[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g2, h, i) = r
        return a * (e * i - f * h) - b * (d * i - f * g2) + c * (d * h - e * g2)
    a = [list(row) for row in r]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i2 in range(k + 1, n):
                if a[i2][k] != 0:
                    a[k], a[i2] = a[i2], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i2 in range(k + 1, n):
            aik = a[i2][k]
            row_i = a[i2]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def adjugate(m: IntMatrix) -> IntMatrix:
    """Adjugate M* with M M* = det(M) I; entry (i,j) is the (j,i) cofactor."""
    n = m.dim
    if n == 1:
        return IntMatrix(((1,),))
    out = tuple(
        tuple((-1) ** (i + j) * determinant(m.minor_matrix(j, i))
              for j in range(n))
        for i in range(n))
    result = IntMatrix(out)
    if __debug__ and n <= 6:
        d = determinant(m)
        assert m.mul(result) == IntMatrix.identity(n).scaled(d)
    return result


def adjugate_row(m: IntMatrix, i: int) -> tuple[int, ...]:
    """Row i of the adjugate, without the full n^2 cofactor sweep."""
    n = m.dim
    if n == 1:
        return (1,)
    return tuple((-1) ** (i + j) * determinant(m.minor_matrix(j, i))
                 for j in range(n))


@dataclass(frozen=True)
class InvariantFactors:
    """Invariant factors f_1 | f_2 | ... | f_rank of an integer matrix."""

    rank: int
    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.factors) != self.rank:
            raise MatrixError("factor count must equal the rank")
        for f in self.factors:
            if f <= 0:
                raise MatrixError("invariant factors must be positive")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise MatrixError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> int:
        """Order of the associated torsion group (product of the factors)."""
        out = 1
        for f in self.factors:
            out *= f
        return out

    def nontrivial(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f != 1)


def is_cyclic(factors: InvariantFactors) -> bool:
    """Cyclic iff the rank is at most 1 or the next-to-last factor is 1."""
    return factors.rank <= 1 or factors.factors[-2] == 1


def smith_normal_form(m: IntMatrix) -> InvariantFactors:
    """Invariant factors via smallest-pivot row/column reduction."""
    n = m.dim
    a = [list(row) for row in m.rows]
    factors: list[int] = []
    t = 0
    while t < n:
        pr = pc = -1
        best = None
        for i in range(t, n):
            for j in range(t, n):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best, pr, pc = v, i, j
        if best is None:
            break
        a[t], a[pr] = a[pr], a[t]
        for row in a:
            row[t], row[pc] = row[pc], row[t]
        while True:
            # shrink the pivot until it divides its whole row and column
            pivot = a[t][t]
            done = True
            for i in range(t + 1, n):
                if a[i][t] % pivot:
                    q = a[i][t] // pivot
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
                    a[t], a[i] = a[i], a[t]
                    done = False
                    break
            if not done:
                continue
            for j in range(t + 1, n):
                if a[t][j] % pivot:
                    q = a[t][j] // pivot
                    for i in range(t, n):
                        a[i][j] -= q * a[i][t]
                    for i in range(t, n):
                        a[i][t], a[i][j] = a[i][j], a[i][t]
                    done = False
                    break
            if not done:
                continue
            for i in range(t + 1, n):
                q = a[i][t] // pivot
                if q:
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
            for j in range(t + 1, n):
                q = a[t][j] // pivot
                if q:
                    for i in range(t, n):
                        a[i][j] -= q * a[i][t]
            offender = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if a[i][j] % pivot:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(t, n):
                a[t][j] += a[offender][j]
        factors.append(abs(a[t][t]))
        t += 1
    return InvariantFactors(len(factors), tuple(factors))


def rank(m: IntMatrix) -> int:
    """Rank over the rationals."""
    a = [[Fraction(x) for x in row] for row in m.rows]
    n = m.dim
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][col]
        for i in range(r + 1, n):
            if a[i][col]:
                f = a[i][col] / inv
                for j in range(col, n):
                    a[i][j] -= f * a[r][j]
        r += 1
    return r


def leading_principal_minors(m: IntMatrix) -> list[int] | None:
    """The n leading principal minors, or None if a zero pivot stops Bareiss.

    A zero intermediate pivot means some leading minor vanishes, which
    already settles the definiteness questions asked here.
    """
    n = m.dim
    a = [list(row) for row in m.rows]
    minors: list[int] = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot == 0:
            return None
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot
    return minors


def is_positive_definite(m: IntMatrix) -> bool:
    """Sylvester's criterion: all leading principal minors positive."""
    if not m.is_symmetric():
        raise MatrixError("positive definiteness is only tested on symmetric matrices")
    n = m.dim
    a = [list(row) for row in m.rows]
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        if pivot <= 0:
            return False
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot
    return True


def positive_kernel_vector(m: IntMatrix) -> tuple[int, ...] | None:
    """The coprime strictly positive kernel vector, when rank is n-1.

    Returns None when the rank differs from n-1 or the kernel line has no
    strictly positive representative.  The sign is normalised so the first
    non-zero entry is positive.
    """
    if not m.is_symmetric():
        raise MatrixError("kernel extraction expects a symmetric matrix")
    n = m.dim
    a = [[Fraction(x) for x in row] for row in m.rows]
    pivot_cols: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][col]
        for i in range(n):
            if i != r and a[i][col]:
                f = a[i][col] / inv
                for j in range(col, n):
                    a[i][j] -= f * a[r][j]
        pivot_cols.append(col)
        r += 1
    if r != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivot_cols)
    x = [Fraction(0)] * n
    x[free] = Fraction(1)
    for row_idx, col in enumerate(pivot_cols):
        x[col] = -a[row_idx][free] / a[row_idx][col]
    denom_lcm = 1
    for v in x:
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = [int(v * denom_lcm) for v in x]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    first = next((v for v in ints if v != 0), 0)
    if first < 0:
        ints = [-v for v in ints]
    if all(v > 0 for v in ints):
        return tuple(ints)
    return None


def is_psd_rank_nminus1(m: IntMatrix, connected_mg_form: bool = False) -> bool:
    """Positive semi-definite of rank n-1.

    With ``connected_mg_form`` the caller guarantees m = Diag(a) - A for a
    connected multigraph, where determinant zero plus a strictly positive
    kernel vector already implies the property.  The general fallback checks
    every principal minor (exponential; fine at the sizes used here).
    """
    if not m.is_symmetric():
        raise MatrixError("semi-definiteness is only tested on symmetric matrices")
    if connected_mg_form:
        return determinant(m) == 0 and positive_kernel_vector(m) is not None
    n = m.dim
    if rank(m) != n - 1:
        return False
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            if determinant(m.submatrix(idx)) < 0:
                return False
    return True
