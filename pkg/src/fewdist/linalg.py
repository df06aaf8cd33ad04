"""Dense symmetric matrix kernels: rank, nullity at an eigenvalue, PSD test.

Two regimes.  Exact matrices (rational entries) are decided by
fraction-free (Bareiss-style) Gaussian elimination on an integer scaling
of the matrix, so every rank, nullity and positive-semidefiniteness
answer is a certificate, not an approximation.  Floating matrices use a
symmetric eigenvalue decomposition and count eigenvalues against a
single tolerance; this keeps rank(m) + nullity_at(m, 0) = order exactly,
which pivot counting cannot guarantee on indefinite matrices.

All functions are pure; matrices are immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from fewdist.errors import PreconditionError
from fewdist.numbers import DEFAULT_TOLERANCE, EXACT, FLOATING, Scalar, is_exact_scalar


@dataclass(frozen=True)
class SymMatrix:
    """A symmetric square matrix tagged with its numeric regime."""

    rows: tuple[tuple[Scalar, ...], ...]
    regime: str
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise PreconditionError("matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                a, b = self.rows[i][j], self.rows[j][i]
                if self.regime == EXACT:
                    if a != b:
                        raise PreconditionError(f"asymmetric entries at ({i},{j})")
                elif abs(a - b) > self.tolerance:
                    raise PreconditionError(f"asymmetric entries at ({i},{j})")

    @property
    def order(self) -> int:
        return len(self.rows)

    def shifted(self, lam: Scalar) -> "SymMatrix":
        """Return self - lam*I in the same regime."""
        n = self.order
        rows = tuple(
            tuple(self.rows[i][j] - lam if i == j else self.rows[i][j] for j in range(n))
            for i in range(n)
        )
        return SymMatrix(rows, self.regime, self.tolerance)


def exact_matrix(rows) -> SymMatrix:
    return SymMatrix(tuple(tuple(Fraction(x) for x in row) for row in rows), EXACT)


def floating_matrix(rows, tolerance: float = DEFAULT_TOLERANCE) -> SymMatrix:
    return SymMatrix(tuple(tuple(float(x) for x in row) for row in rows), FLOATING, tolerance)


# ---------------------------------------------------------------------------
# integer scaling
# ---------------------------------------------------------------------------

def _to_int_rows(rows) -> list[list[int]]:
    """Scale a rational matrix by the lcm of denominators, then strip content.

    Scaling by a positive constant preserves rank, the kernel of m - 0*I,
    and positive semidefiniteness, which is all the exact kernels need.
    """
    denom = 1
    for row in rows:
        for x in row:
            denom = lcm(denom, Fraction(x).denominator)
    ints = [[int(x * denom) for x in row] for row in rows]
    content = 0
    for row in ints:
        for x in row:
            content = gcd(content, x)
    if content > 1:
        ints = [[x // content for x in row] for row in ints]
    return ints


# ---------------------------------------------------------------------------
# exact kernels (fraction-free elimination)
# ---------------------------------------------------------------------------

def _int_rank(m: list[list[int]]) -> int:
    """Rank by fraction-free Gaussian elimination with row pivoting."""
    n_rows = len(m)
    if n_rows == 0:
        return 0
    n_cols = len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        piv = next((r for r in range(rank, n_rows) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        top = m[rank]
        for r in range(rank + 1, n_rows):
            row = m[r]
            f = row[col]
            if f:
                for c in range(col + 1, n_cols):
                    row[c] = (p * row[c] - f * top[c]) // prev
            elif prev != p:
                for c in range(col + 1, n_cols):
                    row[c] = (p * row[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank


def _int_is_psd(m: list[list[int]]) -> bool:
    """PSD test by fraction-free symmetric elimination with diagonal pivoting.

    At each step the trailing block is a positive multiple of the true
    Schur complement, so diagonal sign tests are exact.  A block with an
    all-zero diagonal is PSD iff it is the zero block.
    """
    n = len(m)
    prev = 1
    k = 0
    while k < n:
        if any(m[i][i] < 0 for i in range(k, n)):
            return False
        piv = next((i for i in range(k, n) if m[i][i] > 0), None)
        if piv is None:
            return all(m[i][j] == 0 for i in range(k, n) for j in range(i + 1, n))
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            for row in m:
                row[k], row[piv] = row[piv], row[k]
        p = m[k][k]
        top = m[k]
        for i in range(k + 1, n):
            row = m[i]
            f = row[k]
            if f:
                for j in range(k + 1, n):
                    row[j] = (p * row[j] - f * top[j]) // prev
            elif prev != p:
                for j in range(k + 1, n):
                    row[j] = (p * row[j]) // prev
        prev = p
        k += 1
    return True


# ---------------------------------------------------------------------------
# floating kernels
# ---------------------------------------------------------------------------

def _eigenvalues(m: SymMatrix) -> np.ndarray:
    a = np.array(m.rows, dtype=float)
    a = (a + a.T) / 2.0
    return np.linalg.eigvalsh(a)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def rank(m: SymMatrix) -> int:
    """Linear-algebraic rank (eigenvalue count above tolerance when floating)."""
    if m.order == 0:
        return 0
    if m.regime == EXACT:
        return _int_rank(_to_int_rows(m.rows))
    eigs = _eigenvalues(m)
    return int(np.count_nonzero(np.abs(eigs) > m.tolerance))


def nullity_at(m: SymMatrix, lam: Scalar) -> int:
    """dim ker(m - lam*I): the multiplicity of lam as an eigenvalue, else 0."""
    if m.regime == EXACT:
        if not is_exact_scalar(lam):
            raise PreconditionError("exact matrix requires an exact eigenvalue probe")
        shifted = m.shifted(Fraction(lam))
        return m.order - _int_rank(_to_int_rows(shifted.rows))
    eigs = _eigenvalues(m)
    return int(np.count_nonzero(np.abs(eigs - float(lam)) <= m.tolerance))


def is_psd(m: SymMatrix) -> bool:
    """True iff m is positive semidefinite (least eigenvalue >= -tolerance when floating)."""
    if m.order == 0:
        return True
    if m.regime == EXACT:
        return _int_is_psd(_to_int_rows(m.rows))
    eigs = _eigenvalues(m)
    return bool(eigs[0] >= -m.tolerance)
