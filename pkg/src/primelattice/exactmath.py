"""Exact integer/rational linear algebra: matrices over Z, Hermite normal
form, integer kernels, rank, and Q-span membership.

Everything here is exact.  Matrix entries are arbitrary-precision Python
integers, rational work uses ``fractions.Fraction``, and elimination is
fraction-free (Bareiss) so intermediate entries stay integral.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

#: Marker for an infinite index / infinite complexity.  Compares above every
#: integer, so ``max`` and ``>=`` behave as expected in monotonicity checks.
INFINITY = float("inf")


class NoLatticeError(ValueError):
    """A zero matrix or empty generating set was offered as a lattice."""


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"integer entry expected, got {x!r}")
    return x


@dataclass(frozen=True)
class IntMatrix:
    """Dense matrix over Z, stored row-major as nested tuples.

    Immutable; all operations return new matrices.  A matrix may have zero
    columns (the empty kernel basis) but always has at least one row.
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) == 0:
            raise ValueError("matrix needs at least one row")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged rows")
            for x in row:
                _as_int(x)

    # -- construction -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int | None = None) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        if not cols:
            if nrows is None:
                raise ValueError("empty column list needs an explicit row count")
            return cls(tuple(() for _ in range(nrows)))
        n = len(cols[0])
        return cls(tuple(tuple(c[i] for c in cols) for i in range(n)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    # -- shape and access ---------------------------------------------

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    # -- algebra ------------------------------------------------------

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(self.column(j) for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        ot = other.transpose() if other.cols else None
        out = []
        for r in self.entries:
            if ot is None:
                out.append(())
            else:
                out.append(tuple(sum(a * b for a, b in zip(r, c)) for c in ot.entries))
        return IntMatrix(tuple(out))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def det(self) -> int:
        """Determinant by Bareiss fraction-free elimination."""
        n = self.rows
        if self.cols != n:
            raise ValueError("determinant needs a square matrix")
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __str__(self) -> str:
        return "\n".join("[" + " ".join(str(x) for x in row) + "]" for row in self.entries)


# ---------------------------------------------------------------------------
# Hermite normal form (column style)
# ---------------------------------------------------------------------------

def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``M @ U == H``, ``U`` unimodular, pivots
    positive, entries left of a pivot in its row reduced modulo the pivot,
    and zero columns collected on the right.  Raises :class:`NoLatticeError`
    on the zero matrix (a zero matrix generates no lattice).
    """
    if M.cols == 0 or M.is_zero():
        raise NoLatticeError("no lattice")
    t, n = M.rows, M.cols
    cols = [list(M.column(j)) for j in range(n)]
    ucols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]

    def combine(j, k, q):
        # col_j -= q * col_k
        cj, ck = cols[j], cols[k]
        for i in range(t):
            cj[i] -= q * ck[i]
        uj, uk = ucols[j], ucols[k]
        for i in range(n):
            uj[i] -= q * uk[i]

    r = 0
    for i in range(t):
        if r == n:
            break
        # shrink the active columns at row i to a single nonzero entry in col r
        while True:
            nz = [j for j in range(r, n) if cols[j][i] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(cols[j][i]))
            if jmin != r:
                cols[r], cols[jmin] = cols[jmin], cols[r]
                ucols[r], ucols[jmin] = ucols[jmin], ucols[r]
            done = True
            for j in range(r + 1, n):
                if cols[j][i] != 0:
                    q = cols[j][i] // cols[r][i]
                    combine(j, r, q)
                    if cols[j][i] != 0:
                        done = False
            if done:
                break
        if cols[r][i] == 0:
            continue  # row has no pivot
        if cols[r][i] < 0:
            for k in range(t):
                cols[r][k] = -cols[r][k]
            for k in range(n):
                ucols[r][k] = -ucols[r][k]
        piv = cols[r][i]
        for j in range(r):
            q = cols[j][i] // piv
            if q:
                combine(j, r, q)
        r += 1

    H = IntMatrix.from_columns([tuple(c) for c in cols], nrows=t)
    U = IntMatrix.from_columns([tuple(c) for c in ucols], nrows=n)
    return H, U


def hnf_pivots(H: IntMatrix) -> list[tuple[int, int]]:
    """Pivot positions ``(row, col)`` of a column-style HNF matrix."""
    out = []
    for j in range(H.cols):
        col = H.column(j)
        for i, x in enumerate(col):
            if x != 0:
                out.append((i, j))
                break
    return out


def integer_kernel(M: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel ``{x : M x = 0}`` as matrix columns.

    The result may have zero columns when the kernel is trivial.
    """
    if M.is_zero():
        return IntMatrix.identity(M.cols)
    H, U = hnf(M)
    zero_cols = [j for j in range(H.cols) if all(x == 0 for x in H.column(j))]
    K = IntMatrix.from_columns([U.column(j) for j in zero_cols], nrows=M.cols)
    if K.cols == 0:
        return K
    KH, _ = hnf(K)  # canonical basis of the kernel lattice
    return KH


def rank(M: IntMatrix) -> int:
    """Rank over Q by Bareiss fraction-free elimination."""
    if M.cols == 0:
        return 0
    m = [list(row) for row in M.entries]
    nrows, ncols = M.rows, M.cols
    r = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == nrows:
            break
    return r


# ---------------------------------------------------------------------------
# Rational span membership
# ---------------------------------------------------------------------------

RationalVector = Sequence[Fraction | int]


def _frac_rank(vectors: list[Sequence[Fraction | int]]) -> int:
    if not vectors:
        return 0
    m = [[Fraction(x) for x in v] for v in vectors]
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def in_q_span(vs: Sequence[RationalVector], v: RationalVector) -> bool:
    """Is ``v`` a Q-linear combination of the vectors ``vs``?

    The empty family spans only the zero vector.
    """
    vecs = [tuple(Fraction(x) for x in w) for w in vs]
    target = tuple(Fraction(x) for x in v)
    for w in vecs:
        if len(w) != len(target):
            raise ValueError("dimension mismatch")
    if not vecs:
        return all(x == 0 for x in target)
    return _frac_rank(vecs) == _frac_rank(vecs + [target])
