"""Systems of affine-linear forms and their complexity invariant.

Complexity is defined on the linear parts only; constants are carried but
ignored here.  The minimum-partition search enumerates valid subsets (the
distinguished form outside the subset's Q-span) and then solves minimum set
partition by dynamic programming over bitmasks.  Validity is downward
closed, which makes the DP sound.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactmath import INFINITY, IntMatrix, rank


@dataclass(frozen=True)
class LinearSystem:
    """Affine-linear map Z^d -> Z^t: integer matrix rows are the linear
    parts of the forms, ``constant`` is the image of 0."""

    matrix: IntMatrix
    constant: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(self.constant) != self.matrix.rows:
            raise ValueError("constant vector length must match row count")
        if self.labels is not None and len(self.labels) != self.matrix.rows:
            raise ValueError("one label per form")

    @property
    def num_forms(self) -> int:
        return self.matrix.rows

    @property
    def domain_dim(self) -> int:
        return self.matrix.cols

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], constant: Sequence[int] | None = None,
                  labels: Sequence[str] | None = None) -> "LinearSystem":
        M = IntMatrix.from_rows(rows)
        c = tuple(int(x) for x in (constant if constant is not None else [0] * M.rows))
        return cls(M, c, tuple(labels) if labels is not None else None)

    def form(self, i: int) -> tuple[int, ...]:
        """Linear part of the i-th form (0-based)."""
        return self.matrix.row(i)

    def apply(self, n: Sequence[int]) -> tuple[int, ...]:
        lin = self.matrix.apply(n)
        return tuple(a + c for a, c in zip(lin, self.constant))


def is_rational_multiple(f: Sequence[int], g: Sequence[int]) -> bool:
    """Is ``f = q * g`` for some rational q?

    Convention: the zero form is a rational multiple of every form.
    """
    if len(f) != len(g):
        raise ValueError("dimension mismatch")
    if all(x == 0 for x in f):
        return True
    k = next((i for i, x in enumerate(g) if x != 0), None)
    if k is None:
        return False
    # q = f[k] / g[k]; check f * g[k] == g * f[k]
    return all(a * g[k] == b * f[k] for a, b in zip(f, g))


def _in_span(rows: list[tuple[int, ...]], v: tuple[int, ...]) -> bool:
    if not rows:
        return all(x == 0 for x in v)
    base = IntMatrix.from_rows(rows)
    return rank(base) == rank(IntMatrix.from_rows(rows + [v]))


def i_complexity(sys: LinearSystem, i: int):
    """The i-complexity of the system at 0-based index ``i``.

    Returns ``(value, witness)`` where value is an integer or
    :data:`INFINITY`, and witness (for finite values) is a minimum
    partition of the other form indices as a tuple of frozensets.
    """
    t = sys.num_forms
    if not 0 <= i < t:
        raise ValueError("form index out of range")
    psi_i = sys.form(i)
    others = [j for j in range(t) if j != i]
    if all(x == 0 for x in psi_i):
        return INFINITY, None
    if any(is_rational_multiple(psi_i, sys.form(j)) for j in others):
        return INFINITY, None
    m = len(others)
    if m == 0:
        return 0, (frozenset(),)

    # valid[mask]: psi_i not in the Q-span of the selected forms.
    # Downward closure: any superset of an invalid mask is invalid.
    valid = [False] * (1 << m)
    valid[0] = True
    for mask in range(1, 1 << m):
        low = mask & (-mask)
        rest = mask ^ low
        if not valid[rest] or not valid[low]:
            if mask != low:
                continue
        sel = [sys.form(others[b]) for b in range(m) if mask >> b & 1]
        valid[mask] = not _in_span(sel, psi_i)

    full = (1 << m) - 1
    dp = [None] * (1 << m)
    choice = [0] * (1 << m)
    dp[0] = 0
    for mask in range(1, 1 << m):
        low = mask & (-mask)
        best = None
        sub = mask
        while sub:
            if sub & low and valid[sub] and dp[mask ^ sub] is not None:
                cand = dp[mask ^ sub] + 1
                if best is None or cand < best:
                    best = cand
                    choice[mask] = sub
            sub = (sub - 1) & mask
        dp[mask] = best
    # Lemma 1.6 guarantees feasibility once the rational-multiple check passed
    assert dp[full] is not None
    parts = []
    mask = full
    while mask:
        sub = choice[mask]
        parts.append(frozenset(others[b] for b in range(m) if sub >> b & 1))
        mask ^= sub
    return dp[full] - 1, tuple(parts)


@dataclass(frozen=True)
class ComplexityReport:
    """Per-index i-complexities, the overall maximum, and for each finite
    index one minimum partition of the remaining form indices."""

    per_index: tuple
    overall: object
    witness_partitions: tuple

    def is_finite(self) -> bool:
        return self.overall != INFINITY


def complexity(sys: LinearSystem) -> ComplexityReport:
    """Overall complexity: the largest of all i-complexities."""
    per = []
    wit = []
    for i in range(sys.num_forms):
        v, w = i_complexity(sys, i)
        per.append(v)
        wit.append(w)
    return ComplexityReport(tuple(per), max(per), tuple(wit))


def compose(sys: LinearSystem, T: IntMatrix) -> LinearSystem:
    """The system of the composite map (matrix product, constant kept)."""
    if T.rows != sys.domain_dim:
        raise ValueError("inner dimensions do not match")
    return LinearSystem(sys.matrix @ T, sys.constant, sys.labels)


def is_complexity_preserving(T: IntMatrix) -> bool:
    """A square integer map preserves complexity iff it has full rank."""
    if T.rows != T.cols:
        raise ValueError("square matrix expected")
    return rank(T) == T.rows
