"""Empirical verification: average the tensor von Mangoldt weight over
lattice or system points in a convex body and compare against the truncated
singular series.

Bodies are boxes, optionally cut by rational half-spaces.  Enumeration
scans the bounding box with exact integer inequality filtering; convexity
makes the feasible set an interval in the innermost coordinate, so point
counts never require materializing points.  Weighted sums are accumulated
per fixed-size chunk and combined with ``math.fsum``, so results are
deterministic and reassociation error stays below 1e-12 relative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Callable, Iterator, Sequence

import numpy as np

from .forms import LinearSystem
from .lattice import AffineLattice, hnf_pivots
from .localfactors import SeriesReport, singular_series
from .mangoldt import MangoldtTable, sieve

CHUNK = 1 << 16


class EmptyBodyError(ValueError):
    """The body contains no integer points of the instance."""


@dataclass(frozen=True)
class ConvexBody:
    """Box [lo_i, hi_i] per axis, optionally intersected with half-spaces
    ``<c, x> <= b``.  Rational half-space data is cleared to integers at
    construction, so filtering is exact."""

    box: tuple[tuple[int, int], ...]
    halfspaces: tuple[tuple[tuple[int, ...], int], ...] = ()

    def __post_init__(self):
        for lo, hi in self.box:
            if lo > hi:
                raise ValueError("empty box interval")
        for coeffs, _ in self.halfspaces:
            if len(coeffs) != self.dimension:
                raise ValueError("half-space dimension mismatch")

    @property
    def dimension(self) -> int:
        return len(self.box)

    @classmethod
    def from_box(cls, bounds: Sequence[Sequence[int]]) -> "ConvexBody":
        return cls(tuple((int(lo), int(hi)) for lo, hi in bounds))

    @classmethod
    def with_halfspaces(
        cls,
        bounds: Sequence[Sequence[int]],
        halfspaces: Sequence[tuple[Sequence[Fraction | int], Fraction | int]],
    ) -> "ConvexBody":
        cleared = []
        for coeffs, b in halfspaces:
            fr = [Fraction(c) for c in coeffs] + [Fraction(b)]
            mult = math.lcm(*(f.denominator for f in fr))
            ints = [int(f * mult) for f in fr]
            cleared.append((tuple(ints[:-1]), ints[-1]))
        return cls(tuple((int(lo), int(hi)) for lo, hi in bounds), tuple(cleared))

    @classmethod
    def simplex(cls, d: int, total: int, low: int = 1) -> "ConvexBody":
        """Positivity simplex: x_i >= low, sum x_i <= total."""
        return cls(
            tuple((low, total - (d - 1) * low) for _ in range(d)),
            (((1,) * d, total),),
        )

    def contains(self, x: Sequence[int]) -> bool:
        for (lo, hi), v in zip(self.box, x):
            if not lo <= v <= hi:
                return False
        return all(
            sum(c * v for c, v in zip(coeffs, x)) <= b for coeffs, b in self.halfspaces
        )


def enumerate_points(K: ConvexBody) -> Iterator[tuple[int, ...]]:
    """All integer points of the body, lexicographic, each exactly once."""
    ranges = [range(lo, hi + 1) for lo, hi in K.box]
    for x in iproduct(*ranges):
        if all(sum(c * v for c, v in zip(coeffs, x)) <= b for coeffs, b in K.halfspaces):
            yield x


@dataclass(frozen=True)
class VerificationReport:
    """One empirical-vs-predicted comparison."""

    description: str
    scale: int
    point_count: int
    empirical_mean: float
    predicted: float
    relative_error: float
    cutoff: int
    prime_point_count: int
    series: SeriesReport | None = None
    notes: str = ""

    def line(self) -> str:
        return (
            f"{self.description}\tN={self.scale}\tpoints={self.point_count}\t"
            f"empirical={self.empirical_mean:.6f}\tpredicted={self.predicted:.6f}\t"
            f"rel_error={self.relative_error:.4%}\tprime_points={self.prime_point_count}"
        )


def _coordinate_ranges(A, c: Sequence[int], K: ConvexBody) -> tuple[int, int]:
    """Conservative [min, max] over all output coordinates on the box."""
    lo_all, hi_all = c[0], c[0]
    first = True
    for i in range(A.rows):
        lo = hi = c[i]
        for j in range(A.cols):
            a = A.entries[i][j]
            blo, bhi = K.box[j]
            lo += min(a * blo, a * bhi)
            hi += max(a * blo, a * bhi)
        if first:
            lo_all, hi_all, first = lo, hi, False
        else:
            lo_all, hi_all = min(lo_all, lo), max(hi_all, hi)
    return lo_all, hi_all


def _scan(A, c: Sequence[int], K: ConvexBody, table: MangoldtTable,
          chunk: int = CHUNK) -> tuple[int, float, int]:
    """Core scan: for every x in K count it, and accumulate the product of
    Lambda over the coordinates of ``c + A x``.

    Returns (point_count, weighted_sum, prime_point_count).  The last box
    axis is vectorized; rows of A not involving it contribute a scalar
    factor per outer assignment, and a zero factor skips the inner work
    while still counting points exactly (the inner feasible set is an
    interval by convexity).
    """
    d = K.dimension
    if A.cols != d:
        raise ValueError("body dimension does not match the domain")
    inner = d - 1
    outer_ranges = [range(lo, hi + 1) for lo, hi in K.box[:inner]]
    ilo_box, ihi_box = K.box[inner]
    const_rows = [i for i in range(A.rows) if A.entries[i][inner] == 0]
    var_rows = [i for i in range(A.rows) if A.entries[i][inner] != 0]

    point_count = 0
    prime_points = 0
    chunk_sums: list[float] = []
    for outer in iproduct(*outer_ranges):
        ilo, ihi = ilo_box, ihi_box
        feasible = True
        for coeffs, b in K.halfspaces:
            resid = b - sum(coeffs[j] * outer[j] for j in range(inner))
            w = coeffs[inner]
            if w == 0:
                if resid < 0:
                    feasible = False
                    break
            elif w > 0:
                ihi = min(ihi, resid // w)
            else:
                # w*x <= resid with w < 0  =>  x >= resid/w, so ceil it
                ilo = max(ilo, -((-resid) // w))
        if not feasible or ilo > ihi:
            continue
        npts = ihi - ilo + 1
        point_count += npts

        partial = 1.0
        outer_prime = True
        for i in const_rows:
            v = c[i] + sum(A.entries[i][j] * outer[j] for j in range(inner))
            lam = table.mangoldt(v)
            if lam == 0.0:
                partial = 0.0
                break
            partial *= lam
            outer_prime = outer_prime and table.is_prime(v)
        if partial == 0.0:
            continue

        bases = [
            c[i] + sum(A.entries[i][j] * outer[j] for j in range(inner))
            for i in var_rows
        ]
        coefs = [A.entries[i][inner] for i in var_rows]
        for start in range(ilo, ihi + 1, chunk):
            stop = min(start + chunk - 1, ihi)
            xs = np.arange(start, stop + 1, dtype=np.int64)
            prod = None
            kmask = None
            for base, coef in zip(bases, coefs):
                vals = base + coef * xs
                lam = table.lam_array(vals)
                prod = lam if prod is None else prod * lam
                if outer_prime:
                    k1 = table.k_array(vals) == 1
                    kmask = k1 if kmask is None else kmask & k1
            if prod is None:
                chunk_sums.append(partial * xs.size)
            else:
                chunk_sums.append(partial * float(np.sum(prod)))
            if outer_prime and kmask is not None:
                prime_points += int(np.count_nonzero(kmask))
            elif outer_prime and kmask is None:
                prime_points += xs.size
    return point_count, math.fsum(chunk_sums), prime_points


def dickson_average_system(
    sys: LinearSystem,
    K: ConvexBody,
    series: SeriesReport | AffineLattice | None = None,
    cutoff: int = 10 ** 4,
    table: MangoldtTable | None = None,
    chunk: int = CHUNK,
    description: str = "system average",
    scale: int | None = None,
) -> VerificationReport:
    """Average Lambda-tensor of ``a + Psi(n)`` over the integer points of K
    and compare with the truncated singular series of the image translate.

    ``series`` may be a precomputed :class:`SeriesReport`, an affine
    lattice to take the series of, or None to use ``a + Psi(Z^d)``.
    """
    from .lattice import from_matrix_image

    if K.dimension != sys.domain_dim:
        raise ValueError("body dimension does not match the system domain")
    lo, hi = _coordinate_ranges(sys.matrix, sys.constant, K)
    if table is None:
        table = sieve(lo, hi)
    count, total, prime_points = _scan(sys.matrix, sys.constant, K, table, chunk)
    if count == 0:
        raise EmptyBodyError("no integer points of the body")
    if isinstance(series, SeriesReport):
        rep = series
    else:
        target = series if isinstance(series, AffineLattice) else AffineLattice(
            sys.constant, from_matrix_image(sys.matrix))
        rep = singular_series(target, cutoff)
    predicted = float(rep.partial_product)
    empirical = total / count
    rel = abs(empirical - predicted) / predicted if predicted > 0 else math.inf
    if scale is None:
        scale = max(abs(b) for lohi in K.box for b in lohi)
    return VerificationReport(
        description, scale, count, empirical, predicted, rel,
        rep.cutoff, prime_points, rep,
    )


def _preimage_body(Laff: AffineLattice, K: ConvexBody) -> ConvexBody:
    """Rational preimage of K under the generator parametrization, as a
    bounding box (from the HNF pivot structure, by interval arithmetic)
    plus the transported box and half-space constraints."""
    G = Laff.lattice.generators
    base = Laff.base
    r = Laff.lattice.rank
    pivots = hnf_pivots(G)
    intervals: list[tuple[int, int]] = []
    for k, (i, j) in enumerate(pivots):
        lo_k, hi_k = K.box[i]
        lo_res = lo_k - base[i]
        hi_res = hi_k - base[i]
        for jj in range(k):
            a = G.entries[i][jj]
            plo, phi = intervals[jj]
            lo_res -= max(a * plo, a * phi)
            hi_res -= min(a * plo, a * phi)
        g = G.entries[i][j]
        if g > 0:
            intervals.append((math.ceil(Fraction(lo_res, g)), math.floor(Fraction(hi_res, g))))
        else:
            intervals.append((math.ceil(Fraction(hi_res, g)), math.floor(Fraction(lo_res, g))))
        if intervals[-1][0] > intervals[-1][1]:
            raise EmptyBodyError("no lattice points in the body")
    halfspaces = []
    for i in range(Laff.ambient_dim):
        row = tuple(G.entries[i][j] for j in range(r))
        lo_i, hi_i = K.box[i]
        halfspaces.append((row, hi_i - base[i]))
        halfspaces.append((tuple(-x for x in row), base[i] - lo_i))
    for coeffs, b in K.halfspaces:
        row = tuple(
            sum(coeffs[i] * G.entries[i][j] for i in range(Laff.ambient_dim))
            for j in range(r)
        )
        shift = sum(coeffs[i] * base[i] for i in range(Laff.ambient_dim))
        halfspaces.append((row, b - shift))
    return ConvexBody(tuple(intervals), tuple(halfspaces))


def dickson_average_lattice(
    Laff: AffineLattice,
    K: ConvexBody,
    series: SeriesReport | None = None,
    cutoff: int = 10 ** 4,
    table: MangoldtTable | None = None,
    chunk: int = CHUNK,
    description: str = "lattice average",
    scale: int | None = None,
) -> VerificationReport:
    """Average Lambda-tensor over the points of the affine lattice inside K.

    Parametrizes the lattice by its HNF generators and delegates to the
    system scan on the preimage body; the parametrization is injective, so
    the point count equals the number of lattice points in K.
    """
    if K.dimension != Laff.ambient_dim:
        raise ValueError("body dimension does not match the ambient space")
    KX = _preimage_body(Laff, K)
    param = LinearSystem(Laff.lattice.generators, Laff.base)
    rep = series if series is not None else singular_series(Laff, cutoff)
    return dickson_average_system(
        param, KX, series=rep, table=table, chunk=chunk,
        description=description, scale=scale,
    )


def convergence_sweep(
    instance: Callable[[int], VerificationReport], N_list: Sequence[int]
) -> list[VerificationReport]:
    """Run one verification per scale N (ascending) and collect reports."""
    if list(N_list) != sorted(N_list):
        raise ValueError("scales must be ascending")
    return [instance(N) for N in N_list]


def reports_to_tsv(reports: Sequence[VerificationReport]) -> str:
    """One row per report: N, point count, empirical, predicted, rel error."""
    lines = ["N\tpoint_count\tempirical\tpredicted\trel_error"]
    for r in reports:
        lines.append(
            f"{r.scale}\t{r.point_count}\t{r.empirical_mean:.12g}\t"
            f"{r.predicted:.12g}\t{r.relative_error:.6g}"
        )
    return "\n".join(lines) + "\n"
