"""Sublattices of Z^t and their affine translates.

A lattice is kept in canonical column-style Hermite normal form, so two
lattices are equal exactly when their generator matrices are equal.  An
affine lattice stores a coset representative reduced against the HNF
pivots, making coset equality syntactic as well.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactmath import (
    INFINITY,
    IntMatrix,
    NoLatticeError,
    hnf,
    hnf_pivots,
    integer_kernel,
)


class NotASublatticeError(ValueError):
    """The first lattice is not contained in the second."""


class InfiniteIndexError(ValueError):
    """A finite index was required but the index is infinite."""


class DegeneratePreimageError(ValueError):
    """The preimage lattice has rank below the domain dimension."""


def _is_prime(n: int) -> bool:
    n = abs(n)
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^t, generators in canonical column HNF (t x r)."""

    ambient_dim: int
    generators: IntMatrix

    def __post_init__(self):
        if self.generators.rows != self.ambient_dim:
            raise ValueError("generator matrix does not match ambient dimension")
        if self.generators.cols == 0:
            raise NoLatticeError("no lattice")

    @property
    def rank(self) -> int:
        return self.generators.cols

    def pivots(self) -> list[tuple[int, int]]:
        return hnf_pivots(self.generators)

    def __str__(self) -> str:
        return f"Lattice(dim={self.ambient_dim}, rank={self.rank})\n{self.generators}"


def from_generators(ambient_dim: int, vectors: Sequence[Sequence[int]]) -> Lattice:
    """Lattice generated by the given integer vectors, canonicalized.

    Raises :class:`NoLatticeError` when every input vector is zero.
    """
    vecs = [tuple(int(x) for x in v) for v in vectors]
    for v in vecs:
        if len(v) != ambient_dim:
            raise ValueError("generator dimension mismatch")
    if not vecs or all(all(x == 0 for x in v) for v in vecs):
        raise NoLatticeError("no lattice")
    M = IntMatrix.from_columns(vecs)
    H, _ = hnf(M)
    nonzero = [H.column(j) for j in range(H.cols) if any(x != 0 for x in H.column(j))]
    return Lattice(ambient_dim, IntMatrix.from_columns(nonzero, nrows=ambient_dim))


def from_matrix_image(M: IntMatrix) -> Lattice:
    """The lattice spanned by the columns of ``M`` (the image of the map)."""
    return from_generators(M.rows, M.columns())


def _reduce_against(L: Lattice, v: Sequence[int]) -> tuple[list[int], list[int]]:
    """Forward-substitute ``v`` against the HNF pivots.

    Returns ``(residual, coefficients)``: coefficients are the integer
    multiples of each generator column removed from ``v`` (floor division at
    each pivot), residual is what remains.
    """
    x = [int(a) for a in v]
    H = L.generators
    coeffs = []
    for i, j in L.pivots():
        q = x[i] // H.entries[i][j]
        if q:
            col = H.column(j)
            for k in range(L.ambient_dim):
                x[k] -= q * col[k]
        coeffs.append(q)
    return x, coeffs


def contains(L: Lattice, v: Sequence[int]) -> bool:
    """Exact membership of an integer vector in the lattice."""
    if len(v) != L.ambient_dim:
        raise ValueError("dimension mismatch")
    residual, _ = _reduce_against(L, v)
    return all(x == 0 for x in residual)


def coordinates(L: Lattice, v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of ``v`` in the HNF basis, or None if not in L."""
    if len(v) != L.ambient_dim:
        raise ValueError("dimension mismatch")
    residual, coeffs = _reduce_against(L, v)
    if any(x != 0 for x in residual):
        return None
    return coeffs


@dataclass(frozen=True)
class AffineLattice:
    """Translate ``base + lattice`` with a canonical coset representative."""

    base: tuple[int, ...]
    lattice: Lattice
    _canonical: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if len(self.base) != self.lattice.ambient_dim:
            raise ValueError("base dimension mismatch")
        if not self._canonical:
            reduced, _ = _reduce_against(self.lattice, self.base)
            object.__setattr__(self, "base", tuple(reduced))
            object.__setattr__(self, "_canonical", True)

    @property
    def ambient_dim(self) -> int:
        return self.lattice.ambient_dim

    def contains(self, v: Sequence[int]) -> bool:
        return contains(self.lattice, [a - b for a, b in zip(v, self.base)])

    def __str__(self) -> str:
        return f"{self.base} + {self.lattice}"


def index(L1: Lattice, L2: Lattice):
    """Index ``[L2 : L1]`` of ``L1`` inside ``L2``.

    Returns an integer when finite, :data:`INFINITY` when the ranks differ.
    Raises :class:`NotASublatticeError` if ``L1`` is not contained in ``L2``.
    """
    if L1.ambient_dim != L2.ambient_dim:
        raise ValueError("ambient dimensions differ")
    coord_cols = []
    for j in range(L1.rank):
        c = coordinates(L2, L1.generators.column(j))
        if c is None:
            raise NotASublatticeError("not a sublattice")
        coord_cols.append(c)
    if L1.rank != L2.rank:
        return INFINITY
    X = IntMatrix.from_columns(coord_cols)
    return abs(X.det())


def preimage(psi: IntMatrix, L: Lattice) -> Lattice:
    """The lattice ``psi^{-1}(L) = {x in Z^d : psi x in L}``.

    Computed as the projection to the first d coordinates of the integer
    kernel of the block matrix ``(A | -B)``.  Raises
    :class:`DegeneratePreimageError` when the result has rank below d.
    """
    if psi.rows != L.ambient_dim:
        raise ValueError("codomain dimension mismatch")
    d = psi.cols
    B = L.generators
    block = IntMatrix.from_rows(
        [tuple(psi.entries[i]) + tuple(-x for x in B.entries[i]) for i in range(psi.rows)]
    )
    K = integer_kernel(block)
    cols = [K.column(j)[:d] for j in range(K.cols)]
    cols = [c for c in cols if any(x != 0 for x in c)]
    if not cols:
        raise DegeneratePreimageError("preimage degenerate")
    P = from_generators(d, cols)
    if P.rank < d:
        raise DegeneratePreimageError("preimage degenerate")
    return P


def complexity_preserving_map(psi: IntMatrix, L: Lattice) -> IntMatrix:
    """Square integer matrix T with ``T(Z^d)`` equal to ``psi^{-1}(L)``.

    Requires ``L`` to be a finite-index sublattice of the image of ``psi``;
    the columns of T are the HNF generators of the preimage, so T has full
    rank d and is complexity preserving.
    """
    image = from_matrix_image(psi)
    idx = index(L, image)  # raises NotASublatticeError when L is not inside
    if idx == INFINITY:
        raise InfiniteIndexError("not finite index")
    P = preimage(psi, L)
    return IntMatrix.from_columns([P.generators.column(j) for j in range(P.rank)])


@dataclass(frozen=True)
class DegeneracyReport:
    """Constant-axis analysis of an affine lattice.

    ``degenerate_axes`` are axes whose projection is a constant prime (up
    to sign); ``vacuous_axes`` have constant value 0 or +-1, where no prime
    point can exist but the degeneracy definition does not apply;
    ``constant_values`` records the value of every constant axis.
    ``associated`` is the affine lattice on the non-degenerate axes when
    degenerate axes exist.
    """

    degenerate_axes: frozenset[int]
    vacuous_axes: frozenset[int]
    constant_values: dict[int, int]
    associated: AffineLattice | None

    @property
    def is_degenerate(self) -> bool:
        return bool(self.degenerate_axes)

    @property
    def has_vacuous_axis(self) -> bool:
        return bool(self.vacuous_axes)


def degeneracy(Laff: AffineLattice) -> DegeneracyReport:
    """Classify the constant axes of ``Laff`` (0-based axis indices)."""
    G = Laff.lattice.generators
    t = Laff.ambient_dim
    constant = {
        i: Laff.base[i] for i in range(t) if all(x == 0 for x in G.entries[i])
    }
    degen = frozenset(i for i, v in constant.items() if _is_prime(v))
    vacuous = frozenset(i for i, v in constant.items() if abs(v) <= 1)
    associated = None
    if degen:
        keep = [i for i in range(t) if i not in degen]
        gens = [tuple(G.entries[i][j] for i in keep) for j in range(G.cols)]
        sub = from_generators(len(keep), gens)
        associated = AffineLattice(tuple(Laff.base[i] for i in keep), sub)
    return DegeneracyReport(degen, vacuous, constant, associated)
