"""Small gallery of standard systems and lattices used throughout the
demos and tests."""
from __future__ import annotations

from .forms import LinearSystem
from .lattice import AffineLattice, Lattice, from_generators


def identity_system(d: int) -> LinearSystem:
    """The identity map on Z^d."""
    return LinearSystem.from_rows([[1 if i == j else 0 for j in range(d)] for i in range(d)])


def twin_system(gap: int = 2) -> LinearSystem:
    """n -> (n, n + gap)."""
    return LinearSystem.from_rows([[1], [1]], constant=[0, gap])


def ap_system(k: int) -> LinearSystem:
    """(n, r) -> (n, n + r, ..., n + (k-1) r): k-term arithmetic progressions."""
    return LinearSystem.from_rows([[1, j] for j in range(k)])


def vinogradov_system() -> LinearSystem:
    """(n1, n2) -> (n1, n2, -n1 - n2)."""
    return LinearSystem.from_rows([[1, 0], [0, 1], [-1, -1]])


def twin_coset(gap: int = 2) -> AffineLattice:
    """(0, gap) + Z(1, 1), the diagonal translate whose prime points are
    prime pairs at the given gap."""
    return AffineLattice((0, gap), from_generators(2, [(1, 1)]))


def ap_lattice(k: int) -> Lattice:
    """Vectors of Z^k forming an arithmetic progression."""
    return from_generators(k, [(1,) * k, tuple(range(k))])


def goldbach_coset(n: int) -> AffineLattice:
    """(0, 0, n) + image of the Vinogradov map: triples summing to n."""
    return AffineLattice((0, 0, n), from_generators(3, [(1, 0, -1), (0, 1, -1)]))
