"""Shared generators and oracles for the test suite."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from primelattice import (
    AffineLattice,
    IntMatrix,
    LinearSystem,
    from_generators,
    from_matrix_image,
)

PRIMES_50 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def random_unimodular(rng: random.Random, n: int, steps: int = 8) -> IntMatrix:
    """Product of elementary column operations on the identity."""
    cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    for _ in range(steps):
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b:
            if rng.random() < 0.5:
                cols[a] = [-x for x in cols[a]]
            continue
        q = rng.randint(-3, 3)
        cols[a] = [x + q * y for x, y in zip(cols[a], cols[b])]
    return IntMatrix.from_columns([tuple(c) for c in cols])


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3) -> IntMatrix:
    while True:
        M = IntMatrix.from_rows(
            [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]
        )
        if not M.is_zero():
            return M


def random_map_no_zero_rows(rng: random.Random, t: int, d: int) -> IntMatrix:
    """Random t x d matrix with every row nonzero (no constant output axes)."""
    while True:
        M = random_matrix(rng, t, d)
        if all(any(x != 0 for x in row) for row in M.entries):
            return M


def random_finite_index_sublattice(rng: random.Random, image, max_index: int = 100):
    """A sublattice of the given lattice with finite index <= max_index."""
    r = image.rank
    while True:
        C = IntMatrix.from_rows([[rng.randint(-3, 3) for _ in range(r)] for _ in range(r)])
        det = C.det()
        if det != 0 and abs(det) <= max_index:
            break
    G = image.generators @ C
    return from_generators(image.ambient_dim, G.columns())


def random_bridge_instance(rng: random.Random):
    """(system, sublattice, prime) with the translate non-degenerate and the
    sublattice of finite index in the image."""
    d = rng.randint(1, 3)
    t = rng.randint(1, 4)
    A = random_map_no_zero_rows(rng, t, d)
    image = from_matrix_image(A)
    L = random_finite_index_sublattice(rng, image)
    a = tuple(rng.randint(-10, 10) for _ in range(t))
    p = rng.choice(PRIMES_50)
    return LinearSystem(A, a), L, p


def random_finite_complexity_system(rng: random.Random) -> LinearSystem:
    from primelattice import INFINITY, complexity

    while True:
        t = rng.randint(2, 4)
        d = rng.randint(2, 3)
        sys = LinearSystem(random_matrix(rng, t, d), tuple(0 for _ in range(t)))
        if complexity(sys).overall != INFINITY:
            return sys


def random_full_rank_T(rng: random.Random, d: int, max_det: int = 20) -> IntMatrix:
    while True:
        T = IntMatrix.from_rows([[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)])
        det = T.det()
        if det != 0 and abs(det) <= max_det:
            return T


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------

def solve_rational(vs, v):
    """Coefficients expressing v as a combination of vs, by explicit
    rational Gaussian elimination with back-substitution; None if unsolvable."""
    if not vs:
        return [] if all(x == 0 for x in v) else None
    rows = len(v)
    aug = [[Fraction(vs[j][i]) for j in range(len(vs))] + [Fraction(v[i])] for i in range(rows)]
    ncols = len(vs)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        f = aug[r][c]
        aug[r] = [x / f for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                g = aug[i][c]
                aug[i] = [x - g * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if aug[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][ncols]
    return sol


def coset_index_oracle(L1, L2, box: int = 6) -> int:
    """Count cosets of L1 in L2 by enumerating small combinations of L2's
    generators and reducing them against L1."""
    from primelattice.lattice import _reduce_against

    reps = set()
    r2 = L2.rank
    for coeffs in product(range(-box, box + 1), repeat=r2):
        v = [0] * L2.ambient_dim
        for j, c in enumerate(coeffs):
            col = L2.generators.column(j)
            for k in range(len(v)):
                v[k] += c * col[k]
        residual, _ = _reduce_against(L1, v)
        reps.add(tuple(residual))
    return len(reps)


def all_set_partitions(items):
    """Every partition of a list, as lists of lists (Bell enumeration)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in all_set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield part + [[first]]


def bell_min_partition(sys: LinearSystem, i: int):
    """Minimum valid partition size at i by exhaustive enumeration."""
    from primelattice.exactmath import INFINITY
    from primelattice.forms import _in_span

    psi_i = sys.form(i)
    others = [j for j in range(sys.num_forms) if j != i]
    if all(x == 0 for x in psi_i):
        return INFINITY
    best = INFINITY
    for part in all_set_partitions(others):
        classes = part if part else [[]]
        if all(not _in_span([sys.form(j) for j in cls], psi_i) for cls in classes):
            best = min(best, len(classes) - 1)
    return best
