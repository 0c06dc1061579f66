import random

import pytest

from primelattice import (
    INFINITY,
    AffineLattice,
    DegeneratePreimageError,
    InfiniteIndexError,
    IntMatrix,
    NoLatticeError,
    NotASublatticeError,
    complexity_preserving_map,
    contains,
    degeneracy,
    from_generators,
    from_matrix_image,
    index,
    preimage,
    rank,
)

from util import (
    coset_index_oracle,
    random_bridge_instance,
    random_map_no_zero_rows,
    random_unimodular,
)


Z2 = from_generators(2, [(1, 0), (0, 1)])
DIAG = from_generators(2, [(1, 1)])
DOUBLED = from_generators(2, [(2, 0), (0, 2)])


class TestFromGenerators:
    def test_diagonal_line(self):
        assert DIAG.rank == 1
        assert DIAG.generators == IntMatrix.from_columns([(1, 1)])

    def test_plane_in_three_space(self):
        L = from_generators(3, [(1, 0, -1), (0, 1, -1)])
        assert L.rank == 2

    def test_canonical_pivots(self):
        L = from_generators(2, [(4, 2), (2, 2)])
        assert L == DOUBLED

    def test_zero_input_rejected(self):
        with pytest.raises(NoLatticeError):
            from_generators(2, [(0, 0)])
        with pytest.raises(NoLatticeError):
            from_generators(2, [])

    @pytest.mark.parametrize("seed", range(15))
    def test_invariant_under_reshuffling(self, seed):
        rng = random.Random(seed)
        dim = rng.randint(1, 4)
        vecs = [
            tuple(rng.randint(-4, 4) for _ in range(dim))
            for _ in range(rng.randint(1, 4))
        ]
        if all(all(x == 0 for x in v) for v in vecs):
            return
        L = from_generators(dim, vecs)
        shuffled = vecs[:]
        rng.shuffle(shuffled)
        assert from_generators(dim, shuffled) == L
        # adding an integer combination of the others changes nothing
        coeffs = [rng.randint(-2, 2) for _ in vecs]
        extra = tuple(
            sum(c * v[i] for c, v in zip(coeffs, vecs)) for i in range(dim)
        )
        if any(x != 0 for x in extra):
            assert from_generators(dim, vecs + [extra]) == L
        for j in range(L.rank):
            assert contains(L, L.generators.column(j))


class TestContains:
    def test_examples(self):
        assert contains(DOUBLED, (2, -4))
        assert not contains(DIAG, (1, 2))
        ap3 = from_generators(3, [(1, 1, 1), (0, 1, 2)])
        assert contains(ap3, (5, 7, 9))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            contains(DIAG, (1, 2, 3))

    @pytest.mark.parametrize("seed", range(10))
    def test_closed_under_addition_and_negation(self, seed):
        rng = random.Random(seed)
        L = from_generators(
            3, [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(2)]
        ) if seed % 2 else DOUBLED
        pts = []
        for _ in range(4):
            coeffs = [rng.randint(-3, 3) for _ in range(L.rank)]
            v = tuple(
                sum(c * L.generators.entries[i][j] for j, c in enumerate(coeffs))
                for i in range(L.ambient_dim)
            )
            pts.append(v)
        for u in pts:
            assert contains(L, u)
            assert contains(L, tuple(-x for x in u))
            for w in pts:
                assert contains(L, tuple(a + b for a, b in zip(u, w)))


class TestIndex:
    def test_examples(self):
        assert index(DOUBLED, Z2) == 4
        assert index(DIAG, Z2) == INFINITY
        assert index(DIAG, DIAG) == 1

    def test_not_a_sublattice(self):
        with pytest.raises(NotASublatticeError):
            index(Z2, DOUBLED)

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_coset_enumeration(self, seed):
        rng = random.Random(seed)
        _, L, _ = random_bridge_instance(rng)
        image = from_generators(L.ambient_dim, L.generators.columns())
        # sublattice of itself scaled by 2: index 2^rank
        scaled = from_generators(
            L.ambient_dim, [tuple(2 * x for x in c) for c in L.generators.columns()]
        )
        idx = index(scaled, L)
        assert idx == 2 ** L.rank
        assert coset_index_oracle(scaled, L) == idx


class TestPreimage:
    def test_identity_map(self):
        L = from_generators(2, [(2, 0), (0, 3)])
        P = preimage(IntMatrix.identity(2), L)
        assert P == L
        assert index(P, Z2) == 6

    def test_diagonal_embedding(self):
        psi = IntMatrix.from_columns([(1, 1)])
        P = preimage(psi, from_generators(2, [(2, 2)]))
        assert P == from_generators(1, [(2,)])

    def test_vinogradov_doubled(self):
        psi = IntMatrix.from_rows([[1, 0], [0, 1], [-1, -1]])
        L = from_generators(3, [(2, 0, -2), (0, 2, -2)])
        P = preimage(psi, L)
        assert P == from_generators(2, [(2, 0), (0, 2)])
        assert index(P, Z2) == 4

    def test_degenerate_preimage_rejected(self):
        # L outside the span of the image of psi
        psi = IntMatrix.from_rows([[1, 0], [0, 0]])
        with pytest.raises(DegeneratePreimageError):
            preimage(psi, from_generators(2, [(0, 1)]))


class TestComplexityPreservingMap:
    def test_identity_doubled(self):
        T = complexity_preserving_map(IntMatrix.identity(2), DOUBLED)
        assert T == IntMatrix.from_columns([(2, 0), (0, 2)])

    def test_forced_scalar(self):
        psi = IntMatrix.from_columns([(1, 1)])
        T = complexity_preserving_map(psi, from_generators(2, [(3, 3)]))
        assert T == IntMatrix.from_rows([[3]])

    def test_infinite_index_rejected(self):
        with pytest.raises(InfiniteIndexError):
            complexity_preserving_map(IntMatrix.identity(2), DIAG)

    @pytest.mark.parametrize("seed", range(20))
    def test_index_isomorphism_and_rank(self, seed):
        rng = random.Random(seed)
        sys, L, _ = random_bridge_instance(rng)
        psi = sys.matrix
        d = psi.cols
        image = from_matrix_image(psi)
        P = preimage(psi, L)
        Zd = from_generators(d, IntMatrix.identity(d).columns())
        assert index(P, Zd) == index(L, image)
        T = complexity_preserving_map(psi, L)
        assert rank(T) == d


class TestDegeneracy:
    def test_paper_style_example(self):
        # {(-2, 3, 2n+1)}: two constant prime axes, associated lattice 2Z+1
        Laff = AffineLattice((-2, 3, 1), from_generators(3, [(0, 0, 2)]))
        rep = degeneracy(Laff)
        assert rep.degenerate_axes == frozenset({0, 1})
        assert rep.constant_values == {0: -2, 1: 3}
        assert rep.associated == AffineLattice((1,), from_generators(1, [(2,)]))

    def test_no_constant_axes(self):
        rep = degeneracy(AffineLattice((0, 2), DIAG))
        assert not rep.is_degenerate
        assert not rep.constant_values

    def test_composite_constant_axis_not_degenerate(self):
        Laff = AffineLattice((6, 0), from_generators(2, [(0, 1)]))
        rep = degeneracy(Laff)
        assert not rep.is_degenerate
        assert rep.constant_values == {0: 6}
        assert not rep.has_vacuous_axis

    def test_vacuous_axis_flagged(self):
        Laff = AffineLattice((0, 0), from_generators(2, [(0, 1)]))
        rep = degeneracy(Laff)
        assert rep.vacuous_axes == frozenset({0})
        assert not rep.is_degenerate


class TestAffineLattice:
    def test_coset_equality_is_syntactic(self):
        a = AffineLattice((0, 2), DIAG)
        b = AffineLattice((5, 7), DIAG)  # differs by (5,5) in the lattice
        assert a == b
        assert a.base == b.base

    def test_membership(self):
        a = AffineLattice((0, 2), DIAG)
        assert a.contains((11, 13))
        assert not a.contains((11, 14))
