import random
from decimal import Decimal
from fractions import Fraction

import pytest

import primelattice.localfactors as lf
from primelattice import (
    AffineLattice,
    LinearSystem,
    SeriesUndefinedError,
    alpha_p,
    alpha_via_bridge,
    count_unit_points,
    find_obstructions,
    from_generators,
    from_matrix_image,
    gamma_p,
    lambda_p,
    primes_up_to,
    reduce_mod_p,
    singular_series,
)
from primelattice.instances import (
    ap_lattice,
    ap_system,
    goldbach_coset,
    identity_system,
    twin_coset,
    twin_system,
)

from util import random_bridge_instance


class TestReduceModP:
    def test_diagonal_line(self):
        S = reduce_mod_p(AffineLattice((0, 0), from_generators(2, [(1, 1)])), 2)
        assert S.rank == 1 and S.size == 2

    def test_doubled_lattice_collapses(self):
        S = reduce_mod_p(AffineLattice((0, 0), from_generators(2, [(2, 0), (0, 2)])), 2)
        assert S.rank == 0 and S.size == 1

    def test_mixed_pivots(self):
        S = reduce_mod_p(AffineLattice((0, 0), from_generators(2, [(2, 0), (0, 3)])), 3)
        assert S.rank == 1 and S.size == 3
        assert S.basis == ((1, 0),)


class TestLambdaP:
    def test_values(self):
        assert lambda_p(2, 1) == 2
        assert lambda_p(2, 0) == 0
        assert lambda_p(3, 2) == Fraction(3, 2)


class TestUnitCounting:
    def test_twin_coset_counts(self):
        tc = twin_coset()
        assert count_unit_points(reduce_mod_p(tc, 5)) == 3
        assert count_unit_points(reduce_mod_p(tc, 2)) == 1

    def test_full_space(self):
        full = AffineLattice((0, 0, 0), from_generators(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
        for p in (2, 3, 5):
            assert count_unit_points(reduce_mod_p(full, p)) == (p - 1) ** 3

    @pytest.mark.parametrize("seed", range(10))
    def test_inclusion_exclusion_matches_enumeration(self, seed, monkeypatch):
        rng = random.Random(seed)
        sys, L, p = random_bridge_instance(rng)
        Laff = AffineLattice(sys.constant, L)
        S = reduce_mod_p(Laff, p)
        by_enum = count_unit_points(S)
        monkeypatch.setattr(lf, "ENUMERATION_LIMIT", 0)
        assert count_unit_points(S) == by_enum


class TestAlpha:
    def test_twin_coset_values(self):
        tc = twin_coset()
        assert alpha_p(tc, 2).alpha == 2
        assert alpha_p(tc, 5).alpha == Fraction(15, 16)

    def test_obstruction(self):
        bad = AffineLattice((0, 1), from_generators(2, [(1, 1)]))
        rep = alpha_p(bad, 2)
        assert rep.alpha == 0 and rep.unit_count == 0

    def test_report_invariant(self):
        rep = alpha_p(twin_coset(), 7)
        assert rep.alpha == Fraction(7, 6) ** 2 * Fraction(rep.unit_count, rep.size)

    def test_degenerate_delegation(self):
        degenerate = AffineLattice((-2, 3, 1), from_generators(3, [(0, 0, 2)]))
        associated = AffineLattice((1,), from_generators(1, [(2,)]))
        for p in (2, 3, 5, 7):
            assert alpha_p(degenerate, p).alpha == alpha_p(associated, p).alpha

    def test_vacuous_axis_refused(self):
        Laff = AffineLattice((0, 0), from_generators(2, [(0, 1)]))
        with pytest.raises(SeriesUndefinedError):
            alpha_p(Laff, 3)


class TestGamma:
    def test_identity_is_one(self):
        for p in (2, 3, 5, 11):
            assert gamma_p(identity_system(1), p) == 1

    def test_twin_at_two(self):
        assert gamma_p(twin_system(), 2) == 2

    def test_ap3_at_three(self):
        assert gamma_p(ap_system(3), 3) == Fraction(3, 4)

    def test_ap3_closed_forms(self):
        sys = ap_system(3)
        assert gamma_p(sys, 2) == 2
        for p in primes_up_to(100):
            if p >= 5:
                assert gamma_p(sys, p) == 1 - Fraction(1, (p - 1) ** 2)

    @pytest.mark.parametrize("seed", range(25))
    def test_equals_alpha_of_image_translate(self, seed):
        rng = random.Random(seed)
        sys, _, p = random_bridge_instance(rng)
        Laff = AffineLattice(sys.constant, from_matrix_image(sys.matrix))
        assert gamma_p(sys, p) == alpha_p(Laff, p).alpha


class TestBridge:
    def test_hand_checked_values(self):
        one_plus_2z = LinearSystem.from_rows([[1]], [1])
        L = from_generators(1, [(2,)])
        assert alpha_via_bridge(one_plus_2z, L, 2) == 2
        assert alpha_via_bridge(one_plus_2z, L, 3) == 1

    def test_reduces_to_gamma_on_full_image(self):
        sys = twin_system()
        L = from_matrix_image(sys.matrix)
        for p in (2, 3, 5, 7):
            assert alpha_via_bridge(sys, L, p) == gamma_p(sys, p)

    def test_infinite_index_rejected(self):
        sys = identity_system(2)
        with pytest.raises(ValueError):
            alpha_via_bridge(sys, from_generators(2, [(1, 1)]), 3)

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_direct_alpha(self, seed):
        rng = random.Random(seed)
        sys, L, p = random_bridge_instance(rng)
        Laff = AffineLattice(sys.constant, L)
        assert alpha_via_bridge(sys, L, p) == alpha_p(Laff, p).alpha


class TestObstructions:
    def test_twin_coset_clear(self):
        assert find_obstructions(twin_coset()) == []

    def test_consecutive_pair_blocked_at_two(self):
        assert find_obstructions(AffineLattice((0, 1), from_generators(2, [(1, 1)]))) == [2]

    def test_repeated_form_not_blocked(self):
        assert find_obstructions(AffineLattice((0, 0), from_generators(2, [(1, 1)]))) == []

    def test_gcd_controls_progressions(self):
        assert find_obstructions(AffineLattice((2,), from_generators(1, [(6,)]))) == [2]
        assert find_obstructions(AffineLattice((1,), from_generators(1, [(6,)]))) == []
        assert find_obstructions(AffineLattice((3,), from_generators(1, [(6,)]))) == [3]

    def test_hidden_row_divisor(self):
        # points (n, 7n): every point has second coordinate divisible by 7
        Laff = AffineLattice((0, 0), from_generators(2, [(1, 7)]))
        assert find_obstructions(Laff) == [7]

    def test_bound_override_adds_nothing(self):
        assert find_obstructions(twin_coset(), bound=100) == []

    def test_ap_lattice_positivity(self):
        for k in range(3, 7):
            Laff = AffineLattice((0,) * k, ap_lattice(k))
            for p in primes_up_to(100):
                assert alpha_p(Laff, p).alpha > 0

    def test_hyperplane_property_of_obstructed_instance(self):
        # alpha_2 = 0: every prime point of (0,1)+Z(1,1) in a small box has
        # a coordinate equal to +-2
        from primelattice import is_prime_point

        for n in range(-500, 500):
            if is_prime_point((n, n + 1)):
                assert 2 in (abs(n), abs(n + 1))


class TestSingularSeries:
    def test_whole_line_is_one(self):
        rep = singular_series(AffineLattice((0,), from_generators(1, [(1,)])), 1000)
        assert rep.partial_product == Decimal(1)

    def test_twin_constant_at_modest_cutoff(self):
        rep = singular_series(twin_coset(), 10 ** 4)
        assert abs(float(rep.partial_product) - 1.3203) < 1e-2
        assert rep.obstructions == ()

    def test_ap3_equals_twin_product(self):
        a = singular_series(twin_coset(), 10 ** 4)
        b = singular_series(AffineLattice((0, 0, 0), ap_lattice(3)), 10 ** 4)
        assert a.partial_product == b.partial_product

    def test_obstructed_product_is_zero(self):
        rep = singular_series(AffineLattice((0, 1), from_generators(2, [(1, 1)])), 100)
        assert rep.obstructions == (2,)
        assert rep.partial_product == 0

    def test_vacuous_refused(self):
        with pytest.raises(SeriesUndefinedError):
            singular_series(AffineLattice((1, 0), from_generators(2, [(1, 0)])), 100)

    def test_factors_cover_every_prime(self):
        rep = singular_series(twin_coset(), 100)
        assert [f.p for f in rep.exact_factors] == primes_up_to(100)
        prod = Fraction(1)
        for f in rep.exact_factors:
            prod *= f.alpha
        assert abs(float(rep.partial_product) - float(prod)) < 1e-15

    @pytest.mark.parametrize(
        "laff",
        [
            twin_coset(),
            AffineLattice((0, 0, 0), ap_lattice(3)),
            goldbach_coset(99),
            AffineLattice((1, 5), from_generators(2, [(2, 6)])),
        ],
    )
    def test_closed_form_profile_matches_exact_path(self, laff):
        profile = lf._alpha_profile(lf._effective(laff))
        for p in primes_up_to(200):
            if p not in profile.exceptional:
                assert profile.alpha(p) == alpha_p(laff, p).alpha
