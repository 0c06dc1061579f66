"""Local factors and the twin-pair constant.

For the coset (0,2) + Z(1,1), the factor at p compares the density of
unit points of the reduction mod p with the density (1-1/p)^2 expected
of independent coordinates.  The product over primes converges to the
familiar constant 1.3203...; the same constant shows up for three-term
progressions.
"""
from primelattice import AffineLattice, alpha_p, gamma_p, singular_series
from primelattice.instances import ap_lattice, ap_system, twin_coset

tc = twin_coset()
print("twin coset (n, n+2):")
for p in (2, 3, 5, 7, 11):
    rep = alpha_p(tc, p)
    print(f"  alpha_{p} = {rep.alpha}  ({rep.unit_count} unit points of {rep.size})")

print()
print("three-term progression system, local averages:")
sys3 = ap_system(3)
for p in (2, 3, 5, 7, 11):
    print(f"  gamma_{p} = {gamma_p(sys3, p)}")

print()
for cutoff in (10 ** 3, 10 ** 4, 10 ** 5):
    rep = singular_series(tc, cutoff)
    print(f"twin series, cutoff {cutoff:>7}: {rep.partial_product}")

ap3 = singular_series(AffineLattice((0, 0, 0), ap_lattice(3)), 10 ** 5)
print(f"ap3  series, cutoff  100000: {ap3.partial_product}  (same product)")
