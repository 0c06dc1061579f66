"""Desk-scale verification: empirical averages against truncated series.

Each run averages the product of von Mangoldt values over the integer
points of a convex body and compares with the truncated singular series.
The twin sweep shows the error shrinking as the scale grows; the
obstructed coset (n, n+1) averages to essentially zero, matching its
vanishing product.
"""
from primelattice import (
    AffineLattice,
    ConvexBody,
    convergence_sweep,
    dickson_average_lattice,
    dickson_average_system,
    from_generators,
    reports_to_tsv,
)
from primelattice.instances import ap_system, goldbach_coset, twin_system

print("twin pairs (n, n+2), sweep over N:")
reports = convergence_sweep(
    lambda N: dickson_average_system(
        twin_system(), ConvexBody.from_box([[1, N]]), cutoff=10 ** 4, scale=N
    ),
    [10 ** 4, 10 ** 5, 10 ** 6],
)
print(reports_to_tsv(reports))

print("three-term progressions on [1,3000]^2:")
rep = dickson_average_system(
    ap_system(3), ConvexBody.from_box([[1, 3000], [1, 3000]]), cutoff=10 ** 4
)
print(rep.line())
print()

N = 100003
print(f"ternary sums n1+n2+n3 = {N} over the positivity simplex:")
rep = dickson_average_lattice(goldbach_coset(N), ConvexBody.simplex(3, N), cutoff=10 ** 4)
print(rep.line())
print()

print("obstructed coset (n, n+1): prediction 0, average near 0:")
bad = AffineLattice((0, 1), from_generators(2, [(1, 1)]))
rep = dickson_average_lattice(
    bad, ConvexBody.from_box([[1, 10 ** 5], [1, 10 ** 5 + 1]]), cutoff=100
)
print(rep.line())
