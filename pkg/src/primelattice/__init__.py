"""Exact lattice and linear-form machinery for prime constellations.

Layers, bottom up: exact integer/rational linear algebra (``exactmath``),
lattices and affine translates (``lattice``), systems of forms and their
the complexity invariant (``forms``), mod-p local factors and singular series
(``localfactors``), the von Mangoldt sieve (``mangoldt``), and the
empirical averaging harness (``harness``).
"""
from .exactmath import INFINITY, IntMatrix, NoLatticeError, hnf, in_q_span, integer_kernel, rank
from .forms import (
    ComplexityReport,
    LinearSystem,
    complexity,
    compose,
    i_complexity,
    is_complexity_preserving,
    is_rational_multiple,
)
from .harness import (
    ConvexBody,
    EmptyBodyError,
    VerificationReport,
    convergence_sweep,
    dickson_average_lattice,
    dickson_average_system,
    enumerate_points,
    reports_to_tsv,
)
from .lattice import (
    AffineLattice,
    DegeneracyReport,
    DegeneratePreimageError,
    InfiniteIndexError,
    Lattice,
    NotASublatticeError,
    complexity_preserving_map,
    contains,
    degeneracy,
    from_generators,
    from_matrix_image,
    index,
    preimage,
)
from .localfactors import (
    LocalReport,
    ModPSubspace,
    SeriesReport,
    SeriesUndefinedError,
    alpha_p,
    alpha_via_bridge,
    count_unit_points,
    find_obstructions,
    gamma_p,
    lambda_p,
    primes_up_to,
    reduce_mod_p,
    singular_series,
)
from .mangoldt import MangoldtTable, is_prime_point, lambda_tensor, sieve

__version__ = "0.1.0"

__all__ = [
    "AffineLattice", "ComplexityReport", "ConvexBody", "DegeneracyReport",
    "DegeneratePreimageError", "EmptyBodyError", "INFINITY", "InfiniteIndexError",
    "IntMatrix", "Lattice", "LinearSystem", "LocalReport", "MangoldtTable",
    "ModPSubspace", "NoLatticeError", "NotASublatticeError", "SeriesReport",
    "SeriesUndefinedError", "VerificationReport", "alpha_p", "alpha_via_bridge",
    "complexity", "complexity_preserving_map", "compose", "contains",
    "convergence_sweep", "count_unit_points", "degeneracy",
    "dickson_average_lattice", "dickson_average_system", "enumerate_points",
    "find_obstructions", "from_generators", "from_matrix_image", "gamma_p",
    "hnf", "i_complexity", "in_q_span", "index", "integer_kernel",
    "is_complexity_preserving", "is_prime_point", "is_rational_multiple",
    "lambda_p", "lambda_tensor", "preimage", "primes_up_to", "rank",
    "reduce_mod_p", "reports_to_tsv", "sieve", "singular_series",
]
