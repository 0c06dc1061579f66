"""Finite-index preimages under an affine-linear map.

Take the ternary map psi(x, y) = (x, y, -x-y) and the sublattice of its
image where both parameters are doubled.  Pulling the sublattice back
gives 2Z^2, of index 4, and the index downstairs matches the index
upstairs.  The columns of the resulting map T generate the preimage, so
precomposing psi with T lands exactly on the sublattice.
"""
from primelattice import (
    IntMatrix,
    complexity,
    complexity_preserving_map,
    compose,
    from_generators,
    from_matrix_image,
    index,
    preimage,
)
from primelattice.instances import vinogradov_system

sys = vinogradov_system()
psi = sys.matrix
print("map rows:", psi.entries)

L = from_generators(3, [(2, 0, -2), (0, 2, -2)])
image = from_matrix_image(psi)
print("index of sublattice in the image:", index(L, image))

P = preimage(psi, L)
print("preimage generators (columns):", P.generators.columns())

T = complexity_preserving_map(psi, L)
print("T =", T.entries, " |det T| =", abs(T.det()))

composed = compose(sys, T)
print("composed rows:", composed.matrix.entries)
print("complexity before:", complexity(sys).overall,
      " after:", complexity(composed).overall)
