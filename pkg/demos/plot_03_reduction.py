"""
Reducing a polarized lattice
============================

GL_g(Z) changes the basis of a lattice. Reduction picks the representative
whose form Lam Ebar sits in the fundamental domain and returns the
unimodular matrix that gets there.
"""
from tropvol.glnz import UnimodularMatrix, congruence, in_fundamental_domain, reduce
from tropvol.lattice import LatticeMatrix, PolarizationType, tropicalize_matrix



def show(rows):
    return [[str(x) for x in r] for r in rows]


pol = PolarizationType.identity(2)
E0 = LatticeMatrix.from_valuations([[1, 0], [0, 2]])

# hide the reduced form behind a change of basis
om = UnimodularMatrix([[1, 3], [0, 1]]) @ UnimodularMatrix([[1, 0], [-2, 1]])
E = congruence(om, E0)
print("scrambled Ebar:", show(tropicalize_matrix(E).rows()))
print("in domain?", in_fundamental_domain(tropicalize_matrix(E), pol))

red = reduce(E, pol)
print("reduced form:", show(red.form()))
print("omega:", red.omega.rows())
print("omega reproduces it:", congruence(red.omega, E) == red.lattice)
print("steps taken:", len(red.steps))
