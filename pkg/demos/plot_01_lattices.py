"""
Lattices, valuations and polarizations
======================================

A lattice in a split torus is recorded by a g x g matrix of monomials
c t^q. Tropicalization keeps only the exponents.
"""
from fractions import Fraction as F

from tropvol.lattice import (LatticeMatrix, PolarizationType, is_polarization, pairing,
                             polarization_rank, tropicalize_matrix)
from tropvol.valfield import Monomial, trop

# a Tate-style lattice generated by a single element of valuation 2
q = Monomial(F(3), F(2))
print("q =", q, " trop(q) =", trop(q))

# a rank-two lattice with symmetric valuations
E = LatticeMatrix.from_valuations([[2, 1], [1, 2]])
print("Ebar =", [[str(x) for x in r] for r in tropicalize_matrix(E).rows()])

# polarization type Lam; Lam Ebar has to be symmetric positive definite
lam = PolarizationType(((1, 0), (0, 1)))
print("principal polarization?", is_polarization(E, lam))

# the pairing of two lattice vectors is a monomial whose exponent
# is the Euclidean product (Lam Ebar a, b)
print("pairing(e1, e2) =", pairing(E, lam, (1, 0), (0, 1)))

# |det Lam| counts the sections of the associated line bundle
print("rank of diag(2, 3):", polarization_rank(PolarizationType(((2, 0), (0, 3)))))
