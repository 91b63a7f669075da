"""
Volumes of torus families
=========================

A family of tori over a polyhedral base has a tropical total space whose
fibres are fundamental domains. Its motivic volume is computed twice: once
on the total space directly and once by summing fibre volumes over pieces
of the base. Both vanish for half-open fibres; closed fibres are a control.
"""
from fractions import Fraction as F

from tropvol.gammageo import box
from tropvol.volume import (AffineFunction, TorusFamily, motivic_volume_direct,
                            motivic_volume_fubini, verify_vanishing)


def affine(coeffs, const=0):
    return AffineFunction(tuple(coeffs), F(const))


# the Tate curve with valuation sigma over the base [1, 2]
tate = TorusFamily(1, box([1], [2]), ((affine([1]),),))
rep = verify_vanishing(tate)
print("tate: vanishes=%s agree=%s" % (rep["vanishes"], rep["agree"]))

# a two-parameter family diag(sigma1, sigma2) over [1, 2]^2
diag = TorusFamily(2, box([1, 1], [2, 2]),
                   ((affine([1, 0]), affine([0, 0])), (affine([0, 0]), affine([0, 1]))))
print("diagonal: direct =", motivic_volume_direct(diag))
total, pieces = motivic_volume_fubini(diag)
print("diagonal: fubini =", total, "over", len(pieces), "pieces")

# closing the fibres removes the cancellation
closed = TorusFamily(2, diag.base, diag.lattice_map, fiber="closed")
print("closed fibres: direct =", motivic_volume_direct(closed))
print("closed fibres: fubini =", motivic_volume_fubini(closed)[0])

# a family that degenerates inside the base is rejected with a witness
bad = TorusFamily(1, box([-1], [1]), ((affine([1]),),))
print("degenerate:", verify_vanishing(bad)["errors"][0]["name"])
