"""
Smith form and theta coset representatives
==========================================

Theta functions for a polarization Lam are indexed by the finite group
Z^g / m Lam Z^g. The Smith form turns that group into a product of
cyclic factors, which makes enumeration a box walk.
"""
from tropvol import _exact as ex
from tropvol.lattice import PolarizationType, rigidification_dimension, smith, theta_coset_reps

A = [[2, 1], [1, 2]]
sd = smith(A)
print("diagonal:", sd.diagonal)
print("U A V == D:", ex.matmul(ex.matmul(sd.U, A), sd.V) == [list(r) for r in sd.D])

pol = PolarizationType(tuple(map(tuple, A)))
for m in (1, 2, 6):
    reps = theta_coset_reps(pol, m)
    print("m = %d: %d representatives" % (m, len(reps)))

# with m = 6 the count is 6^g * d, the dimension behind a linear rigidification
print("6^g d =", rigidification_dimension(pol))
