"""
The modified Euler characteristic
=================================

chi' of a definable subset of Gamma^n is the stable value of the Euler
characteristic of its truncations. Half-open intervals and half-open
parallelepipeds have chi' = 0; closed boxes have chi' = 1.
"""
from tropvol.gammageo import DefinableSet, box, chi_prime, half_open_ppd

for text in ("x = 0", "0 <= x < 1", "0 < x < 1", "x >= 0", "x > 0",
             "0 <= x1 < 1 & (x2 > 0 | x2 = -1)"):
    S = DefinableSet.parse(text)
    print("%-35s chi' = %d" % (text, chi_prime(S)))

print("closed box [0,1]^3:", chi_prime(box([0, 0, 0], [1, 1, 1])))

# a fundamental domain of a lattice in R^3
E = [[2, 1, 0], [1, 3, -1], [0, -1, 2]]
print("half-open parallelepiped:", chi_prime(half_open_ppd(E)))
print("its closure:", chi_prime(half_open_ppd(E, closed=True)))

# Boolean operations stay exact
A = DefinableSet.parse("x1 >= 0 & x2 >= 0")
B = DefinableSet.parse("x1 + x2 < 3")
print("chi'(A | B) =", chi_prime(A | B), " chi'(A - B) =", chi_prime(A - B))
