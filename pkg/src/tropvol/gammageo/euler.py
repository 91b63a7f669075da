"""The bounded Euler characteristic ``chi'`` of definable subsets of Gamma^n.

``chi'(S)`` is the eventual value of ``chi(S ∩ [-l, l]^n)``. For a cell ``C``
with closed part ``P`` (strict rows relaxed, box added) and strict rows
``s_1..s_k``,

    C ∩ box = P minus the union of the faces P ∩ {s_j = 0},

and every nonempty compact convex set has ``chi = 1``, so inclusion-exclusion
gives ``chi(C ∩ box) = sum_J (-1)^|J| [P ∩ {s_j = 0, j in J} != empty]``.
Subsets ``J`` are grown depth first and abandoned as soon as the
intersection is empty.
"""
from fractions import Fraction
from math import isqrt

from ..errors import NonStabilized
from .. import _exact as ex
from . import lp

__all__ = ["chi_prime", "chi_truncated", "stabilization_bound"]


def _box_rows(n, l):
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rows.append((tuple(e), "<=", Fraction(l)))
        rows.append((tuple(-x for x in e), "<=", Fraction(l)))
    return rows


def _cell_chi(rows, n, l):
    closed = [(a, "<=" if rel == "<" else rel, b) for a, rel, b in rows]
    closed += _box_rows(n, l)
    strict = [(a, "=", b) for a, rel, b in rows if rel == "<"]
    total = 0

    def walk(start, extra, sign):
        nonlocal total
        if not lp.feasible(closed + extra, n):
            return
        total += sign
        for j in range(start, len(strict)):
            walk(j + 1, extra + [strict[j]], -sign)

    walk(0, [], 1)
    return total


def chi_truncated(S, l):
    """``chi(S ∩ [-l, l]^n)``."""
    return sum(_cell_chi(cell.rows(), S.n, l) for cell in S.cells)


def stabilization_bound(S):
    """A box size beyond which ``chi(S ∩ [-l,l]^n)`` no longer changes.

    The larger of ``1 + n (1 + max|rhs|)(1 + max|coeff|)`` and a Hadamard bound
    on every parameter ``l`` at which a box facet can pass through a flat of
    the constraint arrangement.
    """
    n = S.n
    max_rhs = Fraction(0)
    max_coeff = 0
    norms = []
    for cell in S.cells:
        for c in cell.constraints:
            max_rhs = max(max_rhs, abs(c.rhs))
            max_coeff = max(max_coeff, max(abs(x) for x in c.coeffs))
            ints, rhs, _ = ex.primitive(c.coeffs, c.rhs)
            q = rhs.denominator
            norms.append(sum((q * x) ** 2 for x in ints) + int(rhs * q) ** 2)
    simple = 1 + n * (1 + max_rhs) * (1 + max_coeff)
    simple = int(simple) + (simple.denominator != 1)
    norms.sort(reverse=True)
    h2 = 1
    for v in norms[:n]:
        h2 *= v
    hadamard = isqrt(h2) + 2
    return max(simple, hadamard)


def chi_prime(S):
    """Modified Euler characteristic, certified at two box sizes."""
    if not S.cells:
        return 0
    l0 = stabilization_bound(S)
    sizes = (l0, 2 * l0 + 1)
    values = [chi_truncated(S, l) for l in sizes]
    if values[0] != values[1]:
        raise NonStabilized(values, sizes)
    return values[0]
