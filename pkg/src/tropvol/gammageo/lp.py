"""Exact feasibility and linear optimization over the rationals.

Rows are triples ``(coeffs, rel, rhs)`` meaning ``coeffs . x rel rhs`` with
``rel`` one of ``"<"``, ``"<="``, ``"="``. Equalities are eliminated by
Gaussian elimination first; what remains goes to a dense two-phase simplex
with Bland's rule, so there is no cycling and no floating point.
"""
from fractions import Fraction
from math import gcd

from .. import _exact as ex

__all__ = ["find_point", "feasible", "maximize"]

_ZERO = Fraction(0)


def _lcm(a, b):
    return a * b // gcd(a, b)


def _int_row(vals):
    den = 1
    for v in vals:
        den = _lcm(den, v.denominator)
    return [int(v * den) for v in vals], den


class _Tableau:
    """Integer-preserving tableau: true entries are ``T / D`` (Bareiss pivots)."""

    def __init__(self, rows, obj, basis):
        self.T = rows
        self.obj = obj
        self.basis = basis
        self.D = 1

    def pivot(self, r, c):
        T, D = self.T, self.D
        row = T[r]
        p = row[c]
        for i, other in enumerate(T):
            if i != r:
                f = other[c]
                if f:
                    T[i] = [(x * p - f * y) // D for x, y in zip(other, row)]
                elif p != D:
                    T[i] = [(x * p) // D for x in other]
        f = self.obj[c]
        if f:
            self.obj = [(x * p - f * y) // D for x, y in zip(self.obj, row)]
        elif p != D:
            self.obj = [(x * p) // D for x in self.obj]
        self.basis[r] = c
        self.D = p

    def run(self, allowed):
        """Maximize; ``obj`` holds ``D *`` reduced costs and ``-D * value`` last."""
        while True:
            sD = 1 if self.D > 0 else -1
            obj = self.obj
            enter = next((j for j in allowed if obj[j] * sD > 0), None)
            if enter is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.T):
                a = row[enter]
                if a * sD > 0:
                    if best is None:
                        best = i
                        continue
                    b = self.T[best]
                    # compare row[-1]/a with b[-1]/b[enter]; a and b[enter] share a sign
                    lhs = row[-1] * b[enter]
                    rhs = b[-1] * a
                    if a * b[enter] < 0:
                        lhs, rhs = -lhs, -rhs
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                        best = i
            if best is None:
                return "unbounded"
            self.pivot(best, enter)


def _simplex(A, b, c):
    """max c.y s.t. A y <= b, y >= 0. Returns (status, value, y)."""
    m, n = len(A), len(c)
    if m == 0:
        if any(x > 0 for x in c):
            return "unbounded", None, None
        return "optimal", _ZERO, [_ZERO] * n
    neg = [i for i in range(m) if b[i] < 0]
    width = n + m + len(neg)
    rows = []
    basis = []
    arts = set()
    for i in range(m):
        ints, _ = _int_row([Fraction(x) for x in A[i]] + [Fraction(b[i])])
        row = ints[:n] + [0] * (m + len(neg)) + [ints[n]]
        row[n + i] = 1
        if b[i] < 0:
            row = [-x for x in row]
            k = n + m + len(arts)
            arts.add(k)
            row[k] = 1
            basis.append(k)
        else:
            basis.append(n + i)
        rows.append(row)
    real = list(range(n + m))
    tab = _Tableau(rows, [0] * (width + 1), basis)
    if neg:
        obj = [0] * (width + 1)
        for i in neg:
            obj = [x + y for x, y in zip(obj, rows[i])]
        for k in arts:
            obj[k] = 0
        tab.obj = obj
        tab.run(real)
        if tab.obj[-1] != 0:
            return "infeasible", None, None
        for r in range(len(tab.T)):
            if tab.basis[r] in arts:
                c2 = next((j for j in real if tab.T[r][j] != 0), None)
                if c2 is not None:
                    tab.pivot(r, c2)
    cint, cden = _int_row([Fraction(x) for x in c])
    D = tab.D
    obj = [D * x for x in cint] + [0] * (width - n) + [0]
    for r, bv in enumerate(tab.basis):
        f = obj[bv] if bv < len(obj) - 1 else 0
        if f:
            # obj <- obj - (f / D) * T[r]; keep integral by scaling through D
            obj = [(x * D - f * y) // D for x, y in zip(obj, tab.T[r])]
    tab.obj = obj
    status = tab.run(real)
    if status == "unbounded":
        return status, None, None
    D = tab.D
    y = [_ZERO] * n
    for r, bv in enumerate(tab.basis):
        if bv < n:
            y[bv] = Fraction(tab.T[r][-1], D)
    return "optimal", Fraction(-tab.obj[-1], D * cden), y


def _reduce_equalities(rows, n):
    """Eliminate equalities. Returns (x0, K, ineqs in z) or None if inconsistent."""
    eqs = [(a, b) for a, rel, b in rows if rel == "="]
    ineqs = [(a, rel, b) for a, rel, b in rows if rel != "="]
    if eqs:
        sol = ex.solve_affine([a for a, _ in eqs], [b for _, b in eqs], n)
        if sol is None:
            return None
        x0, K = sol
    else:
        x0 = [_ZERO] * n
        K = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    out = []
    for a, rel, b in ineqs:
        a2 = [ex.dot(a, k) for k in K] if K else []
        b2 = b - ex.dot(a, x0)
        out.append((a2, rel, b2))
    return x0, K, out


def _lift(x0, K, z):
    x = list(x0)
    for zk, k in zip(z, K):
        if zk:
            x = [xi + zk * ki for xi, ki in zip(x, k)]
    return x


def _interval_point(ineqs):
    lo = hi = None
    lo_s = hi_s = False
    for (a,), rel, b in ineqs:
        v = b / a
        strict = rel == "<"
        if a > 0:
            if hi is None or v < hi or (v == hi and strict):
                hi, hi_s = v, strict
        else:
            if lo is None or v > lo or (v == lo and strict):
                lo, lo_s = v, strict
    if lo is not None and hi is not None:
        if lo > hi or (lo == hi and (lo_s or hi_s)):
            return None
        return (lo + hi) / 2
    if lo is not None:
        return lo + 1 if lo_s else lo
    if hi is not None:
        return hi - 1 if hi_s else hi
    return _ZERO


def find_point(rows, n):
    """A rational point satisfying every row, or None if there is none.

    Strict rows are satisfied strictly (the point maximizes the slack, capped
    at 1, so it lies in the relative interior when strict rows are present).
    """
    red = _reduce_equalities(rows, n)
    if red is None:
        return None
    x0, K, ineqs = red
    live = []
    for a, rel, b in ineqs:
        if any(a):
            live.append((a, rel, b))
        elif b < 0 or (b == 0 and rel == "<"):
            return None
    k = len(K)
    if not live or k == 0:
        return x0
    if k == 1:
        z = _interval_point(live)
        return None if z is None else _lift(x0, K, [z])
    strict = any(rel == "<" for _, rel, _ in live)
    A, bb = [], []
    for a, rel, b in live:
        row = list(a) + [-x for x in a]
        if strict:
            row.append(Fraction(int(rel == "<")))
        A.append(row)
        bb.append(b)
    if strict:
        A.append([_ZERO] * (2 * k) + [Fraction(1)])
        bb.append(Fraction(1))
        c = [_ZERO] * (2 * k) + [Fraction(1)]
    else:
        c = [_ZERO] * (2 * k)
    status, val, y = _simplex(A, bb, c)
    if status != "optimal" or (strict and val <= 0):
        return None
    z = [y[i] - y[k + i] for i in range(k)]
    return _lift(x0, K, z)


def feasible(rows, n):
    return find_point(rows, n) is not None


def maximize(c, rows, n):
    """max c.x over closed rows (strict rows are relaxed).

    Returns (status, value, point) with status in
    {"optimal", "unbounded", "infeasible"}.
    """
    red = _reduce_equalities(rows, n)
    if red is None:
        return "infeasible", None, None
    x0, K, ineqs = red
    k = len(K)
    cz = [ex.dot(c, kv) for kv in K]
    const = ex.dot(c, x0)
    A, bb = [], []
    for a, rel, b in ineqs:
        if not any(a):
            if b < 0:
                return "infeasible", None, None
            continue
        A.append(list(a) + [-x for x in a])
        bb.append(b)
    status, val, y = _simplex(A, bb, cz + [-x for x in cz])
    if status != "optimal":
        return status, None, None
    z = [y[i] - y[k + i] for i in range(k)]
    return "optimal", val + const, _lift(x0, K, z)
