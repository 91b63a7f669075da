"""Small exact linear algebra over Fractions and ints.

Matrices are lists (or tuples) of rows. Nothing here uses floating point.
"""
from fractions import Fraction
from itertools import combinations
from math import gcd


def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted: %r" % (x,))
    return Fraction(x)


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def det(a):
    """Determinant by fraction-free Bareiss elimination (exact for ints)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                if isinstance(num, int) and isinstance(prev, int):
                    m[i][j] = num // prev
                else:
                    m[i][j] = num / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(a):
    """Exact inverse as Fractions; raises ZeroDivisionError if singular."""
    n = len(a)
    m = [[to_fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def int_inverse(a):
    """Inverse of a unimodular integer matrix, as ints."""
    inv = inverse(a)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def row_reduce(rows):
    """Reduced row echelon form. Returns (rref rows, pivot columns)."""
    m = [[to_fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(row_reduce(rows)[1]) if rows else 0


def nullspace(rows, n):
    """Basis (list of Fraction vectors) of {x in Q^n : rows x = 0}."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rref, piv = row_reduce(rows)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, pc in enumerate(piv):
            v[pc] = -rref[r][f]
        basis.append(v)
    return basis


def solve_affine(rows, rhs, n):
    """Parametrize {x : rows x = rhs} as x0 + K z.

    Returns (x0, K) with K an n x k list of columns' rows, or None when the
    system is inconsistent.
    """
    if not rows:
        return [Fraction(0)] * n, nullspace([], n)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    rref, piv = row_reduce(aug)
    if n in piv:
        return None
    x0 = [Fraction(0)] * n
    for r, pc in enumerate(piv):
        x0[pc] = rref[r][n]
    return x0, nullspace([row[:n] for row in rref], n)


def leading_minors(a):
    return [det([row[:k] for row in a[:k]]) for k in range(1, len(a) + 1)]


def is_positive_definite(a):
    """Sylvester's criterion; ``a`` must be symmetric."""
    return all(m > 0 for m in leading_minors(a))


def is_positive_semidefinite(a):
    """All principal minors nonnegative; ``a`` must be symmetric."""
    n = len(a)
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            if det([[a[i][j] for j in idx] for i in idx]) < 0:
                return False
    return True


def is_symmetric(a):
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def primitive(coeffs, rhs):
    """Scale an integer/rational row so its coefficients are coprime ints.

    Returns (int coeffs, Fraction rhs, scale) where scale > 0.
    """
    fr = [to_fraction(c) for c in coeffs]
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return ints, to_fraction(rhs), Fraction(1)
    scale = Fraction(den, g)
    return [c // g for c in ints], to_fraction(rhs) * scale, scale
