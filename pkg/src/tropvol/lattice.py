"""Lattice matrices, polarization types and theta-section counting.

A lattice ``M -> T`` with distinguished basis ``eps_1..eps_g`` is stored as a
g x g grid of monomials, entry ``(i, j)`` being the j-th coordinate of the
image of ``eps_i``. A polarization type is an integer matrix ``Lam``; the
associated pairing is

    <sum a_i eps_i, sum b_j eps_j> = prod_ij (prod_k e_kj^lam_ik)^(a_i b_j)

whose valuation is ``sum_ij a_i b_j (Lam Ebar)_ij``.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Tuple

from . import _exact as ex
from .errors import AsymmetricPairing, MalformedInput, NonInjectivePolarization
from .valfield import ONE, Monomial, format_fraction, parse_fraction

__all__ = [
    "LatticeMatrix", "TropMatrix", "PolarizationType", "AppellHumbertDatum",
    "SmithDecomposition", "tropicalize_matrix", "lambda_times", "pairing",
    "pairing_val", "symmetry_check", "is_polarization", "smith",
    "polarization_rank", "theta_coset_reps", "multiplier_extend",
    "hilbert_polynomial", "riemann_roch_degree", "rigidification_dimension",
]


def _square(rows, what):
    rows = [list(r) for r in rows]
    g = len(rows)
    if g == 0 or any(len(r) != g for r in rows):
        raise ValueError("%s must be a nonempty square grid" % what)
    return g, rows


@dataclass(frozen=True)
class LatticeMatrix:
    """Monomial matrix ``E``; row ``i`` is the image of ``eps_i``."""

    entries: Tuple[Tuple[Monomial, ...], ...]

    def __post_init__(self):
        g, rows = _square(self.entries, "LatticeMatrix")
        rows = tuple(tuple(e if isinstance(e, Monomial) else Monomial(*e) for e in r)
                     for r in rows)
        object.__setattr__(self, "entries", rows)

    @property
    def g(self):
        return len(self.entries)

    @classmethod
    def from_valuations(cls, vals, coeffs=None):
        """Build ``E`` with prescribed ``Ebar`` (coefficients default to 1)."""
        g, vals = _square(vals, "valuation grid")
        if coeffs is None:
            coeffs = [[1] * g for _ in range(g)]
        return cls(tuple(tuple(Monomial(coeffs[i][j], vals[i][j]) for j in range(g))
                         for i in range(g)))

    def transpose(self):
        return LatticeMatrix(tuple(zip(*self.entries)))

    def to_json(self):
        return {"g": self.g, "entries": [[e.to_json() for e in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj):
        try:
            rows = obj["entries"]
            out = cls(tuple(tuple(Monomial.from_json(e) for e in r) for r in rows))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedInput):
                raise
            raise MalformedInput("bad LatticeMatrix: %s" % exc)
        if "g" in obj and obj["g"] != out.g:
            raise MalformedInput("LatticeMatrix: g=%r does not match entries" % obj["g"])
        return out


@dataclass(frozen=True)
class TropMatrix:
    """Rational matrix of valuations ``Ebar``."""

    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        _, rows = _square(self.entries, "TropMatrix")
        object.__setattr__(self, "entries",
                           tuple(tuple(ex.to_fraction(x) for x in r) for r in rows))

    @property
    def g(self):
        return len(self.entries)

    def rows(self):
        return [list(r) for r in self.entries]

    def to_json(self):
        return {"g": self.g, "entries": [[format_fraction(x) for x in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj):
        rows = obj["entries"] if isinstance(obj, dict) else obj
        return cls(tuple(tuple(parse_fraction(x) for x in r) for r in rows))


@dataclass(frozen=True)
class PolarizationType:
    """Integer matrix ``Lam`` with ``lambda = Lam o i``."""

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        _, rows = _square(self.entries, "PolarizationType")
        for r in rows:
            for x in r:
                if isinstance(x, bool) or int(x) != x:
                    raise ValueError("polarization entries must be integers")
        object.__setattr__(self, "entries", tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, g):
        return cls(tuple(tuple(ex.identity(g)[i]) for i in range(g)))

    @property
    def g(self):
        return len(self.entries)

    def rows(self):
        return [list(r) for r in self.entries]

    def det(self):
        return ex.det(self.rows())

    def to_json(self):
        return {"g": self.g, "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, obj):
        rows = obj.get("entries") if isinstance(obj, dict) else obj
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise MalformedInput("PolarizationType: expected a list of integer rows")
        for r in rows:
            for x in r:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise MalformedInput("PolarizationType: entry %r is not an integer" % (x,))
        try:
            out = cls(tuple(tuple(r) for r in rows))
        except ValueError as exc:
            raise MalformedInput(str(exc))
        if isinstance(obj, dict) and "g" in obj and obj["g"] != out.g:
            raise MalformedInput("PolarizationType: g=%r does not match entries" % obj["g"])
        return out


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular."""

    U: Tuple[Tuple[int, ...], ...]
    D: Tuple[Tuple[int, ...], ...]
    V: Tuple[Tuple[int, ...], ...]

    @property
    def diagonal(self):
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]))))


def tropicalize_matrix(E):
    return TropMatrix(tuple(tuple(e.exp for e in row) for row in E.entries))


def lambda_times(E, pol):
    """Monomial matrix ``(Lam E)_ij = prod_k e_kj ** lam_ik``."""
    g = E.g
    lam = pol.entries
    out = []
    for i in range(g):
        row = []
        for j in range(g):
            acc = ONE
            for k in range(g):
                if lam[i][k]:
                    acc = acc * E.entries[k][j] ** lam[i][k]
            row.append(acc)
        out.append(tuple(row))
    return LatticeMatrix(tuple(out))


def pairing(E, pol, a, b):
    """The multiplicative pairing ``<sum a_i eps_i, sum b_j eps_j>``."""
    if len(a) != E.g or len(b) != E.g:
        raise ValueError("vectors must have length g")
    le = lambda_times(E, pol).entries
    acc = ONE
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            if ai * bj:
                acc = acc * le[i][j] ** (ai * bj)
    return acc


def pairing_val(Ebar, pol, a, b):
    """Valuation of the pairing: ``sum_ij a_i b_j (Lam Ebar)_ij``.

    For symmetric ``Lam Ebar`` this is the Euclidean product ``(Lam Ebar a, b)``.
    """
    if len(a) != Ebar.g or len(b) != Ebar.g:
        raise ValueError("vectors must have length g")
    q = ex.matmul(pol.rows(), Ebar.rows())
    return sum(a[i] * q[i][j] * b[j] for i in range(Ebar.g) for j in range(Ebar.g))


def symmetry_check(E, pol, valuation_only=False):
    """Is ``Lam E`` symmetric as a monomial matrix?

    With ``valuation_only`` only the exponents are compared, which is all the
    volume computations depend on.
    """
    le = lambda_times(E, pol).entries
    g = E.g
    for i in range(g):
        for j in range(i):
            x, y = le[i][j], le[j][i]
            if valuation_only:
                if x.exp != y.exp:
                    return False
            elif x != y:
                return False
    return True


def is_polarization(E, pol, valuation_only=False):
    if pol.det() == 0:
        raise NonInjectivePolarization("det Lam = 0")
    if not symmetry_check(E, pol, valuation_only=valuation_only):
        return False
    q = ex.matmul(pol.rows(), tropicalize_matrix(E).rows())
    return ex.is_positive_definite(q)


def smith(A):
    """Smith normal form with transforms.

    ``A`` is a PolarizationType or any integer matrix (list of rows, possibly
    rectangular). Diagonal entries are nonnegative, the nonzero ones come
    first and each divides the next.
    """
    rows = A.rows() if isinstance(A, PolarizationType) else [list(map(int, r)) for r in A]
    m, n = len(rows), len(rows[0])
    a = [r[:] for r in rows]
    U = ex.identity(m)
    V = ex.identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (a, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for M in (a, V):
            for r in M:
                r[dst] += f * r[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(tuple(map(tuple, U)), tuple(map(tuple, a)), tuple(map(tuple, V)))


def polarization_rank(pol):
    """``rk lambda = #(M'/lambda(M))``, the number of independent theta functions."""
    d = pol.det()
    if d == 0:
        raise NonInjectivePolarization("det Lam = 0")
    out = 1
    for x in smith(pol).diagonal:
        out *= x
    return out


def theta_coset_reps(pol, m=1):
    """Representatives of ``M' / (m * lambda(M))``.

    They come from the box ``0 <= y_i < d_i`` of the Smith form of ``m Lam``,
    pulled back through ``U``; the order is lexicographic in ``y``.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    if pol.det() == 0:
        raise NonInjectivePolarization("det Lam = 0")
    scaled = [[m * x for x in r] for r in pol.rows()]
    sd = smith(scaled)
    uinv = ex.int_inverse([list(r) for r in sd.U])
    reps = []
    for y in cartesian(*[range(d) for d in sd.diagonal]):
        reps.append(tuple(ex.matvec(uinv, y)))
    return reps


@dataclass(frozen=True)
class AppellHumbertDatum:
    """A pair ``(lambda, r)`` given by ``Lam`` and the values ``r(eps_i)``.

    If ``lattice`` is supplied the symmetry needed for the cocycle to extend
    is checked immediately.
    """

    pol: PolarizationType
    basis_multipliers: Tuple[Monomial, ...]
    lattice: "LatticeMatrix | None" = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "basis_multipliers", tuple(self.basis_multipliers))
        if len(self.basis_multipliers) != self.pol.g:
            raise ValueError("need one multiplier per basis vector")
        if self.lattice is not None and not symmetry_check(self.lattice, self.pol):
            raise AsymmetricPairing("Lam E is not symmetric; r does not extend")


def multiplier_extend(datum, E, m):
    """Extend ``r`` from the basis to ``m`` using
    ``r(m1 + m2) = r(m1) r(m2) <m1, m2>``, one basis step at a time."""
    pol = datum.pol
    if not symmetry_check(E, pol):
        raise AsymmetricPairing("Lam E is not symmetric; r does not extend")
    g = E.g
    if len(m) != g:
        raise ValueError("m must have length g")
    cur = [0] * g
    r = ONE
    for i in range(g):
        step = 1 if m[i] > 0 else -1
        e_i = [0] * g
        e_i[i] = step
        if step > 0:
            r_step = datum.basis_multipliers[i]
        else:
            # r(0) = r(e) r(-e) <e, -e>
            e_pos = [0] * g
            e_pos[i] = 1
            r_step = pairing(E, pol, e_pos, e_pos) / datum.basis_multipliers[i]
        for _ in range(abs(m[i])):
            r = r * r_step * pairing(E, pol, cur, e_i)
            cur[i] += step
    return r


def hilbert_polynomial(g, d, variant="paper"):
    """Coefficients (index = power of x) of the Hilbert polynomial.

    ``variant="paper"`` gives ``d x^g``; ``"rigidified"`` gives ``6^g d x^g``,
    matching the dimension of sections of the cube of the polarization.
    """
    if g < 1 or d < 1:
        raise ValueError("g and d must be positive")
    if variant == "paper":
        lead = d
    elif variant == "rigidified":
        lead = 6 ** g * d
    else:
        raise ValueError("unknown variant %r" % (variant,))
    return tuple([0] * g + [lead])


def rigidification_dimension(pol):
    """``6^g * rk lambda``: the number of theta coefficients for ``L^3``."""
    return len(theta_coset_reps(pol, 6))


def riemann_roch_degree(chi):
    return chi * chi
