"""The monomial action of GL_g(Z) on lattice matrices and form reduction.

Convention: ``(Om . E)_kj = prod_i e_ij ** om_ki``, so that the valuation
matrix transforms as ``Ebar -> Om Ebar`` (rows are recombined like the basis
``eps'_k = sum_i om_ki eps_i``). ``transpose=True`` switches to
``om_ik``, i.e. ``Ebar -> Om^T Ebar``.

Reduction acts on the pairing form ``Q = Lam Ebar`` by congruence
``Q -> Om Q Om^T``. On the lattice side this is the row action followed by
the same action on columns, and ``Lam`` is conjugated along to
``Om Lam Om^-1``.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from . import _exact as ex
from .errors import NotPositiveDefinite
from .lattice import LatticeMatrix, PolarizationType, TropMatrix, tropicalize_matrix
from .valfield import ONE

__all__ = ["UnimodularMatrix", "generators", "act", "act_columns", "congruence",
           "form_of", "in_fundamental_domain", "reduce", "Reduction"]


class UnimodularMatrix(tuple):
    """Integer square matrix with determinant +-1, stored as a tuple of rows."""

    def __new__(cls, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("unimodular matrix must be square")
        if abs(ex.det([list(r) for r in rows])) != 1:
            raise ValueError("determinant must be +-1")
        return super().__new__(cls, rows)

    @classmethod
    def identity(cls, g):
        return cls(ex.identity(g))

    @property
    def g(self):
        return len(self)

    def rows(self):
        return [list(r) for r in self]

    def __matmul__(self, other):
        return UnimodularMatrix(ex.matmul(self.rows(), [list(r) for r in other]))

    def inverse(self):
        return UnimodularMatrix(ex.int_inverse(self.rows()))

    def transpose(self):
        return UnimodularMatrix(ex.transpose(self.rows()))


def generators(g):
    """Single sign flips followed by the transvections ``Id + E_ij`` (i != j)."""
    out = []
    for i in range(g):
        m = ex.identity(g)
        m[i][i] = -1
        out.append(UnimodularMatrix(m))
    for i in range(g):
        for j in range(g):
            if i != j:
                m = ex.identity(g)
                m[i][j] = 1
                out.append(UnimodularMatrix(m))
    return out


def act(om, E, transpose=False):
    g = E.g
    if len(om) != g:
        raise ValueError("dimension mismatch")
    rows = []
    for k in range(g):
        row = []
        for j in range(g):
            acc = ONE
            for i in range(g):
                w = om[i][k] if transpose else om[k][i]
                if w:
                    acc = acc * E.entries[i][j] ** w
            row.append(acc)
        rows.append(tuple(row))
    return LatticeMatrix(tuple(rows))


def act_columns(om, E):
    """Right action on coordinates: ``Ebar -> Ebar Om^T``."""
    return act(om, E.transpose()).transpose()


def congruence(om, E):
    """``Ebar -> Om Ebar Om^T`` realized monomially."""
    return act_columns(om, act(om, E))


def form_of(Ebar, pol):
    """The rational form ``Q = Lam Ebar`` as a list of rows."""
    if isinstance(Ebar, LatticeMatrix):
        Ebar = tropicalize_matrix(Ebar)
    return ex.matmul(pol.rows(), Ebar.rows())


def _check_form(q):
    if not ex.is_symmetric(q) or not ex.is_positive_definite(q):
        raise NotPositiveDefinite("Lam Ebar is not symmetric positive definite")


def _q_in_domain(q):
    g = len(q)
    for i in range(g - 1):
        if q[i][i] > q[i + 1][i + 1]:
            return False
        if not 0 <= 2 * q[i][i + 1] <= q[i][i]:
            return False
    for i in range(g):
        for j in range(i + 2, g):
            if abs(2 * q[i][j]) > q[i][i]:
                return False
    return True


def in_fundamental_domain(Ebar, pol):
    """Reduction conditions on ``Q = Lam Ebar``.

    Consecutive: ``Q_11 <= ... <= Q_gg`` and ``0 <= 2 Q_i,i+1 <= Q_ii``.
    Non-consecutive pairs (g >= 3) must be size reduced, ``|2 Q_ij| <= Q_ii``
    for ``i < j``; these are the fixed points of :func:`reduce`.
    """
    q = form_of(Ebar, pol)
    _check_form(q)
    return _q_in_domain(q)


@dataclass(frozen=True)
class Reduction:
    lattice: LatticeMatrix
    omega: UnimodularMatrix
    pol: PolarizationType
    steps: Tuple[tuple, ...]

    def __iter__(self):
        # allows ``E_red, om = reduce(E, pol)[:2]``-style unpacking
        return iter((self.lattice, self.omega))

    def __getitem__(self, i):
        return (self.lattice, self.omega)[i]

    def form(self):
        return form_of(self.lattice, self.pol)


def _nearest(x):
    """Nearest integer to a Fraction, ties toward zero."""
    fl = x.numerator // x.denominator
    r = x - fl
    if r > Fraction(1, 2) or (r == Fraction(1, 2) and fl < 0):
        return fl + 1
    return fl


def reduce(E, pol):
    """Bring ``Q = Lam Ebar`` into the fundamental domain.

    Moves, applied to ``Q`` by congruence: size reduction ``b_i -= s b_j``
    while ``|2 Q_ij| > Q_jj`` (trace strictly decreases), a stable sort of
    the diagonal (trace fixed, diagonal decreases lexicographically) and
    sign flips making ``Q_i,i+1 >= 0``. Returns a :class:`Reduction`.
    """
    g = E.g
    q = [list(map(Fraction, r)) for r in form_of(E, pol)]
    _check_form(q)
    om = ex.identity(g)
    steps = []

    def apply(move):
        # move is an integer matrix M; Q -> M Q M^T, om -> M om
        nonlocal q, om
        q = ex.matmul(ex.matmul(move, q), ex.transpose(move))
        om = ex.matmul(move, om)

    changed = True
    while changed:
        changed = False
        for i in range(g):
            for j in range(g):
                if i == j or abs(2 * q[i][j]) <= q[j][j]:
                    continue
                s = _nearest(q[i][j] / q[j][j])
                move = ex.identity(g)
                move[i][j] = -s
                apply(move)
                steps.append(("transvection", i, j, -s))
                changed = True

    order = sorted(range(g), key=lambda i: q[i][i])
    if order != list(range(g)):
        move = [[int(order[k] == i) for i in range(g)] for k in range(g)]
        apply(move)
        steps.append(("permute", tuple(order)))

    for i in range(g - 1):
        if q[i][i + 1] < 0:
            move = ex.identity(g)
            move[i + 1][i + 1] = -1
            apply(move)
            steps.append(("flip", i + 1))

    assert _q_in_domain(q), q
    omega = UnimodularMatrix(om)
    pol_red = PolarizationType(ex.matmul(ex.matmul(omega.rows(), pol.rows()),
                                         omega.inverse().rows()))
    E_red = congruence(omega, E)
    return Reduction(E_red, omega, pol_red, tuple(steps))
