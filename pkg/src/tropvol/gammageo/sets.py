"""Definable subsets of Gamma^n as disjoint unions of convex cells.

A :class:`Cell` is a conjunction of constraints with relations ``<``, ``<=``
or ``=``. :func:`normalize` turns an arbitrary Boolean formula into pairwise
disjoint nonempty cells by splitting along the boundary hyperplanes of its
atoms (smallest hyperplane first), pruning empty branches and merging the
``<``/``=`` (or ``=``/``>``) branches whenever they lead to the same residual
formula.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .. import _exact as ex
from ..errors import SingularMatrix
from . import lp
from .formula import (FALSE, TRUE, Constraint, Formula, atom, conj, disj, formula_dim,
                      parse_formula)

__all__ = ["Cell", "DefinableSet", "normalize", "product", "affine_image",
           "half_open_ppd", "project", "fiber", "box", "point", "interval"]


def _row_of(key, signs):
    """Constraint for the canonical hyperplane ``key`` restricted to ``signs``."""
    coeffs, rhs = key
    signs = frozenset(signs)
    if signs == {-1}:
        rel = "<"
    elif signs == {0}:
        rel = "="
    elif signs == {1}:
        rel = ">"
    elif signs == {-1, 0}:
        rel = "<="
    elif signs == {0, 1}:
        rel = ">="
    else:
        raise ValueError(signs)
    c = Constraint(coeffs, rel, rhs)
    if rel in (">", ">="):
        c = Constraint(tuple(-x for x in coeffs), {">": "<", ">=": "<="}[rel], -rhs)
    return c


def _negations(c):
    """Constraints whose union is the complement of ``c``."""
    a, rel, b = c.as_row()
    if rel == "<":
        return [Constraint(a, ">=", b)]
    if rel == "<=":
        return [Constraint(a, ">", b)]
    return [Constraint(a, "<", b), Constraint(a, ">", b)]


def _rows(constraints):
    return [c.as_row() for c in constraints]


@dataclass(frozen=True)
class Cell:
    n: int
    constraints: Tuple[Constraint, ...]

    def rows(self):
        return _rows(self.constraints)

    def is_empty(self):
        return not lp.feasible(self.rows(), self.n)

    def sample(self):
        """A rational point of the cell (relative interior if it has strict rows)."""
        return lp.find_point(self.rows(), self.n)

    def holds(self, x):
        return all(c.holds(x) for c in self.constraints)

    def formula(self):
        return conj([atom(c) for c in self.constraints])

    def is_bounded(self):
        for i in range(self.n):
            for s in (1, -1):
                c = [0] * self.n
                c[i] = s
                status, _, _ = lp.maximize(c, self.rows(), self.n)
                if status == "unbounded":
                    return False
        return True

    def __str__(self):
        if not self.constraints:
            return "true"
        return " & ".join(str(c) for c in self.constraints)


class DefinableSet:
    """Finite disjoint union of cells in Gamma^n."""

    def __init__(self, n, cells=()):
        self.n = n
        self.cells = tuple(cells)
        for c in self.cells:
            if c.n != n:
                raise ValueError("cell dimension %d != %d" % (c.n, n))

    # construction ---------------------------------------------------------
    @classmethod
    def from_formula(cls, formula, n=None):
        return normalize(formula, n)

    @classmethod
    def parse(cls, text, n=None):
        f, n = parse_formula(text, n)
        return normalize(f, n)

    @classmethod
    def empty(cls, n):
        return cls(n, ())

    @classmethod
    def everything(cls, n):
        return cls(n, (Cell(n, ()),))

    # predicates -------------------------------------------------------------
    def is_empty(self):
        return all(c.is_empty() for c in self.cells)

    def __contains__(self, x):
        return any(c.holds(x) for c in self.cells)

    def formula(self):
        return disj([c.formula() for c in self.cells])

    def equals(self, other):
        if self.n != other.n:
            return False
        return normalize(self.formula() - other.formula(), self.n).is_empty() and \
            normalize(other.formula() - self.formula(), self.n).is_empty()

    def is_bounded(self):
        return all(c.is_bounded() for c in self.cells)

    # Boolean algebra ----------------------------------------------------------
    def _check(self, other):
        if other.n != self.n:
            raise ValueError("ambient dimensions differ: %d vs %d" % (self.n, other.n))

    def __or__(self, other):
        self._check(other)
        return normalize(self.formula() | other.formula(), self.n)

    def __and__(self, other):
        self._check(other)
        return normalize(self.formula() & other.formula(), self.n)

    def __sub__(self, other):
        self._check(other)
        return normalize(self.formula() - other.formula(), self.n)

    def complement(self):
        return normalize(~self.formula(), self.n)

    def __mul__(self, other):
        return product(self, other)

    # serialization ------------------------------------------------------------
    def to_json(self):
        return {"n": self.n, "cells": [[c.to_json() for c in cell.constraints]
                                       for cell in self.cells]}

    @classmethod
    def from_json(cls, obj):
        n = obj["n"]
        cells = [Cell(n, tuple(Constraint.from_json(c) for c in cell)) for cell in obj["cells"]]
        return cls(n, cells)

    def __repr__(self):
        return "DefinableSet(n=%d, %d cells)" % (self.n, len(self.cells))

    def __str__(self):
        if not self.cells:
            return "empty"
        return "\n".join("{%s}" % c for c in self.cells)


def _prune(constraints, n):
    """Drop constraints implied by the others; sort canonically."""
    cons = sorted(constraints, key=Constraint.sort_key)
    i = 0
    while i < len(cons):
        rest = cons[:i] + cons[i + 1:]
        implied = all(not lp.feasible(_rows(rest + [neg]), n) for neg in _negations(cons[i]))
        if implied:
            cons = rest
        else:
            i += 1
    return tuple(cons)


def normalize(formula, n=None, prune=True):
    """Disjoint cell decomposition of the set defined by ``formula``."""
    if n is None:
        n = formula_dim(formula)
        if n is None:
            raise ValueError("cannot infer dimension of a constant formula")
    cells = []

    def rec(phi, region):
        if phi == FALSE:
            return
        if phi == TRUE:
            cells.append(region)
            return
        keys = {}
        for c in phi.atoms():
            h, _ = c.hyperplane()
            keys[h] = True
        key = min(keys)
        branches = {}
        for s in (-1, 0, 1):
            row = _row_of(key, {s})
            if lp.feasible(_rows(region + [row]), n):
                branches[s] = phi.substitute(key, s)
        if not branches:
            return
        present = sorted(branches)
        groups = []  # (signs, residual)
        if len(set(branches.values())) == 1:
            groups.append((tuple(present), branches[present[0]]))
        elif -1 in branches and 0 in branches and branches[-1] == branches[0]:
            groups.append(((-1, 0), branches[0]))
            if 1 in branches:
                groups.append(((1,), branches[1]))
        elif 1 in branches and 0 in branches and branches[1] == branches[0]:
            if -1 in branches:
                groups.append(((-1,), branches[-1]))
            groups.append(((0, 1), branches[0]))
        else:
            groups = [((s,), branches[s]) for s in present]
        for signs, residual in groups:
            if set(signs) == set(present):
                rec(residual, region)  # the region already implies it
            else:
                rec(residual, region + [_row_of(key, signs)])

    rec(formula, [])
    if prune:
        out = [Cell(n, _prune(r, n)) for r in cells]
    else:
        out = [Cell(n, tuple(r)) for r in cells]
    return DefinableSet(n, out)


# --- constructors ------------------------------------------------------------

def box(lo, hi, closed=(True, True)):
    """``prod [lo_i, hi_i]`` with per-side closedness ``closed=(left, right)``."""
    n = len(lo)
    cons = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        cons.append(Constraint(tuple(e), ">=" if closed[0] else ">", lo[i]))
        cons.append(Constraint(tuple(e), "<=" if closed[1] else "<", hi[i]))
    return normalize(conj([atom(c) for c in cons]), n)


def point(p):
    n = len(p)
    cons = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        cons.append(atom(Constraint(tuple(e), "=", p[i])))
    return normalize(conj(cons), n)


def interval(lo, hi, closed=(True, False)):
    return box([lo], [hi], closed)


# --- operations ----------------------------------------------------------------

def product(S, T):
    cells = []
    for a in S.cells:
        for b in T.cells:
            cons = [c.pad(0, T.n) for c in a.constraints] + \
                   [c.pad(S.n, 0) for c in b.constraints]
            cells.append(Cell(S.n + T.n, tuple(sorted(cons, key=Constraint.sort_key))))
    return DefinableSet(S.n + T.n, cells)


def affine_image(S, A, shift=None):
    """``{A x + shift : x in S}`` for an invertible rational matrix ``A``."""
    n = S.n
    A = [list(r) for r in A]
    if len(A) != n or any(len(r) != n for r in A):
        raise ValueError("matrix must be %d x %d" % (n, n))
    try:
        inv = ex.inverse(A)
    except ZeroDivisionError:
        raise SingularMatrix("affine map is not invertible")
    shift = [ex.to_fraction(s) for s in (shift if shift is not None else [0] * n)]
    cells = []
    for cell in S.cells:
        cons = []
        for c in cell.constraints:
            a = [ex.dot(c.coeffs, col) for col in zip(*inv)]
            cons.append(Constraint(tuple(a), c.rel, c.rhs + ex.dot(a, shift)))
        cells.append(Cell(n, tuple(sorted(cons, key=Constraint.sort_key))))
    return DefinableSet(n, cells)


def _trop_rows(Ebar):
    if hasattr(Ebar, "rows"):
        return Ebar.rows()
    return [list(r) for r in Ebar]


def half_open_ppd(Ebar, closed=False):
    """``{Ebar^T u : u in [0,1)^g}``, the tropical fundamental domain.

    ``closed=True`` gives the closed parallelepiped (a diagnostic control; it
    is not a fundamental domain).
    """
    rows = _trop_rows(Ebar)
    g = len(rows)
    try:
        w = ex.inverse(ex.transpose(rows))
    except ZeroDivisionError:
        raise SingularMatrix("Ebar is singular")
    cons = []
    for i in range(g):
        cons.append(Constraint(tuple(w[i]), ">=", 0))
        cons.append(Constraint(tuple(w[i]), "<=" if closed else "<", 1))
    cell = Cell(g, tuple(sorted(cons, key=Constraint.sort_key)))
    return DefinableSet(g, (cell,))


def _primitive_row(a, rel, b):
    ints, rhs, _ = ex.primitive(a, b)
    return tuple(ints), rel, rhs


def _fm_eliminate(rows, n, var):
    """Eliminate coordinate ``var`` from rows (coeffs, rel, rhs), rel in {<,<=,=}."""
    for idx, (a, rel, b) in enumerate(rows):
        if rel == "=" and a[var] != 0:
            piv = Fraction(a[var])
            out = []
            for j, (c, r2, d) in enumerate(rows):
                if j == idx:
                    continue
                f = Fraction(c[var]) / piv
                if f:
                    c = [ci - f * ai for ci, ai in zip(c, a)]
                    d = d - f * b
                out.append((tuple(c), r2, d))
            return out
    pos, negs, out = [], [], []
    for a, rel, b in rows:
        if a[var] > 0:
            pos.append((a, rel, b))
        elif a[var] < 0:
            negs.append((a, rel, b))
        else:
            out.append((a, rel, b))
    for a, r1, b in pos:
        for c, r2, d in negs:
            fa, fc = Fraction(-c[var]), Fraction(a[var])
            coeffs = tuple(fa * x + fc * y for x, y in zip(a, c))
            rel = "<" if "<" in (r1, r2) else "<="
            out.append((coeffs, rel, fa * b + fc * d))
    return out


def _dedupe(rows):
    """Normalize rows, drop trivial ones, keep the tightest per direction.

    Returns None if a trivial row is violated.
    """
    best = {}
    eqs = set()
    for a, rel, b in rows:
        if not any(a):
            if b < 0 or (b == 0 and rel == "<") or (rel == "=" and b != 0):
                return None
            continue
        a, rel, b = _primitive_row(a, rel, b)
        if rel == "=":
            eqs.add((a, b))
            continue
        cur = best.get(a)
        if cur is None or b < cur[1] or (b == cur[1] and rel == "<"):
            best[a] = (rel, b)
    out = [(a, "=", b) for a, b in sorted(eqs)]
    out += [(a, rel, b) for a, (rel, b) in sorted(best.items())]
    return out


def project(S, keep):
    """Coordinate projection onto ``keep`` (Fourier-Motzkin, then normalize)."""
    keep = list(keep)
    if sorted(set(keep)) != sorted(keep) or any(not 0 <= k < S.n for k in keep):
        raise ValueError("invalid coordinate selection %r" % (keep,))
    drop = [i for i in range(S.n) if i not in keep]
    parts = []
    for cell in S.cells:
        rows = [(tuple(Fraction(x) for x in a), rel, Fraction(b)) for a, rel, b in cell.rows()]
        rows = _dedupe(rows)
        for v in drop:
            if rows is None:
                break
            rows = _fm_eliminate(rows, S.n, v)
            rows = _dedupe(rows)
            if rows is not None and len(rows) > 12:
                rows = _drop_redundant(rows, S.n)
        if rows is None:
            continue
        cons = [Constraint(tuple(a[k] for k in keep), rel, b) for a, rel, b in rows]
        parts.append(conj([atom(c) for c in cons]))
    return normalize(disj(parts), len(keep)) if parts else DefinableSet.empty(len(keep))


def _drop_redundant(rows, n):
    i = 0
    rows = list(rows)
    while i < len(rows):
        a, rel, b = rows[i]
        if rel == "=":
            i += 1
            continue
        rest = rows[:i] + rows[i + 1:]
        flipped = (tuple(-x for x in a), "<=" if rel == "<" else "<", -b)
        if not lp.feasible(rest + [flipped], n):
            rows = rest
        else:
            i += 1
    return rows


def fiber(S, xi, fixed=None):
    """Fix the coordinates ``fixed`` (default: the leading ones) to ``xi``.

    The result lives in the remaining coordinates, in their original order.
    """
    xi = [ex.to_fraction(v) for v in xi]
    if fixed is None:
        fixed = list(range(len(xi)))
    fixed = list(fixed)
    if len(fixed) != len(xi):
        raise ValueError("need one value per fixed coordinate")
    rest = [i for i in range(S.n) if i not in fixed]
    parts = []
    for cell in S.cells:
        cons = []
        for c in cell.constraints:
            shift = sum(c.coeffs[i] * v for i, v in zip(fixed, xi))
            cons.append(atom(Constraint(tuple(c.coeffs[i] for i in rest), c.rel, c.rhs - shift)))
        parts.append(conj(cons))
    m = len(rest)
    if m == 0:
        raise ValueError("fiber over all coordinates is a point test; use `in`")
    f = disj(parts)
    if f == FALSE:
        return DefinableSet.empty(m)
    if f == TRUE:
        return DefinableSet.everything(m)
    return normalize(f, m)
