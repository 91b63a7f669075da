"""Families of polarized tori over a polyhedral base and their volumes.

A family assigns to each base point ``sigma`` in ``Gamma^m`` a trop matrix
``Ebar(sigma)`` whose entries are affine in ``sigma``. Its tropical total
space is the set of ``(sigma, x)`` with ``x`` in the half-open fundamental
parallelepiped of ``Ebar(sigma)``.

The total space is polyhedral exactly when each row of ``Ebar(sigma)`` moves
along a fixed line, ``Ebar(sigma) = diag(c(sigma)) B``; other families are
rejected with :class:`NonPolyhedralFamily`.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Tuple

from . import _exact as ex
from .errors import (FiberClassMismatch, MalformedInput, NonPolyhedralFamily,
                     NotPositiveDefiniteAt, SymmetryViolation, TropvolError,
                     UnboundedUnverifiable)
from .gammageo import (Cell, Constraint, DefinableSet, chi_prime, fiber, formula_from_json,
                       formula_to_json, normalize)
from .lattice import PolarizationType
from .motclass import ZERO, class_of_torus
from .valfield import format_fraction, parse_fraction

__all__ = ["AffineFunction", "TorusFamily", "validate_family", "total_space_trop",
           "motivic_volume_direct", "motivic_volume_fubini", "verify_vanishing",
           "volume_classes"]

FIBER_KINDS = ("half_open", "closed")
_MAX_DOUBLINGS = 64


@dataclass(frozen=True)
class AffineFunction:
    """``coeffs . sigma + const`` with integer ``coeffs``."""

    coeffs: Tuple[int, ...]
    const: Fraction = Fraction(0)

    def __post_init__(self):
        for c in self.coeffs:
            if isinstance(c, bool) or int(c) != c:
                raise ValueError("affine coefficients must be integers")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "const", ex.to_fraction(self.const))

    @classmethod
    def constant(cls, value, m):
        return cls((0,) * m, value)

    @property
    def m(self):
        return len(self.coeffs)

    def __call__(self, sigma):
        return ex.dot(self.coeffs, sigma) + self.const if self.coeffs else self.const

    def linear(self, direction):
        """Derivative along ``direction``."""
        return ex.dot(self.coeffs, direction) if self.coeffs else Fraction(0)

    def vector(self):
        """``(coeffs..., const)`` as Fractions."""
        return tuple(Fraction(c) for c in self.coeffs) + (self.const,)

    def to_json(self):
        return {"coeffs": list(self.coeffs), "const": format_fraction(self.const)}

    @classmethod
    def from_json(cls, obj, m=None):
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            if m is None:
                raise MalformedInput("bare constant entry needs the base dimension")
            return cls.constant(parse_fraction(obj, "const"), m)
        if not isinstance(obj, dict):
            raise MalformedInput("affine entry must be an object or a constant")
        coeffs = obj.get("coeffs", [0] * (m or 0))
        if not isinstance(coeffs, list) or any(
                isinstance(c, bool) or not isinstance(c, int) for c in coeffs):
            raise MalformedInput("affine 'coeffs' must be a list of integers")
        return cls(tuple(coeffs), parse_fraction(obj.get("const", 0), "const"))

    def __str__(self):
        parts = ["%s*s%d" % (c, i + 1) for i, c in enumerate(self.coeffs) if c]
        if self.const or not parts:
            parts.append(format_fraction(self.const))
        return " + ".join(parts)


@dataclass(frozen=True)
class TorusFamily:
    g: int
    base: DefinableSet
    lattice_map: Tuple[Tuple[AffineFunction, ...], ...]
    pol: PolarizationType = None
    fiber: str = "half_open"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.lattice_map)
        if len(rows) != self.g or any(len(r) != self.g for r in rows):
            raise ValueError("lattice_map must be %d x %d" % (self.g, self.g))
        for r in rows:
            for a in r:
                if a.m != self.base.n:
                    raise ValueError("affine entry has %d coefficients, base has dimension %d"
                                     % (a.m, self.base.n))
        object.__setattr__(self, "lattice_map", rows)
        if self.pol is None:
            object.__setattr__(self, "pol", PolarizationType.identity(self.g))
        if self.pol.g != self.g:
            raise ValueError("polarization type has size %d, expected %d" % (self.pol.g, self.g))
        if self.fiber not in FIBER_KINDS:
            raise ValueError("fiber must be one of %s" % (FIBER_KINDS,))

    @property
    def m(self):
        return self.base.n

    @classmethod
    def constant(cls, Ebar, pol=None, base=None, fiber="half_open"):
        """Family with a fixed trop matrix; the base defaults to a point (m = 0)."""
        base = base if base is not None else DefinableSet.everything(0)
        rows = tuple(tuple(AffineFunction.constant(ex.to_fraction(x), base.n) for x in r)
                     for r in Ebar)
        return cls(len(rows), base, rows, pol, fiber)

    def ebar(self, sigma):
        sigma = [ex.to_fraction(s) for s in sigma]
        return [[a(sigma) for a in r] for r in self.lattice_map]

    def form(self, sigma):
        """``Lam Ebar(sigma)``."""
        return ex.matmul(self.pol.rows(), self.ebar(sigma))

    def form_derivative(self, direction):
        d = [[a.linear(direction) for a in r] for r in self.lattice_map]
        return ex.matmul(self.pol.rows(), d)

    def to_json(self):
        return {
            "g": self.g,
            "m": self.m,
            "pol": self.pol.to_json()["entries"],
            "base": formula_to_json(self.base.formula()),
            "lattice_map": [[a.to_json() for a in r] for r in self.lattice_map],
            "fiber": self.fiber,
        }

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise MalformedInput("family must be a JSON object")
        g = obj.get("g")
        if isinstance(g, bool) or not isinstance(g, int) or g < 1:
            raise MalformedInput("family 'g' must be a positive integer")
        grid = obj.get("lattice_map")
        if not isinstance(grid, list) or len(grid) != g or any(
                not isinstance(r, list) or len(r) != g for r in grid):
            raise MalformedInput("'lattice_map' must be a %d x %d grid" % (g, g))
        m = obj.get("m")
        if m is None:
            m = next((len(e["coeffs"]) for r in grid for e in r
                      if isinstance(e, dict) and "coeffs" in e), 0)
        if isinstance(m, bool) or not isinstance(m, int) or m < 0:
            raise MalformedInput("family 'm' must be a nonnegative integer")
        rows = []
        for r in grid:
            row = []
            for e in r:
                a = AffineFunction.from_json(e, m)
                if a.m != m:
                    raise MalformedInput("affine entry has %d coefficients, expected %d"
                                         % (a.m, m))
                row.append(a)
            rows.append(tuple(row))
        if "base" in obj:
            base = normalize(formula_from_json(obj["base"], m), m)
        elif m == 0:
            base = DefinableSet.everything(0)
        else:
            raise MalformedInput("family over a positive-dimensional base needs 'base'")
        pol = PolarizationType.from_json(obj["pol"]) if "pol" in obj else None
        kind = obj.get("fiber", "half_open")
        if kind not in FIBER_KINDS:
            raise MalformedInput("'fiber' must be one of %s" % ", ".join(FIBER_KINDS))
        try:
            return cls(g, base, tuple(rows), pol, kind)
        except ValueError as exc:
            raise MalformedInput(str(exc))


# --- validation ----------------------------------------------------------------

def _check_symmetry(f):
    lam = f.pol.rows()
    g = f.g
    vecs = [[a.vector() for a in r] for r in f.lattice_map]
    width = f.m + 1
    q = [[tuple(sum(lam[i][k] * vecs[k][j][p] for k in range(g)) for p in range(width))
          for j in range(g)] for i in range(g)]
    for i in range(g):
        for j in range(i):
            if q[i][j] != q[j][i]:
                raise SymmetryViolation(
                    "entries (%d,%d) and (%d,%d) of Lam.Ebar differ as affine functions"
                    % (i + 1, j + 1, j + 1, i + 1))


def _closed_rows(cell):
    eqs, ineqs = [], []
    for a, rel, b in cell.rows():
        a = [Fraction(x) for x in a]
        (eqs if rel == "=" else ineqs).append((a, b))
    return eqs, ineqs


def _geometry(cell):
    """Vertices, extreme rays and lineality basis of the closure of ``cell``.

    Vertices and rays are those of the closure intersected with the orthogonal
    complement of the lineality space, so ``closure = conv(V) + cone(R) + lin``.
    """
    m = cell.n
    eqs, ineqs = _closed_rows(cell)
    lineality = ex.nullspace([a for a, _ in eqs + ineqs], m) if (eqs or ineqs) else \
        ex.nullspace([], m)
    eqs = eqs + [(list(v), Fraction(0)) for v in lineality]
    eq_rank = ex.rank([a for a, _ in eqs]) if eqs else 0
    need = m - eq_rank

    def holds(x, rhs_scale):
        return all(ex.dot(a, x) <= b * rhs_scale for a, b in ineqs) and \
            all(ex.dot(a, x) == b * rhs_scale for a, b in eqs)

    vertices = set()
    for combo in combinations(ineqs, need):
        rows = eqs + list(combo)
        A = [a for a, _ in rows]
        if ex.rank(A) != m:
            continue
        x0, _ = ex.solve_affine(A, [b for _, b in rows], m) or (None, None)
        if x0 is not None and holds(x0, 1):
            vertices.add(tuple(x0))
    rays = set()
    if need >= 1:
        for combo in combinations(ineqs, need - 1):
            rows = [a for a, _ in eqs] + [a for a, _ in combo]
            ns = ex.nullspace(rows, m)
            if len(ns) != 1:
                continue
            for s in (1, -1):
                r = [s * x for x in ns[0]]
                if holds(r, 0):
                    k = next(abs(x) for x in r if x)
                    rays.add(tuple(x / k for x in r))
    return sorted(vertices), sorted(rays), [tuple(v) for v in lineality]


def _find_witness(f, start, direction):
    """Walk from ``start`` along ``direction`` until positivity breaks."""
    step = Fraction(1)
    for _ in range(_MAX_DOUBLINGS):
        p = [s + step * d for s, d in zip(start, direction)]
        if not ex.is_positive_definite(f.form(p)):
            return p
        step *= 2
    return None


def validate_family(f):
    """Check symmetry (as affine identities) and fiberwise positivity.

    Positivity on a cell is checked at the vertices of its closure, plus
    positive semidefinite slopes along its recession directions; lineality
    directions must not change the form at all. Returns a report dict.
    """
    _check_symmetry(f)
    _row_scaling(f)
    n_vertices = n_rays = 0
    for cell in f.base.cells:
        vertices, rays, lineality = _geometry(cell)
        for v in vertices:
            if not ex.is_positive_definite(f.form(v)):
                raise NotPositiveDefiniteAt(v, in_base=cell.holds(v))
        anchor = list(vertices[0]) if vertices else cell.sample()
        for r in rays:
            d = f.form_derivative(r)
            if not ex.is_positive_semidefinite(d):
                w = _find_witness(f, anchor, r)
                if w is None:
                    raise UnboundedUnverifiable(
                        "slope along recession ray %s is not semidefinite" % (r,))
                raise NotPositiveDefiniteAt(w, in_base=cell.holds(w))
        for v in lineality:
            if any(any(x for x in row) for row in f.form_derivative(v)):
                for s in (1, -1):
                    w = _find_witness(f, anchor, [s * x for x in v])
                    if w is not None:
                        raise NotPositiveDefiniteAt(w, in_base=cell.holds(w))
                raise UnboundedUnverifiable(
                    "form varies along the lineality direction %s" % (v,))
        n_vertices += len(vertices)
        n_rays += len(rays)
    return {"valid": True, "symmetric": True, "cells": len(f.base.cells),
            "vertices_checked": n_vertices, "rays_checked": n_rays}


# --- total space --------------------------------------------------------------------

def _row_scaling(f):
    """Write ``Ebar(sigma) = diag(c(sigma)) B``; returns (B, [c_i as vectors])."""
    if "scaling" in f._cache:
        return f._cache["scaling"]
    B, cs = [], []
    for i, row in enumerate(f.lattice_map):
        M = [a.vector() for a in row]
        p = next((p for p in range(f.m + 1) if any(v[p] for v in M)), None)
        if p is None:
            raise NonPolyhedralFamily("row %d of Ebar vanishes identically" % (i + 1))
        b = [v[p] for v in M]
        j0 = next(j for j, x in enumerate(b) if x)
        w = [x / b[j0] for x in M[j0]]
        if any(M[j][q] != b[j] * w[q] for j in range(f.g) for q in range(f.m + 1)):
            raise NonPolyhedralFamily(
                "row %d of Ebar does not move along a fixed direction; the swept "
                "parallelepipeds are not polyhedral" % (i + 1))
        B.append(b)
        cs.append(w)
    f._cache["scaling"] = (B, cs)
    return B, cs


def _fiber_constraints(f, cell, B, cs):
    m, g = f.m, f.g
    try:
        W = ex.inverse(ex.transpose(B))
    except ZeroDivisionError:
        raise NonPolyhedralFamily("row directions of Ebar are linearly dependent")
    sigma = cell.sample()
    upper = "<=" if f.fiber == "closed" else "<"
    cons = []
    for i in range(g):
        c_lin = [-x for x in cs[i][:m]]
        c_const = cs[i][m]
        c_val = ex.dot(cs[i][:m], sigma) + c_const if m else c_const
        y = list(W[i])
        # 0 <= y_i < c_i(sigma), or c_i(sigma) < y_i <= 0 when c_i is negative
        lower = Constraint(tuple([Fraction(0)] * m + y), ">=" if c_val > 0 else "<=", 0)
        top = Constraint(tuple(c_lin + y), upper if c_val > 0 else
                         {"<": ">", "<=": ">="}[upper], c_const)
        cons += [lower, top]
    return cons


def total_space_trop(f):
    """``{(sigma, x) : sigma in base, x in the fundamental parallelepiped of Ebar(sigma)}``."""
    if "total" in f._cache:
        return f._cache["total"]
    B, cs = _row_scaling(f)
    n = f.m + f.g
    cells = []
    for cell in f.base.cells:
        cons = [c.pad(0, f.g) for c in cell.constraints]
        cons += _fiber_constraints(f, cell, B, cs)
        cells.append(Cell(n, tuple(sorted(cons, key=Constraint.sort_key))))
    out = DefinableSet(n, cells)
    f._cache["total"] = out
    return out


# --- volumes --------------------------------------------------------------------------

def motivic_volume_direct(f):
    """``chi'(total space) (L - 1)^(m + g)``."""
    return chi_prime(total_space_trop(f)) * class_of_torus(f.m + f.g)


def _second_point(cell, sample):
    """Another point of ``cell``, distinct from ``sample`` unless the cell is a point.

    A midpoint of a cell point and a closure point stays in the cell.
    """
    vertices, rays, lineality = _geometry(cell)
    if lineality:
        return [s + x for s, x in zip(sample, lineality[0])]
    if rays:
        return [s + x for s, x in zip(sample, rays[0])]
    k = len(vertices)
    centroid = [sum(v[i] for v in vertices) / k for i in range(cell.n)]
    for target in [centroid] + [list(v) for v in vertices]:
        mid = [(s + t) / 2 for s, t in zip(sample, target)]
        if mid != list(sample):
            return mid
    return list(sample)


def _fiber_chi(total, sigma, m):
    if m == 0:
        return chi_prime(total)
    return chi_prime(fiber(total, sigma))


def motivic_volume_fubini(f):
    """Sum over base pieces of ``chi'(piece) (L-1)^m`` times the fiber class.

    Pieces are the base cells: on each, the signs of the row scalings are
    constant, so the fiber parallelepipeds share one combinatorial type. The
    fiber class is ``chi'(fiber) (L-1)^g``; it is evaluated at two points of
    the piece and a disagreement raises :class:`FiberClassMismatch`.
    Returns ``(total class, decomposition record)``.
    """
    total_set = total_space_trop(f)
    total = ZERO
    record = []
    for cell in f.base.cells:
        piece = DefinableSet(f.m, (cell,))
        base_chi = chi_prime(piece)
        s1 = cell.sample()
        fchi = _fiber_chi(total_set, s1, f.m)
        s2 = _second_point(cell, s1)
        fchi2 = _fiber_chi(total_set, s2, f.m)
        if fchi != fchi2:
            raise FiberClassMismatch(
                "fiber chi' is %d at %s but %d at %s" % (fchi, s1, fchi2, s2))
        fiber_class = fchi * class_of_torus(f.g)
        contrib = base_chi * class_of_torus(f.m) * fiber_class
        total = total + contrib
        record.append({
            "piece": str(cell),
            "base_chi": base_chi,
            "fiber_chi": fchi,
            "fiber_class": fiber_class.to_json()["poly"],
            "samples": [[format_fraction(x) for x in s1], [format_fraction(x) for x in s2]],
            "class": contrib.to_json()["poly"],
        })
    return total, record


def _error_entry(exc):
    out = {"name": getattr(exc, "name", type(exc).__name__), "message": str(exc)}
    if isinstance(exc, NotPositiveDefiniteAt):
        out["witness"] = [format_fraction(x) for x in exc.witness]
        out["in_base"] = exc.in_base
    return out


def verify_vanishing(f):
    """Validate, compute both volumes and report whether both vanish."""
    report = {"validation": None, "direct": None, "fubini": None, "pieces": None,
              "agree": False, "vanishes": False, "errors": []}
    try:
        report["validation"] = validate_family(f)
    except TropvolError as exc:
        report["validation"] = {"valid": False}
        report["errors"].append(_error_entry(exc))
        return report
    try:
        direct = motivic_volume_direct(f)
        report["direct"] = direct.to_json()["poly"]
        fub, pieces = motivic_volume_fubini(f)
        report["fubini"] = fub.to_json()["poly"]
        report["pieces"] = pieces
    except TropvolError as exc:
        report["errors"].append(_error_entry(exc))
        return report
    report["direct_class"] = str(direct)
    report["fubini_class"] = str(fub)
    report["agree"] = direct == fub
    report["vanishes"] = direct.is_zero() and fub.is_zero()
    return report


def volume_classes(f):
    """Both classes as MotClass values (no validation)."""
    fub, _ = motivic_volume_fubini(f)
    return motivic_volume_direct(f), fub

