"""Definable subsets of the value group and their Euler characteristic."""
from .formula import (FALSE, TRUE, And, Atom, Const, Constraint, Formula, Not, Or, atom,
                      conj, disj, formula_from_json, formula_to_json, neg, parse_formula)
from .sets import (Cell, DefinableSet, affine_image, box, fiber, half_open_ppd, interval,
                   normalize, point, product, project)
from .euler import chi_prime, chi_truncated, stabilization_bound

__all__ = [
    "Constraint", "Formula", "Atom", "And", "Or", "Not", "Const", "TRUE", "FALSE",
    "atom", "conj", "disj", "neg", "parse_formula", "formula_from_json", "formula_to_json",
    "Cell", "DefinableSet", "normalize", "product", "affine_image", "half_open_ppd",
    "project", "fiber", "box", "point", "interval",
    "chi_prime", "chi_truncated", "stabilization_bound",
]
