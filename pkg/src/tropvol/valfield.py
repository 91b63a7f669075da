"""Monomials ``c * t**q`` in a rational-valued field, and tropicalization.

The valuation is normalized so that ``val(t) = 1``; then ``-log|c t^q| = q``
and ``trop`` simply reads the exponent.
"""
from dataclasses import dataclass
from fractions import Fraction

from ._exact import to_fraction
from .errors import MalformedInput

__all__ = ["Monomial", "ONE", "mono_mul", "mono_pow", "trop", "trop_vector",
           "parse_fraction", "format_fraction"]


def parse_fraction(value, what="value"):
    """Read a JSON-side rational: an int or a string ``"p/q"``."""
    if isinstance(value, bool):
        raise MalformedInput("%s: expected a rational, got a boolean" % what)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise MalformedInput("%s: cannot parse %r as a fraction" % (what, value))
    raise MalformedInput("%s: expected int or 'p/q' string, got %r" % (what, value))


def format_fraction(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


@dataclass(frozen=True)
class Monomial:
    """A nonzero field element ``coeff * t**exp``."""

    coeff: Fraction
    exp: Fraction = Fraction(0)

    def __post_init__(self):
        c = to_fraction(self.coeff)
        if c == 0:
            raise ValueError("monomial coefficient must be nonzero")
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "exp", to_fraction(self.exp))

    @classmethod
    def uniformizer(cls):
        return cls(1, 1)

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(self.coeff * other.coeff, self.exp + other.exp)

    def __pow__(self, k):
        k = int(k)
        return Monomial(self.coeff ** k, self.exp * k)

    def inverse(self):
        return Monomial(1 / self.coeff, -self.exp)

    def __truediv__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self * other.inverse()

    @property
    def val(self):
        return self.exp

    def to_json(self):
        return {"coeff": format_fraction(self.coeff), "exp": format_fraction(self.exp)}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "coeff" not in obj:
            raise MalformedInput("monomial must be an object with 'coeff' and 'exp'")
        coeff = parse_fraction(obj["coeff"], "coeff")
        if coeff == 0:
            raise MalformedInput("monomial coefficient must be nonzero")
        return cls(coeff, parse_fraction(obj.get("exp", 0), "exp"))

    def __str__(self):
        c = format_fraction(self.coeff)
        if self.exp == 0:
            return c
        t = "t" if self.exp == 1 else "t^%s" % format_fraction(self.exp)
        return t if self.coeff == 1 else "%s*%s" % (c, t)


ONE = Monomial(1, 0)


def mono_mul(a, b):
    return a * b


def mono_pow(a, k):
    return a ** k


def trop(a):
    """``-log|a|`` under the normalization ``|t| = e^-1``."""
    return a.exp


def trop_vector(xs):
    return tuple(trop(x) for x in xs)
