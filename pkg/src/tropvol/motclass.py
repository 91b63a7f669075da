"""Classes in the subring Z[L] of the Grothendieck ring, and volumes of
polyhedral sets.

``L`` is the class of the affine line; ``L - 1`` is the class of the unit
annulus (the preimage of a single point of Gamma under trop).
"""
from .errors import MalformedInput
from .gammageo import chi_prime

__all__ = ["MotClass", "L", "ZERO", "ONE", "mot_add", "mot_mul", "mot_pow",
           "class_of_torus", "vol_polyhedral"]


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class MotClass:
    """Integer polynomial in L; ``coeffs[i]`` is the coefficient of ``L^i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        out = []
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError("MotClass coefficients must be integers, got %r" % (c,))
            out.append(c)
        object.__setattr__(self, "coeffs", _trim(out))

    def __setattr__(self, key, value):
        raise AttributeError("MotClass is immutable")

    @classmethod
    def constant(cls, c):
        return cls((c,))

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return MotClass(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return MotClass(-x for x in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return ZERO
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return MotClass(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = MotClass.constant(other)
        if not isinstance(other, MotClass):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("MotClass", self.coeffs))

    def evaluate(self, x):
        """Value at ``L = x`` (``x = 1`` is the Euler characteristic specialization)."""
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def to_json(self):
        return {"poly": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "poly" not in obj:
            raise MalformedInput("class must be an object with a 'poly' list")
        poly = obj["poly"]
        if not isinstance(poly, list) or any(
                isinstance(c, bool) or not isinstance(c, int) for c in poly):
            raise MalformedInput("'poly' must be a list of integers")
        return cls(poly)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "L" if i == 1 else "L^%d" % i
                body = mono if mag == 1 else "%d%s" % (mag, mono)
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms)

    def __repr__(self):
        return "MotClass(%s)" % self


def _coerce(x):
    if isinstance(x, MotClass):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return MotClass.constant(x)
    raise TypeError("cannot combine MotClass with %r" % (x,))


ZERO = MotClass()
ONE = MotClass((1,))
L = MotClass((0, 1))


def mot_add(a, b):
    return _coerce(a) + b


def mot_mul(a, b):
    return _coerce(a) * b


def mot_pow(a, k):
    return _coerce(a) ** k


def class_of_torus(n):
    """``(L - 1)^n``, the class of an n-dimensional split torus."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (L - 1) ** n


def vol_polyhedral(S):
    """Volume of ``trop^{-1}(S)``: ``chi'(S) (L - 1)^n``."""
    return chi_prime(S) * class_of_torus(S.n)
