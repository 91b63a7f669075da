"""Linear constraints over Gamma^n and Boolean formulas built from them.

Textual syntax, one formula per line (lines are conjoined)::

    dim 2
    2x1 - 3x2 <= 5/2
    0 <= x1 < 1 & (x2 > 0 | x2 = -1)

Variables are ``x1 .. xn`` (``x`` alone means ``x1``). Connectives:
``& and ∧ ,`` / ``| or ∨`` / ``~ ! not ¬``. Comparisons may be chained.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .. import _exact as ex
from ..errors import MalformedInput
from ..valfield import format_fraction, parse_fraction

__all__ = ["Constraint", "Formula", "Atom", "And", "Or", "Not", "Const", "TRUE", "FALSE",
           "atom", "conj", "disj", "neg", "parse_formula", "formula_from_json",
           "formula_to_json", "RELS"]

RELS = ("<", "<=", "=", ">=", ">")
_FLIP = {"<": ">", "<=": ">=", "=": "=", ">=": "<=", ">": "<"}
_SIGNS = {"<": (-1,), "<=": (-1, 0), "=": (0,), ">=": (0, 1), ">": (1,)}


@dataclass(frozen=True)
class Constraint:
    """``coeffs . x rel rhs`` with integer coefficients."""

    coeffs: Tuple[int, ...]
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in RELS:
            raise ValueError("unknown relation %r" % (self.rel,))
        fr = [ex.to_fraction(c) for c in self.coeffs]
        rhs = ex.to_fraction(self.rhs)
        if any(c.denominator != 1 for c in fr):
            ints, rhs, _ = ex.primitive(fr, rhs)
        else:
            ints = [int(c) for c in fr]
        object.__setattr__(self, "coeffs", tuple(ints))
        object.__setattr__(self, "rhs", rhs)

    @property
    def n(self):
        return len(self.coeffs)

    def is_trivial(self):
        return not any(self.coeffs)

    def trivial_value(self):
        s = (0 > self.rhs) - (0 < self.rhs)
        return s in _SIGNS[self.rel]

    def hyperplane(self):
        """Canonical ``(coeffs, rhs)`` of the boundary hyperplane and the set of
        signs of ``coeffs . x - rhs`` (in canonical orientation) where this
        constraint holds."""
        ints, rhs, _ = ex.primitive(self.coeffs, self.rhs)
        first = next(c for c in ints if c)
        signs = _SIGNS[self.rel]
        if first < 0:
            ints = [-c for c in ints]
            rhs = -rhs
            signs = tuple(-s for s in signs)
        return (tuple(ints), rhs), frozenset(signs)

    def holds(self, x):
        v = sum(c * xi for c, xi in zip(self.coeffs, x)) - self.rhs
        s = (v > 0) - (v < 0)
        return s in _SIGNS[self.rel]

    def as_row(self):
        """Row ``(coeffs, rel, rhs)`` with rel in {<, <=, =}."""
        if self.rel in (">", ">="):
            return tuple(-c for c in self.coeffs), _FLIP[self.rel], -self.rhs
        return self.coeffs, self.rel, self.rhs

    def sort_key(self):
        (h, r), signs = self.hyperplane()
        return (h, r, tuple(sorted(signs)))

    def pad(self, before, after):
        return Constraint((0,) * before + self.coeffs + (0,) * after, self.rel, self.rhs)

    def to_json(self):
        return {"coeffs": list(self.coeffs), "rel": self.rel, "rhs": format_fraction(self.rhs)}

    @classmethod
    def from_json(cls, obj):
        try:
            coeffs = obj["coeffs"]
            rel = obj["rel"]
        except (KeyError, TypeError):
            raise MalformedInput("constraint must have 'coeffs' and 'rel'")
        if rel not in RELS:
            raise MalformedInput("unknown relation %r" % (rel,))
        return cls(tuple(parse_fraction(c, "coeff") for c in coeffs), rel,
                   parse_fraction(obj.get("rhs", 0), "rhs"))

    def __str__(self):
        coeffs, rel, rhs = self.coeffs, self.rel, self.rhs
        if any(coeffs) and all(c <= 0 for c in coeffs) and rel != "=":
            coeffs, rel, rhs = tuple(-c for c in coeffs), _FLIP[rel], -rhs
        terms = []
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, "%sx%d" % (mag, i + 1)))
        if not terms:
            lhs = "0"
        else:
            lhs = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            for sign, t in terms[1:]:
                lhs += " %s %s" % (sign, t)
        return "%s %s %s" % (lhs, rel, format_fraction(rhs))


class Formula:
    """Base class; combine with ``&``, ``|``, ``~`` and ``-`` (difference)."""

    def __and__(self, other):
        return conj([self, other])

    def __or__(self, other):
        return disj([self, other])

    def __invert__(self):
        return neg(self)

    def __sub__(self, other):
        return conj([self, neg(other)])


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def atoms(self):
        return iter(())

    def holds(self, x):
        return self.value

    def substitute(self, key, sign):
        return self


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Atom(Formula):
    constraint: Constraint

    def atoms(self):
        yield self.constraint

    def holds(self, x):
        return self.constraint.holds(x)

    def substitute(self, key, sign):
        h, signs = self.constraint.hyperplane()
        if h == key:
            return TRUE if sign in signs else FALSE
        return self


@dataclass(frozen=True)
class And(Formula):
    items: Tuple[Formula, ...]

    def atoms(self):
        for f in self.items:
            yield from f.atoms()

    def holds(self, x):
        return all(f.holds(x) for f in self.items)

    def substitute(self, key, sign):
        return conj([f.substitute(key, sign) for f in self.items])


@dataclass(frozen=True)
class Or(Formula):
    items: Tuple[Formula, ...]

    def atoms(self):
        for f in self.items:
            yield from f.atoms()

    def holds(self, x):
        return any(f.holds(x) for f in self.items)

    def substitute(self, key, sign):
        return disj([f.substitute(key, sign) for f in self.items])


@dataclass(frozen=True)
class Not(Formula):
    item: Formula

    def atoms(self):
        return self.item.atoms()

    def holds(self, x):
        return not self.item.holds(x)

    def substitute(self, key, sign):
        return neg(self.item.substitute(key, sign))


def atom(c):
    if c.is_trivial():
        return TRUE if c.trivial_value() else FALSE
    return Atom(c)


def _flatten(items, kind):
    for f in items:
        if isinstance(f, kind):
            yield from f.items
        else:
            yield f


def conj(items):
    out = []
    for f in _flatten(items, And):
        if f == FALSE:
            return FALSE
        if f != TRUE and f not in out:
            out.append(f)
    if not out:
        return TRUE
    return out[0] if len(out) == 1 else And(tuple(out))


def disj(items):
    out = []
    for f in _flatten(items, Or):
        if f == TRUE:
            return TRUE
        if f != FALSE and f not in out:
            out.append(f)
    if not out:
        return FALSE
    return out[0] if len(out) == 1 else Or(tuple(out))


def neg(f):
    if isinstance(f, Const):
        return FALSE if f.value else TRUE
    if isinstance(f, Not):
        return f.item
    return Not(f)


def formula_dim(f):
    dims = {c.n for c in f.atoms()}
    if len(dims) > 1:
        raise ValueError("constraints of different dimensions: %s" % sorted(dims))
    return dims.pop() if dims else None


# --- JSON mirror -----------------------------------------------------------

def formula_to_json(f):
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Atom):
        return f.constraint.to_json()
    if isinstance(f, And):
        return {"and": [formula_to_json(x) for x in f.items]}
    if isinstance(f, Or):
        return {"or": [formula_to_json(x) for x in f.items]}
    return {"not": formula_to_json(f.item)}


def formula_from_json(obj, n=None):
    if isinstance(obj, bool):
        return TRUE if obj else FALSE
    if isinstance(obj, str):
        return parse_formula(obj, n)[0]
    if isinstance(obj, list):
        return conj([formula_from_json(x, n) for x in obj])
    if isinstance(obj, dict):
        if "and" in obj:
            return conj([formula_from_json(x, n) for x in obj["and"]])
        if "or" in obj:
            return disj([formula_from_json(x, n) for x in obj["or"]])
        if "not" in obj:
            return neg(formula_from_json(obj["not"], n))
        c = Constraint.from_json(obj)
        if n is not None and c.n != n:
            raise MalformedInput("constraint has %d coefficients, expected %d" % (c.n, n))
        return atom(c)
    raise MalformedInput("cannot read formula from %r" % (obj,))


# --- text parser -------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<var>x\d*)
  | (?P<rel><=|>=|==|!=|=<|=>|<|>|=|≤|≥)
  | (?P<and>&&?|∧|,|\band\b)
  | (?P<or>\|\|?|∨|\bor\b)
  | (?P<not>~|!|¬|\bnot\b)
  | (?P<op>[-+*])
  | (?P<lp>\()
  | (?P<rp>\))
""", re.VERBOSE)

_REL_ALIASES = {"==": "=", "=<": "<=", "=>": ">=", "≤": "<=", "≥": ">="}


class _Parser:
    def __init__(self, text, lineno, n):
        self.lineno = lineno
        self.n = n
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise MalformedInput("unexpected character %r" % text[pos], lineno, pos + 1)
            kind = m.lastgroup
            if kind != "ws":
                self.toks.append((kind, m.group(), pos + 1))
            pos = m.end()
        self.i = 0
        self.maxvar = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, None)

    def fail(self, msg):
        _, _, col = self.peek()
        raise MalformedInput(msg, self.lineno, col)

    def take(self, kind=None):
        tok = self.peek()
        if tok[0] is None or (kind is not None and tok[0] != kind):
            self.fail("expected %s" % (kind or "token"))
        self.i += 1
        return tok

    def parse(self):
        f = self.disj()
        if self.i != len(self.toks):
            self.fail("unexpected %r" % self.peek()[1])
        return f

    def disj(self):
        items = [self.conj()]
        while self.peek()[0] == "or":
            self.take()
            items.append(self.conj())
        return ("or", items) if len(items) > 1 else items[0]

    def conj(self):
        items = [self.unary()]
        while self.peek()[0] == "and":
            self.take()
            items.append(self.unary())
        return ("and", items) if len(items) > 1 else items[0]

    def unary(self):
        kind = self.peek()[0]
        if kind == "not":
            self.take()
            return ("not", self.unary())
        if kind == "lp":
            save = self.i
            self.take()
            try:
                f = self.disj()
                self.take("rp")
                if self.peek()[0] not in ("rel", "op"):
                    return f
            except MalformedInput:
                pass
            self.i = save  # a parenthesized arithmetic expression
        return self.comparison()

    def comparison(self):
        exprs = [self.expr()]
        rels = []
        while self.peek()[0] == "rel":
            r = self.take()[1]
            r = _REL_ALIASES.get(r, r)
            if r == "!=":
                self.fail("'!=' is not supported; use '<' | '>'")
            rels.append(r)
            exprs.append(self.expr())
        if not rels:
            self.fail("expected a comparison")
        return ("cmp", exprs, rels)

    def expr(self):
        # returns dict var_index -> Fraction plus constant under key None
        terms = {}
        sign = 1
        first = True
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                if text == "-":
                    sign = -sign
                continue
            if not first and kind not in ("num", "var", "lp"):
                self.fail("expected a term")
            coef, var = self.term()
            terms[var] = terms.get(var, Fraction(0)) + sign * coef
            first = False
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                sign = 1
                continue
            return terms

    def term(self):
        kind, text, _ = self.peek()
        if kind == "lp":
            self.take()
            inner = self.expr()
            self.take("rp")
            if len(inner) != 1 or None not in inner:
                self.fail("only constant sub-expressions may be parenthesized")
            return inner[None], None
        coef = Fraction(1)
        if kind == "num":
            coef = Fraction(self.take()[1])
            if self.peek()[0] == "op" and self.peek()[1] == "*":
                self.take()
                if self.peek()[0] != "var":
                    self.fail("expected a variable after '*'")
            if self.peek()[0] != "var":
                return coef, None
        if self.peek()[0] != "var":
            self.fail("expected a number or variable")
        name = self.take()[1]
        idx = int(name[1:]) if len(name) > 1 else 1
        if idx < 1:
            self.fail("variables are numbered from x1")
        self.maxvar = max(self.maxvar, idx)
        return coef, idx


def _build(node, n):
    kind = node[0]
    if kind == "or":
        return disj([_build(x, n) for x in node[1]])
    if kind == "and":
        return conj([_build(x, n) for x in node[1]])
    if kind == "not":
        return neg(_build(node[1], n))
    _, exprs, rels = node
    parts = []
    for lhs, rel, rhs in zip(exprs, rels, exprs[1:]):
        coeffs = [Fraction(0)] * n
        const = Fraction(0)
        for side, sgn in ((lhs, 1), (rhs, -1)):
            for var, c in side.items():
                if var is None:
                    const -= sgn * c
                else:
                    coeffs[var - 1] += sgn * c
        parts.append(atom(Constraint(tuple(coeffs), rel, const)))
    return conj(parts)


_DIM = re.compile(r"^\s*dim\s+(\d+)\s*$")


def parse_formula(text, n=None):
    """Parse the textual constraint language. Returns ``(formula, n)``."""
    trees = []
    maxvar = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _DIM.match(line)
        if m:
            declared = int(m.group(1))
            if n is not None and n != declared:
                raise MalformedInput("dim %d conflicts with expected %d" % (declared, n), lineno)
            n = declared
            continue
        p = _Parser(line, lineno, n)
        trees.append((p.parse(), lineno))
        maxvar = max(maxvar, p.maxvar)
    if n is None:
        n = max(maxvar, 1)
    elif maxvar > n:
        raise MalformedInput("variable x%d exceeds dimension %d" % (maxvar, n))
    if not trees:
        raise MalformedInput("empty formula")
    return conj([_build(t, n) for t, _ in trees]), n
