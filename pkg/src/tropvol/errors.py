"""Exception hierarchy.

Every domain error carries a stable ``name`` used by the command line
front end and in JSON reports.
"""


class TropvolError(Exception):
    """Base class for domain errors."""

    name = "TropvolError"


class NonInjectivePolarization(TropvolError):
    name = "NonInjectivePolarization"


class AsymmetricPairing(TropvolError):
    name = "AsymmetricPairing"


class NotPositiveDefinite(TropvolError):
    name = "NotPositiveDefinite"


class SingularMatrix(TropvolError):
    name = "SingularMatrix"


class NonStabilized(TropvolError):
    """The truncated Euler characteristics disagree at the two box sizes."""

    name = "NonStabilized"

    def __init__(self, values, sizes):
        self.values = tuple(values)
        self.sizes = tuple(sizes)
        super().__init__(
            "chi of truncations differs: %s at box sizes %s" % (self.values, self.sizes))


class SymmetryViolation(TropvolError):
    name = "SymmetryViolation"


class NotPositiveDefiniteAt(TropvolError):
    """Fiberwise positivity fails; ``witness`` is the offending base point."""

    name = "NotPositiveDefiniteAt"

    def __init__(self, witness, in_base=True):
        self.witness = tuple(witness)
        self.in_base = in_base
        pts = ", ".join(str(c) for c in self.witness)
        super().__init__("form is not positive definite at sigma=(%s)" % pts)


class UnboundedUnverifiable(TropvolError):
    name = "UnboundedUnverifiable"


class NonPolyhedralFamily(TropvolError):
    """The fundamental parallelepipeds do not sweep out a polyhedral set."""

    name = "NonPolyhedralFamily"


class FiberClassMismatch(TropvolError):
    """Two sample fibers over one Fubini piece have different classes."""

    name = "FiberClassMismatch"


class MalformedInput(ValueError):
    """Parse failure; ``line`` and ``col`` are 1-based when known."""

    name = "MalformedInput"

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = " (line %d" % line + (", col %d)" % col if col is not None else ")")
        super().__init__(message + where)
