"""Tropical volumes of polarized analytic tori, computed exactly."""
from . import errors, gammageo, glnz, lattice, motclass, valfield, volume
from .errors import TropvolError, MalformedInput
from .gammageo import DefinableSet, chi_prime, half_open_ppd, normalize, parse_formula
from .lattice import (LatticeMatrix, PolarizationType, TropMatrix, polarization_rank, smith,
                      theta_coset_reps)
from .glnz import UnimodularMatrix, in_fundamental_domain, reduce
from .motclass import MotClass, class_of_torus, vol_polyhedral
from .valfield import Monomial
from .volume import TorusFamily, AffineFunction, verify_vanishing

__version__ = "0.1.0"
