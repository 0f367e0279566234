"""Python access to the projkit engine.

Rationals cross the boundary as strings; the wrappers below turn them into
fractions.Fraction and reports into plain dicts.
"""

import json
from fractions import Fraction

from ._core import (
    DEFAULT_ORDER,
    ProjkitError,
    Structure,
    known_cases,
)
from . import _core

__all__ = [
    "DEFAULT_ORDER",
    "ProjkitError",
    "Structure",
    "coefficients",
    "cubic_curve",
    "is_linearizable",
    "is_symmetry",
    "known_cases",
    "liouville",
    "structure",
    "symmetry_dim",
    "verify",
    "verify_all",
]


def _params(params):
    return {name: str(Fraction(value)) for name, value in (params or {}).items()}


def _fractions(coeffs):
    return {key: Fraction(value) for key, value in coeffs.items()}


def structure(A, B="0", C="0", D="0", order=DEFAULT_ORDER, params=None):
    return Structure(A, B, C, D, order, _params(params))


def coefficients(pi, k):
    """Nonzero coefficients of A, B, C or D (k = 0..3) keyed by (i, j) for x^i y^j."""
    return _fractions(pi.coefficients(k))


def liouville(pi):
    L1, L2 = _core.liouville(pi)
    return _fractions(L1), _fractions(L2)


def is_linearizable(pi):
    return _core.is_linearizable(pi)


def is_symmetry(a, b, pi, params=None):
    return _core.is_symmetry(a, b, pi, _params(params))


def symmetry_dim(pi, order=DEFAULT_ORDER):
    """(dimension at order N, dimension at N + 1, stabilized)."""
    return _core.symmetry_dim(pi, order)


def cubic_curve(alpha, beta):
    return Fraction(_core.cubic_curve(str(Fraction(alpha)), str(Fraction(beta))))


def verify(case_id, params=None, order=DEFAULT_ORDER):
    return json.loads(_core.verify_case(case_id, _params(params), order))[0]


def verify_all(order=DEFAULT_ORDER):
    return json.loads(_core.verify_all(order))
