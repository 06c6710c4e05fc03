
""" Evaluation of truncated multipole expansions and their error model. """

import math

from functools import lru_cache

import numpy as np

from pyq2x.exceptions import DomainError
from pyq2x.harmonics import (
    TriangularCoeffs,
    as_point,
    eval_regular_tilde,
    eval_singular_tilde,
    order_of_index,
)
from pyq2x.q2x import ExpansionKind, MultipoleCoefficients, parity_signs

@lru_cache
def _pair_weights(p):

    """ 1 for m = 0 and 2 for m > 0: each stored m > 0 term stands for the
    conjugate pair (m, -m).
    """

    weights = np.where(order_of_index(p) == 0, 1.0, 2.0)
    weights.flags.writeable = False

    return weights

def evaluate_expansion(c, r):

    """ sum_{n<p} [F~_n^0 S~_n^0 + 2 Re sum_{m>0} F~_n^m S~_n^m] at r - center.

    Coefficients carry the conjugated regular harmonics of the sources, so
    pairing them with the singular harmonics is a plain product.
    """

    offset = as_point(r) - c.center

    if not np.any(offset):
        raise DomainError("Cannot evaluate a multipole expansion at its center")

    singular = eval_singular_tilde(offset, c.p)

    return float(np.dot(_pair_weights(c.p), (c.data.data * singular.data).real))

def evaluate_expansion_many(c, points):
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)

    return np.array([evaluate_expansion(c, point) for point in points])

def point_charge_coefficients(source, center, p, charge=1.0):

    """ The expansion of a point charge at `source`:
    F~_n^m = charge/(4 pi) (-1)^n conj(R~_n^m(source - center)).
    """

    center = as_point(center)
    regular = eval_regular_tilde(as_point(source) - center, p)
    data = charge / (4 * math.pi) * parity_signs(p) * regular.data.conjugate()

    return MultipoleCoefficients(center, p, TriangularCoeffs(p, data))

def relative_error(approx, exact):
    if exact == 0:
        raise DomainError("Relative error is undefined against an exact value of zero")

    return abs(approx - exact) / abs(exact)

def error_bound(kind, p, d, rc_dist, C):

    """ The geometric-progression majorant of the truncation error,
    C (rc/d)^p, or C p (rc/d)^(p-1) for the double layer.
    """

    if not rc_dist > 0:
        raise DomainError(f"Source radius must be positive, got {rc_dist}")
    if not d > rc_dist:
        raise DomainError(f"Series diverges at d = {d} <= {rc_dist}")

    q = rc_dist / d

    if ExpansionKind.parse(kind) is ExpansionKind.M:
        return C * p * q ** (p - 1)

    return C * q ** p
