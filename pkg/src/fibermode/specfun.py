"""Bessel kernels J0, J1, J2, K0, K1, K2 and the derivatives J1', K1'.

Thin validated wrappers over ``scipy.special``. All functions accept scalars or
array-likes; scalars in give Python floats out.
"""

import numpy as np
from scipy import special

from .errors import DomainError

#: Smallest argument accepted by the K functions; K_n blows up at 0.
K_MIN_ARG = 1e-6

_J = {0: special.j0, 1: special.j1, 2: lambda x: special.jv(2, x)}
_K = {0: special.k0, 1: special.k1, 2: lambda x: special.kn(2, x)}


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError("Bessel argument is NaN")
    return arr


def _out(val, x):
    return float(val) if np.ndim(x) == 0 else val


def _check_order(order, table):
    if isinstance(order, bool) or order not in table:
        raise DomainError(f"unsupported Bessel order {order!r}; expected one of {sorted(table)}")


def bessel_j(order: int, x):
    """Bessel function of the first kind J_order(x) for order 0, 1, 2 and x >= 0."""
    _check_order(order, _J)
    arr = _as_array(x)
    if np.any(arr < 0):
        raise DomainError("bessel_j requires x >= 0")
    return _out(_J[order](arr), x)


def bessel_k(order: int, x):
    """Modified Bessel function of the second kind K_order(x) for order 0, 1, 2.

    Arguments below ``K_MIN_ARG`` are rejected instead of returning
    overflow-scale values.
    """
    _check_order(order, _K)
    arr = _as_array(x)
    if np.any(arr < K_MIN_ARG):
        raise DomainError(f"bessel_k requires x >= {K_MIN_ARG:g}")
    return _out(_K[order](arr), x)


def bessel_j1_prime(x):
    """J1'(x) = J0(x) - J1(x)/x, for x > 0."""
    arr = _as_array(x)
    if np.any(arr <= 0):
        raise DomainError("bessel_j1_prime requires x > 0")
    return _out(special.j0(arr) - special.j1(arr) / arr, x)


def bessel_k1_prime(x):
    """K1'(x) = -K0(x) - K1(x)/x, for x > 0 (always negative)."""
    arr = _as_array(x)
    if np.any(arr < K_MIN_ARG):
        raise DomainError(f"bessel_k1_prime requires x >= {K_MIN_ARG:g}")
    return _out(-special.k0(arr) - special.k1(arr) / arr, x)
