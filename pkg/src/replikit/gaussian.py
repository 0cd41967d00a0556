"""Standard normal density, CDF and quantile.

The CDF is evaluated through the complementary error function so that the
lower tail keeps full relative precision.  The quantile starts from the standard
library's ``NormalDist.inv_cdf`` (Wichura's AS241) and is polished with a
single Halley step against :func:`normal_cdf`, so it inverts the CDF this
module actually uses.

Scalar functions take and return Python floats.  The ``*_array`` variants
accept numpy arrays and share the exact same arithmetic, so simulated
variates and analytic probabilities rest on one numerical foundation.
"""

import math
from statistics import NormalDist

import numpy as np

from ._checks import DomainError, finite

__all__ = [
    "TAIL_CUTOFF",
    "normal_cdf",
    "normal_cdf_array",
    "normal_pdf",
    "normal_quantile",
    "normal_quantile_array",
]

# Beyond |z| = 38 the lower tail is below the smallest subnormal double.
TAIL_CUTOFF = 38.0

_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)

# Wichura's AS241, as shipped in the standard library
_inv_cdf_ufunc = np.frompyfunc(NormalDist().inv_cdf, 1, 1)
_erfc_ufunc = np.frompyfunc(math.erfc, 1, 1)


def normal_pdf(z):
    """Standard normal density at ``z``."""
    z = finite("z", z)
    return math.exp(-0.5 * z * z) / _SQRT2PI


def normal_cdf(z):
    """Standard normal CDF, Phi(z).

    Returns exactly 0.0 below -38 and 1.0 above 38.
    """
    z = finite("z", z)
    if z < -TAIL_CUTOFF:
        return 0.0
    if z > TAIL_CUTOFF:
        return 1.0
    return 0.5 * math.erfc(-z / _SQRT2)


def normal_cdf_array(z):
    z = np.asarray(z, dtype=np.float64)
    if not np.all(np.isfinite(z)):
        raise DomainError("z must be finite")
    out = 0.5 * _erfc_ufunc(-z / _SQRT2).astype(np.float64)
    out = np.where(z < -TAIL_CUTOFF, 0.0, out)
    return np.where(z > TAIL_CUTOFF, 1.0, out)


def _lower_quantile(q):
    # q in (0, 0.5]; returns z <= 0 with Phi(z) = q
    z = _inv_cdf_ufunc(q).astype(np.float64)

    # Halley refinement; the density underflows only for q ~ 1e-300 and below
    err = 0.5 * _erfc_ufunc(-z / _SQRT2).astype(np.float64) - q
    dens = np.exp(-0.5 * z * z) / _SQRT2PI
    with np.errstate(divide="ignore", invalid="ignore"):
        u = np.where(dens > 0.0, err / dens, 0.0)
    return z - u / (1.0 + 0.5 * z * u)


def normal_quantile_array(p):
    """Vectorised inverse of the standard normal CDF for ``0 < p < 1``."""
    p = np.asarray(p, dtype=np.float64)
    if not np.all((p > 0.0) & (p < 1.0)):
        raise DomainError("p must lie strictly between 0 and 1")
    upper = p > 0.5
    # 1 - p is exact for p >= 0.5
    q = np.where(upper, 1.0 - p, p)
    z = _lower_quantile(np.atleast_1d(q)).reshape(q.shape)
    z = np.where(upper, -z, z)
    return np.where(p == 0.5, 0.0, z)


def normal_quantile(p):
    """Inverse standard normal CDF.

    >>> round(normal_quantile(0.025), 6)
    -1.959964

    Raises :class:`DomainError` unless ``0 < p < 1``.
    """
    p = finite("p", p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie strictly between 0 and 1, got {p!r}")
    return float(normal_quantile_array(np.array([p]))[0])
