"""
Scalar kernels shared by every determinant in the package.

Weierstrass elementary factors E_n(z) and the single-eigenvalue terms of the
regularized determinant det_p(I + μA). The terms are also exposed in log form so
that long products can be accumulated as compensated sums of logarithms.
"""

import logging
import math
from typing import Iterable

import numpy as np
from scipy import special

from errors import PoleError, RangeError

logger = logging.getLogger(__name__)

# largest x with exp(x) finite in double precision
_EXP_LIMIT = 709.78
LOG_SPACE_RADIUS = 0.5


def _power_sum(w, n: int, alternating: bool):
    """Σ_{j=1}^{n} w^j / j, or Σ (−w)^j / j when alternating. Horner form."""
    base = -w if alternating else w
    acc = np.zeros_like(base)
    for j in range(n, 0, -1):
        acc = (acc + 1.0 / j) * base
    return acc


def checked_exp(exponent) -> complex:
    exponent = complex(exponent)
    if not np.isfinite(exponent.real) or exponent.real > _EXP_LIMIT:
        raise RangeError(f"exponent {exponent.real:.6g} overflows double precision")
    return complex(np.exp(exponent))


def elementary_factor(n: int, z: complex) -> complex:
    """E_n(z) = (1 − z)·exp(z + z²/2 + … + zⁿ/n)."""
    if n < 0:
        raise ValueError(f"elementary factor order must be nonnegative, got {n}")
    z = complex(z)
    series = complex(_power_sum(np.complex128(z), n, alternating=False))
    if abs(z) <= LOG_SPACE_RADIUS:
        return checked_exp(complex(special.log1p(-z)) + series)
    return (1.0 - z) * checked_exp(series)


def regdet_log_terms(p: int, lambdas, mu: complex) -> np.ndarray:
    """
    Vectorized log of the det_p factor (1 + μλ)·exp(Σ_{j<p} (−1)^j (μλ)^j / j).

    Raises PoleError (with the first offending index) if some 1 + μλ vanishes.
    """
    if p < 1:
        raise ValueError(f"determinant order must be at least 1, got {p}")
    w = np.asarray(lambdas, dtype=np.complex128) * complex(mu)
    vanishing = np.flatnonzero(1.0 + w == 0)
    if vanishing.size:
        index = int(vanishing[0])
        raise PoleError("factor 1 + μλ vanishes", index=index, value=complex(w.flat[index]))
    return special.log1p(w) + _power_sum(w, p - 1, alternating=True)


def regdet_log_term(p: int, lam: complex, mu: complex) -> complex:
    return complex(regdet_log_terms(p, np.complex128(lam), mu))


def regdet_term(p: int, lam: complex, mu: complex) -> complex:
    if p < 1:
        raise ValueError(f"determinant order must be at least 1, got {p}")
    w = complex(lam) * complex(mu)
    if p == 1:
        return 1.0 + w
    correction = complex(_power_sum(np.complex128(w), p - 1, alternating=True))
    return (1.0 + w) * checked_exp(correction)


def ordered_compensated_sum(terms: Iterable[complex]) -> complex:
    """
    Component-wise exactly rounded sum (Shewchuk expansions via math.fsum).

    The result depends only on the multiset of terms, so any fixed term order
    reproduces it bit for bit.
    """
    values = np.asarray(list(terms) if not isinstance(terms, np.ndarray) else terms, dtype=np.complex128)
    if values.size == 0:
        return 0j
    return complex(math.fsum(values.real.ravel()), math.fsum(values.imag.ravel()))
