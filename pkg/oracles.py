"""
Independent reference values for Γ, ζ and ξ.

None of these go through the determinant machinery: Γ is the Lanczos
approximation (g = 7, nine coefficients), ζ comes from Borwein's accelerated
alternating series for η, and ξ is composed from the two.
"""

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from scipy import special

from errors import PoleError
from factors import ordered_compensated_sum

LANCZOS_G = 7
LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _nonpositive_integer(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def gamma_oracle(z: complex) -> complex:
    z = complex(z)
    if _nonpositive_integer(z):
        raise PoleError(f"Γ has a pole at {z.real:g}", index=int(-z.real), value=z)
    if z.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * z) * gamma_oracle(1 - z))
    z -= 1
    x = LANCZOS_COEFFS[0]
    for i, coeff in enumerate(LANCZOS_COEFFS[1:], start=1):
        x += coeff / (z + i)
    t = z + LANCZOS_G + 0.5
    return cmath.sqrt(2 * cmath.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


@lru_cache(maxsize=64)
def _borwein_weights(n: int) -> tuple[float, ...]:
    """(d_n − d_k)/d_n for k < n, from the exact integers d_k."""
    total = Fraction(0)
    partial = []
    for i in range(n + 1):
        total += Fraction(math.factorial(n + i - 1) * 4**i, math.factorial(n - i) * math.factorial(2 * i))
        partial.append(n * total)
    d_n = partial[-1]
    return tuple(float((d_n - d_k) / d_n) for d_k in partial[:-1])


def eta_oracle(s: complex) -> complex:
    """Dirichlet η(s) = Σ (−1)^k (k+1)^{−s}, Borwein acceleration."""
    s = complex(s)
    n = 60 + 2 * int(math.ceil(abs(s.imag)))
    weights = _borwein_weights(n)
    terms = [(-1) ** k * w * cmath.exp(-s * math.log(k + 1)) for k, w in enumerate(weights)]
    return ordered_compensated_sum(terms)


def zeta_oracle(s: complex) -> complex:
    """
    ζ(s) = η(s)/(1 − 2^{1−s}) for Re s ≥ 0, the functional equation otherwise.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("ζ has a pole at s = 1", index=0, value=s)
    if s.real < 0:
        if s.imag == 0 and s.real % 2 == 0:
            return 0j
        reflected = 1 - s
        return (
            2**s
            * cmath.pi ** (s - 1)
            * cmath.sin(cmath.pi * s / 2)
            * gamma_oracle(reflected)
            * zeta_oracle(reflected)
        )
    # 1 − 2^{1−s} without cancellation near s = 1
    denominator = -complex(special.expm1((1 - s) * math.log(2)))
    return eta_oracle(s) / denominator


def xi_oracle(s: complex) -> complex:
    """ξ(s) = (s − 1)·π^{−s/2}·Γ(1 + s/2)·ζ(s), using ξ(s) = ξ(1 − s) left of ½."""
    s = complex(s)
    if s.real < 0.5:
        s = 1 - s
    if s == 1:
        return 0.5 + 0j
    return (s - 1) * cmath.exp(-s / 2 * math.log(math.pi)) * gamma_oracle(1 + s / 2) * zeta_oracle(s)
