"""
Functions rebuilt from their zeros and poles through regularized determinants:
rational functions, Γ, the Euler product, ξ, ζ and general finite-order entire
functions (Hadamard form).

ξ zeros are synthesized from heights as ½ ± it, so everything here assumes the
dataset's zeros lie on the critical line. The self-adjointness predicate on
`xi_hat_zeros` tests that the data is real, not the Riemann hypothesis.
"""

import cmath
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Literal, Sequence, get_args

import numpy as np
import sympy
from numpy.polynomial import polynomial
from pydantic import BaseModel, ConfigDict, Field, model_validator

from configs import DEFAULT_GAMMA_TERMS, EULER_GAMMA, XI_LINEAR_COEFF, ZETA_LINEAR_COEFF
from data_fetching import ZeroDataset
from errors import DomainError, InsufficientDataError, PoleError
from factors import checked_exp, ordered_compensated_sum
from opmodel import DiagonalOperator, TailModel, ZeroMultiset, classify
from oracles import gamma_oracle
from regdet import IdentityReport, RegDetRequest, det_fredholm, det_p, relative_discrepancy

logger = logging.getLogger(__name__)

LOG_PI = math.log(math.pi)


class ReconResult(BaseModel):
    value: complex
    tail_estimate: float = Field(0.0, description="Estimated relative truncation error.")
    zero_index: int | None = Field(None, description="Annihilating factor, when the value is an exact zero.")


def _nonpositive_integer(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


@lru_cache(maxsize=4)
def gamma_operator(N: int) -> DiagonalOperator:
    """D_{zΓ(z)}: zeros −1, −2, …, −N, diagonal −1/n."""
    zeros = ZeroMultiset.from_values(
        -np.arange(1, N + 1, dtype=float), infinite=True, tail=TailModel.power_law(1.0)
    )
    return DiagonalOperator.from_zeros(zeros)


@lru_cache(maxsize=1)
def phi_operator() -> DiagonalOperator:
    """D_φ for φ(z) = 1 − z: the one-entry diagonal {1}."""
    return DiagonalOperator.from_zeros(ZeroMultiset.from_values([1.0]))


def xi_operator(data: ZeroDataset, N: int | None = None) -> DiagonalOperator:
    """D_ξ over ρ = ½ + it_k and ½ − it_k for the first N heights, interleaved."""
    N = data.count if N is None else N
    if N < 1:
        raise ValueError(f"need at least one zero height, got N={N}")
    if N > data.count:
        raise InsufficientDataError(f"requested {N} zero heights but the dataset has {data.count}")
    heights = data.heights[:N]
    values = np.empty(2 * N, dtype=np.complex128)
    values[0::2] = 0.5 + 1j * heights
    values[1::2] = 0.5 - 1j * heights
    zeros = ZeroMultiset.from_values(values, infinite=True, tail=TailModel.declared(2))
    return DiagonalOperator.from_zeros(zeros)


def xi_hat_zeros(data: ZeroDataset, extra: Sequence[complex] = ()) -> ZeroMultiset:
    """Zeros ±t_k of ξ̂(s) = ξ(½ + is), with optional injected zeros appended."""
    values = np.empty(2 * data.count, dtype=np.complex128)
    values[0::2] = data.heights
    values[1::2] = -data.heights
    values = np.concatenate([values, np.asarray(list(extra), dtype=np.complex128)])
    return ZeroMultiset.from_values(values, infinite=True, tail=TailModel.declared(2))


def xi_hat_self_adjoint(data: ZeroDataset, extra: Sequence[complex] = (), tol: float = 0.0) -> bool:
    return classify(DiagonalOperator.from_zeros(xi_hat_zeros(data, extra)), tol=tol).is_self_adjoint


def gamma_tail_estimate(z: complex, N: int) -> float:
    return abs(z) ** 2 / (2 * N)


def euler_tail_estimate(s: complex, prime_bound: int) -> float:
    """Σ_{p > B} p^{−σ} ≈ B^{1−σ}/((σ − 1)·log B), the relative error of the truncated product."""
    sigma = complex(s).real
    return prime_bound ** (1.0 - sigma) / ((sigma - 1.0) * math.log(prime_bound))


def xi_tail_estimate(s: complex, last_height: float) -> float:
    """|s|²·(log(T/2π) + 1)/(2πT): the zero density (1/2π)·log(t/2π) integrated past T."""
    if s == 0:
        return 0.0
    return abs(s) ** 2 * (math.log(last_height / (2 * math.pi)) + 1.0) / (2 * math.pi * last_height)


def rational_reconstruct(
    zeros: ZeroMultiset, poles: ZeroMultiset, k: int, g0: complex, z: complex
) -> complex:
    """z^k·g(0)·det(I − zD_zeros)/det(I − zD_poles)."""
    z = complex(z)
    denominator = det_fredholm(DiagonalOperator.from_zeros(poles), z)
    if denominator.zero_index is not None:
        raise PoleError(f"{z} is a pole", index=denominator.zero_index, value=z)
    if z == 0 and k < 0:
        raise PoleError(f"z^{k} has a pole at 0", index=None, value=z)
    numerator = det_fredholm(DiagonalOperator.from_zeros(zeros), z)
    return z**k * complex(g0) * numerator.value / denominator.value


def rational_reconstruct_exact(
    zeros: Sequence, poles: Sequence, k: int, g0, z
) -> Fraction:
    """The same product in exact rational arithmetic; entries repeat for multiplicity."""
    z = Fraction(z)
    for index, pole in enumerate(poles):
        if Fraction(pole) == z:
            raise PoleError(f"{z} is a pole", index=index, value=complex(z))
    if z == 0 and k < 0:
        raise PoleError(f"z^{k} has a pole at 0", value=0j)
    value = Fraction(g0) * z**k
    for a in zeros:
        value *= 1 - z / Fraction(a)
    for b in poles:
        value /= 1 - z / Fraction(b)
    return value


def gamma_reconstruct(z: complex, N: int = DEFAULT_GAMMA_TERMS) -> ReconResult:
    """Γ(z) = (e^{−γz}/z)·det_2(I − zD_{zΓ(z)})^{−1}, truncated at N."""
    z = complex(z)
    if _nonpositive_integer(z):
        raise PoleError(f"Γ has a pole at {z.real:g}", index=int(-z.real), value=z)
    det = det_p(gamma_operator(N), RegDetRequest(order_p=2, eval_point=z, truncation_N=N))
    value = cmath.exp(-EULER_GAMMA * z) / z / det.value
    return ReconResult(value=value, tail_estimate=gamma_tail_estimate(z, N))


def gamma_functional_check(z: complex, N: int = DEFAULT_GAMMA_TERMS) -> IdentityReport:
    """Γ(z+1)/Γ(z) = z through the reconstruction."""
    z = complex(z)
    upper = gamma_reconstruct(z + 1, N)
    lower = gamma_reconstruct(z, N)
    ratio = upper.value / lower.value
    tolerance = upper.tail_estimate + lower.tail_estimate
    discrepancy = relative_discrepancy(ratio, z)
    return IdentityReport(
        label=f"gamma_functional z={z}",
        lhs=ratio,
        rhs=z,
        discrepancy=discrepancy,
        tolerance=tolerance,
        passed=discrepancy <= tolerance,
    )


def euler_product_det(s: complex, prime_bound: int) -> complex:
    """Π_{p ≤ bound} det(I − p^{−s}D_φ)^{−1}, valid for Re s > 1."""
    s = complex(s)
    if s.real <= 1:
        raise DomainError(f"the Euler product needs Re s > 1, got {s}")
    if prime_bound < 2:
        raise DomainError(f"prime bound must be at least 2, got {prime_bound}")
    phi = phi_operator()
    logs = [det_fredholm(phi, cmath.exp(-s * math.log(p))).log_value for p in sympy.primerange(2, prime_bound + 1)]
    logger.debug("Euler product over %d primes up to %d", len(logs), prime_bound)
    return checked_exp(-ordered_compensated_sum(logs))


def xi_reconstruct(s: complex, data: ZeroDataset, N: int | None = None) -> ReconResult:
    """ξ(s) = ½π^{−s/2}e^{(log 2π − 1 − γ/2)s}·det_2(I − sD_ξ), functionally paired."""
    s = complex(s)
    op = xi_operator(data, N)
    det = det_p(op, RegDetRequest(order_p=2, eval_point=s, pairing="functional-paired"))
    last_height = float(data.heights[op.size // 2 - 1])
    prefactor = 0.5 * cmath.exp((XI_LINEAR_COEFF - LOG_PI / 2) * s)
    return ReconResult(
        value=prefactor * det.value,
        tail_estimate=xi_tail_estimate(s, last_height),
        zero_index=det.zero_index,
    )


def zeta_reconstruct(
    s: complex, data: ZeroDataset, N: int | None = None, gamma_terms: int = DEFAULT_GAMMA_TERMS
) -> ReconResult:
    """
    ζ(s) = −½e^{(log 2π − 1)s}·det_2(I − (s/2)D_Γ)·det_2(I − sD_ξ)/det(I − sD_φ).

    The trivial zeros come from the Γ-type factor: at s = −2n its n-th factor is
    exactly zero.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("ζ has a pole at s = 1", index=0, value=s)
    gamma_det = det_p(gamma_operator(gamma_terms), RegDetRequest(order_p=2, eval_point=s / 2, truncation_N=gamma_terms))
    op = xi_operator(data, N)
    last_height = float(data.heights[op.size // 2 - 1])
    tail = gamma_tail_estimate(s / 2, gamma_terms) + xi_tail_estimate(s, last_height)
    if gamma_det.zero_index is not None:
        return ReconResult(value=0j, tail_estimate=tail, zero_index=gamma_det.zero_index)
    xi_det = det_p(op, RegDetRequest(order_p=2, eval_point=s, pairing="functional-paired"))
    pole = det_fredholm(phi_operator(), s)
    value = -0.5 * cmath.exp(ZETA_LINEAR_COEFF * s) * gamma_det.value * xi_det.value / pole.value
    return ReconResult(value=value, tail_estimate=tail, zero_index=xi_det.zero_index)


class HadamardData(BaseModel):
    """
    f(z) = z^m·e^{g(z)}·det_{p+1}(I − zD_f) with p = ⌊λ⌋.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    zeros: ZeroMultiset
    m: int = Field(0, ge=0, description="Order of vanishing at 0.")
    g_coeffs: tuple[complex, ...] = Field((0j,), description="Coefficients of g, constant term first.")
    order_lambda: float = Field(..., ge=0, description="Order of growth λ.")

    @model_validator(mode="after")
    def _check_genus(self):
        if self.g_degree > self.order_lambda:
            raise ValueError(f"deg g = {self.g_degree} exceeds the order {self.order_lambda}")
        if np.any(self.zeros.values == 0):
            raise ValueError("zeros at the origin belong in m, not in the zero multiset")
        return self

    @property
    def p(self) -> int:
        return math.floor(self.order_lambda)

    @property
    def g_degree(self) -> int:
        nonzero = [i for i, c in enumerate(self.g_coeffs) if c != 0]
        return nonzero[-1] if nonzero else 0

    def g(self, z: complex) -> complex:
        return complex(polynomial.polyval(complex(z), np.asarray(self.g_coeffs, dtype=np.complex128)))


def hadamard_genus(data: HadamardData) -> int:
    """μ = max(p, deg g); never above λ."""
    return max(data.p, data.g_degree)


def hadamard_reconstruct(data: HadamardData, z: complex, N: int | None = None) -> ReconResult:
    z = complex(z)
    op = DiagonalOperator.from_zeros(data.zeros)
    det = det_p(op, RegDetRequest(order_p=data.p + 1, eval_point=z, truncation_N=N, certify=True))
    value = z**data.m * cmath.exp(data.g(z)) * det.value
    return ReconResult(value=value, tail_estimate=det.tail_estimate, zero_index=det.zero_index)


class HadamardFixture(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str
    data: HadamardData
    oracle: Callable[[complex], complex]


def _symmetric(values: np.ndarray) -> np.ndarray:
    paired = np.empty(2 * values.size)
    paired[0::2] = values
    paired[1::2] = -values
    return paired


def _sinc(z: complex) -> complex:
    return 1.0 + 0j if z == 0 else cmath.sin(cmath.pi * z) / (cmath.pi * z)


def _reciprocal_gamma(z: complex) -> complex:
    return 0j if _nonpositive_integer(z) else 1.0 / gamma_oracle(z)


def hadamard_fixture(name: str, count: int = 1000) -> HadamardFixture:
    """Named entire functions with known zeros, each with an independent oracle."""
    n = np.arange(1, count + 1, dtype=float)
    power_law = dict(infinite=True, tail=TailModel.power_law(1.0))
    if name == "sinc":
        zeros, m, g, order, oracle = ZeroMultiset.from_values(_symmetric(n), **power_law), 0, (0j,), 1, _sinc
    elif name == "sine":
        zeros, m, g, order = ZeroMultiset.from_values(_symmetric(n), **power_law), 1, (complex(LOG_PI),), 1
        oracle = lambda z: cmath.sin(cmath.pi * z)  # noqa: E731
    elif name == "cosine":
        zeros, m, g, order = ZeroMultiset.from_values(_symmetric(n - 0.5), **power_law), 0, (0j,), 1
        oracle = lambda z: cmath.cos(cmath.pi * z)  # noqa: E731
    elif name == "linear":
        zeros, m, g, order = ZeroMultiset.from_values([1.0]), 0, (0j,), 0
        oracle = lambda z: 1 - z  # noqa: E731
    elif name == "exp-linear":
        # det_2 already carries the factor e^z, so g vanishes
        zeros, m, g, order = ZeroMultiset.from_values([1.0]), 0, (0j,), 1
        oracle = lambda z: cmath.exp(z) * (1 - z)  # noqa: E731
    elif name == "reciprocal-gamma":
        zeros, m, g, order = ZeroMultiset.from_values(-n, **power_law), 1, (0j, complex(EULER_GAMMA)), 1
        oracle = _reciprocal_gamma
    else:
        raise ValueError(f"unknown Hadamard fixture {name!r}; choose from {', '.join(HADAMARD_FIXTURES)}")
    data = HadamardData(zeros=zeros, m=m, g_coeffs=g, order_lambda=order)
    return HadamardFixture(name=name, data=data, oracle=oracle)


HadamardName = Literal["sinc", "sine", "cosine", "linear", "exp-linear", "reciprocal-gamma"]
HADAMARD_FIXTURES: tuple[str, ...] = get_args(HadamardName)
