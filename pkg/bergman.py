"""
The weighted Bergman space H_α with weight e^{−|z|^α}, and the differentiation
operator D acting on it as a weighted backward shift in the orthonormal basis
u_n = c_n zⁿ.

Every Γ evaluation goes through log-Γ: the arguments (2/α)(n+1) reach 10⁵ scale.
"""

import logging
import math

import mpmath
import numpy as np
from numpy.polynomial import Polynomial
from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate, linalg, special

from configs import DEFAULT_P_MAX, DEFAULT_TRUNCATION, ROUTE_RTOL, get_settings
from errors import DomainError, QuadratureError
from factors import checked_exp
from opmodel import DiagonalOperator, IdealClass, TailModel, ZeroMultiset, classify

logger = logging.getLogger(__name__)

# determinant constructions need α below this
CONSTRUCTION_ALPHA = 0.5


class BergmanParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., gt=0, le=1, description="Exponent of the weight e^{−|z|^α}.")

    @property
    def a(self) -> float:
        """lim φ(t)/t for φ(t) = t^α: the spectral radius of D."""
        return 1.0 if self.alpha == 1 else 0.0

    @property
    def construction_ready(self) -> bool:
        return self.alpha < CONSTRUCTION_ALPHA

    @property
    def scale(self) -> float:
        return 2.0 / self.alpha


class ShiftTruncation(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    params: BergmanParams
    N: int = Field(..., ge=1)
    gamma: np.ndarray = Field(..., description="Shift weights γ_0..γ_{N−1}.")
    matrix: np.ndarray = Field(..., description="(N+1)×(N+1) matrix with superdiagonal γ.")


def log_weight_norm_sq(n, alpha: float):
    """log ‖zⁿ‖² = log(2π/α) − (2/α)(n+1)·log 2 + log Γ((2/α)(n+1)). Vectorized in n."""
    s = (2.0 / alpha) * (np.asarray(n, dtype=float) + 1.0)
    return np.log(2 * np.pi / alpha) - s * np.log(2.0) + special.gammaln(s)


def weight_norm_sq(n: int, alpha: float) -> float:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    return checked_exp(log_weight_norm_sq(n, alpha)).real


def _log_radial_integral(power: float, alpha: float, tol: float) -> float:
    """
    log ∫₀^∞ r^power e^{−2r^α} dr by quadrature.

    x = 2r^α turns the integral into (1/α)·2^{−s}∫ x^{s−1}e^{−x} dx with
    s = (power+1)/α. The integrand is scaled by its peak and cut at X where
    the analytic tail falls below tol/10.
    """
    s = (power + 1.0) / alpha
    peak = max(s - 1.0, 0.0)
    log_peak = (s - 1.0) * math.log(peak) - peak if peak > 0 else 0.0

    def scaled(x):
        if x == 0:
            return 1.0 if s == 1 else 0.0
        return math.exp((s - 1.0) * math.log(x) - x - log_peak)

    width = 10.0 * math.sqrt(max(s, 1.0)) + 40.0
    cutoff = peak + width
    while scaled(cutoff) / max(1.0 - (s - 1.0) / cutoff, 1e-300) > tol / 10:
        cutoff += width
    logger.debug("radial quadrature s=%.4g cut at X=%.4g", s, cutoff)

    points = [peak] if 0 < peak < cutoff else None
    value, error = integrate.quad(scaled, 0.0, cutoff, epsabs=0.0, epsrel=tol / 10, limit=500, points=points)
    if not value > 0 or error > tol * value:
        raise QuadratureError(f"radial quadrature did not converge: value {value:.6g}, error {error:.3g}")
    return -math.log(alpha) - s * math.log(2.0) + log_peak + math.log(value)


def weight_norm_sq_quadrature(n: int, alpha: float, tol: float = 1e-10) -> float:
    """‖zⁿ‖² = 2π∫₀^∞ r^{2n+1}e^{−2r^α} dr, evaluated numerically."""
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    return checked_exp(math.log(2 * np.pi) + _log_radial_integral(2 * n + 1, alpha, tol)).real


def inner_product_quadrature(n: int, m: int, alpha: float, tol: float = 1e-10) -> complex:
    """(zⁿ, z^m) in H_α as a product of radial and angular quadratures."""
    k = n - m

    def angular(part):
        return integrate.quad(lambda t: part(k * t), 0.0, 2 * np.pi, limit=200)[0]

    angle = complex(angular(math.cos), angular(math.sin))
    radial = checked_exp(_log_radial_integral(n + m + 1, alpha, tol)).real
    return radial * angle


# Stirling coefficients B_2k / (2k(2k − 1)), k = 1..4
_STIRLING = (1 / 12, -1 / 360, 1 / 1260, -1 / 1680)
_STIRLING_FROM = 20.0


def _log_rising(x: np.ndarray, a: float) -> np.ndarray:
    """log Γ(x + a) − log Γ(x), free of the cancellation in a difference of gammaln values."""
    x = np.asarray(x, dtype=float)
    large = np.maximum(x, _STIRLING_FROM)
    stirling = (large - 0.5) * np.log1p(a / large) + a * np.log(large + a) - a
    for k, c in enumerate(_STIRLING, start=1):
        stirling += c * ((large + a) ** (1 - 2 * k) - large ** (1 - 2 * k))
    small = np.minimum(x, _STIRLING_FROM)
    return np.where(x < _STIRLING_FROM, special.gammaln(small + a) - special.gammaln(small), stirling)


def _log_shift_weights(alpha: float, n: np.ndarray) -> np.ndarray:
    """log γ_n from γ_n² = 2^{2/α}(n+1)²·Γ((2/α)(n+1))/Γ((2/α)(n+2))."""
    a = 2.0 / alpha
    n = np.asarray(n, dtype=float)
    return 0.5 * (a * np.log(2.0) + 2.0 * np.log(n + 1.0) - _log_rising(a * (n + 1.0), a))


def shift_weights(params: BergmanParams, N: int) -> np.ndarray:
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    return np.exp(_log_shift_weights(params.alpha, np.arange(N)))


def shift_weights_from_norms(params: BergmanParams, N: int) -> np.ndarray:
    """
    γ_n = (n+1)·c_{n+1}/c_n with c_n = ‖zⁿ‖^{−1}.

    The norms reach e^{10^5} and their logs differ in the last few digits, so
    the ratio is taken at 30 digits.
    """
    with mpmath.workdps(30):
        alpha = mpmath.mpf(params.alpha)
        scale = mpmath.log(2 * mpmath.pi / alpha)
        log_norms = [scale - s * mpmath.log(2) + mpmath.loggamma(s) for s in (2 * (n + 1) / alpha for n in range(N + 1))]
        return np.array(
            [float(mpmath.exp(mpmath.log(n + 1) - (log_norms[n + 1] - log_norms[n]) / 2)) for n in range(N)]
        )


def build_truncation(params: BergmanParams, N: int = DEFAULT_TRUNCATION) -> ShiftTruncation:
    if not params.construction_ready:
        logger.warning("alpha=%g is not below %g; determinant constructions need it", params.alpha, CONSTRUCTION_ALPHA)
    gamma = shift_weights(params, N)
    matrix = np.diag(gamma, k=1)
    gamma.flags.writeable = False
    matrix.flags.writeable = False
    return ShiftTruncation(params=params, N=N, gamma=gamma, matrix=matrix)


def gamma_asymptotic_fit(params: BergmanParams, n_lo: int, n_hi: int) -> float:
    """Least-squares slope of log γ_n against log n; tends to 1 − 1/α."""
    if not 10 <= n_lo < n_hi:
        raise DomainError(f"fit window needs 10 <= n_lo < n_hi, got [{n_lo}, {n_hi}]")
    n = np.arange(n_lo, n_hi + 1)
    slope, _ = np.polyfit(np.log(n), _log_shift_weights(params.alpha, n), 1)
    return float(slope)


def log_derivative_norm_bound(n: int, params: BergmanParams) -> float:
    alpha = params.alpha
    ratio = n / alpha
    # stationary point r = (n/α)^{1/α}, where r^α = n/α
    return float(special.gammaln(n + 1) - (n / alpha) * math.log(ratio) + ratio)


def derivative_norm_bound(n: int, params: BergmanParams) -> float:
    """min over r > 0 of n!·r^{−n}·e^{r^α}."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return checked_exp(log_derivative_norm_bound(n, params)).real


class NormCheck(BaseModel):
    k: int
    norm: float
    bound: float
    root: float
    within_bound: bool


class NormCheckReport(BaseModel):
    alpha: float
    N: int
    checks: list[NormCheck]
    roots_decreasing: bool
    tail_sups: dict[int, float] = Field(..., description="sup_{m>M} γ_m keyed by M.")
    dense_discrepancy: float | None = Field(None, description="Structural against dense SVD norms, small N only.")
    passed: bool


def _log_power_norms(gamma: np.ndarray, k_max: int) -> np.ndarray:
    """log ‖T^k‖: the largest product of k consecutive weights, -inf once T^k = 0."""
    logs = np.log(gamma)
    cumulative = np.concatenate(([0.0], np.cumsum(logs)))
    norms = np.full(k_max, -np.inf)
    for k in range(1, min(k_max, gamma.size) + 1):
        norms[k - 1] = float(np.max(cumulative[k:] - cumulative[:-k]))
    return norms


def truncation_norm_checks(tr: ShiftTruncation, k_max: int) -> NormCheckReport:
    if k_max < 1:
        raise ValueError(f"k_max must be positive, got {k_max}")
    log_norms = _log_power_norms(tr.gamma, k_max)
    checks = []
    for k, log_norm in enumerate(log_norms, start=1):
        log_bound = log_derivative_norm_bound(k, tr.params)
        checks.append(
            NormCheck(
                k=k,
                norm=math.exp(log_norm),
                bound=math.exp(min(log_bound, 709.0)),
                root=math.exp(log_norm / k),
                within_bound=bool(log_norm <= log_bound + 1e-12 * max(1.0, abs(log_bound))),
            )
        )

    roots = np.array([check.root for check in checks])
    cuts = sorted({tr.N // 8, tr.N // 4, tr.N // 2, (3 * tr.N) // 4} - {0})
    tail_sups = {M: float(tr.gamma[M + 1 :].max()) for M in cuts if M + 1 < tr.N}

    dense_discrepancy = None
    if tr.N + 1 <= get_settings().oracle_dim_bound:
        power = np.eye(tr.N + 1)
        dense = []
        for _ in range(k_max):
            power = power @ tr.matrix
            dense.append(linalg.svdvals(power)[0])
        structural = np.exp(log_norms)
        dense_discrepancy = float(np.max(np.abs(np.array(dense) - structural) / np.maximum(structural, 1e-300)))
    passed = all(check.within_bound for check in checks) and (
        dense_discrepancy is None or dense_discrepancy <= ROUTE_RTOL
    )
    return NormCheckReport(
        alpha=tr.params.alpha,
        N=tr.N,
        checks=checks,
        roots_decreasing=bool(np.all(np.diff(roots) <= 0)),
        tail_sups=tail_sups,
        dense_discrepancy=dense_discrepancy,
        passed=passed,
    )


class TranslationReport(BaseModel):
    s: complex
    degree: int
    discrepancy: float
    tolerance: float
    passed: bool


def translation_check(tr: ShiftTruncation, s: complex, poly_coeffs, tol: float = 1e-10) -> TranslationReport:
    """
    exp(−sD) f = f(· − s) on a polynomial, in the u_n basis.

    D lowers degree, so the leading (deg+1) block of the truncation acts on f
    exactly as D does.
    """
    coeffs = np.asarray(poly_coeffs, dtype=np.complex128)
    degree = coeffs.size - 1
    if degree < 0:
        raise ValueError("polynomial needs at least one coefficient")
    if degree >= tr.N:
        raise DomainError(f"degree {degree} must be below the truncation size {tr.N}")
    s = complex(s)
    basis_scale = np.exp(0.5 * log_weight_norm_sq(np.arange(degree + 1), tr.params.alpha))
    block = tr.matrix[: degree + 1, : degree + 1]
    translated = linalg.expm(-s * block) @ (coeffs * basis_scale)

    shifted = Polynomial(coeffs)(Polynomial([-s, 1.0])).coef
    expected = np.zeros(degree + 1, dtype=np.complex128)
    expected[: shifted.size] = shifted
    expected = expected * basis_scale

    scale = float(np.abs(expected).max()) or 1.0
    discrepancy = float(np.abs(translated - expected).max()) / scale
    return TranslationReport(s=s, degree=degree, discrepancy=discrepancy, tolerance=tol, passed=discrepancy <= tol)


class AdjointReport(BaseModel):
    transpose_is_forward_shift: bool
    dd_star_on_constant: float = Field(..., description="Coefficient of u_0 in DD*·1; equals γ_0².")
    d_star_d_on_constant: float = Field(..., description="Norm of D*D·1; zero.")
    gamma0_sq: float
    normal: bool
    passed: bool


def adjoint_check(tr: ShiftTruncation) -> AdjointReport:
    adjoint = tr.matrix.T
    forward = bool(np.array_equal(np.diag(adjoint, k=-1), tr.gamma)) and not np.any(np.triu(adjoint))
    constant = np.zeros(tr.N + 1)
    constant[0] = 1.0
    dd_star = tr.matrix @ (adjoint @ constant)
    d_star_d = adjoint @ (tr.matrix @ constant)
    gamma0_sq = float(tr.gamma[0] ** 2)
    normal = bool(np.allclose(dd_star, d_star_d))
    passed = (
        forward
        and math.isclose(dd_star[0], gamma0_sq, rel_tol=1e-15)
        and float(np.linalg.norm(d_star_d)) == 0.0
        and not normal
    )
    return AdjointReport(
        transpose_is_forward_shift=forward,
        dd_star_on_constant=float(dd_star[0]),
        d_star_d_on_constant=float(np.linalg.norm(d_star_d)),
        gamma0_sq=gamma0_sq,
        normal=normal,
        passed=passed,
    )


class ShiftedSpectrumReport(BaseModel):
    tau: complex
    dim: int
    max_deviation: float
    passed: bool


def shifted_spectrum_check(tr: ShiftTruncation, tau: complex, tol: float = 1e-10) -> ShiftedSpectrumReport:
    """The truncation of D + τI has the single eigenvalue τ."""
    tau = complex(tau)
    dim = min(tr.N + 1, get_settings().oracle_dim_bound)
    block = tr.matrix[:dim, :dim] + tau * np.eye(dim)
    deviation = float(np.abs(np.linalg.eigvals(block) - tau).max())
    return ShiftedSpectrumReport(tau=tau, dim=dim, max_deviation=deviation, passed=deviation <= tol * max(1.0, abs(tau)))


class JpMembership(BaseModel):
    alpha: float
    p: int
    n_max: int
    partial_sum: float
    slope: float
    tail_bound: float = Field(..., description="Integral bound of the fitted power tail; inf when divergent.")
    ideal: IdealClass
    member: bool


def jp_membership(params: BergmanParams, p: int, n_max: int = 100_000) -> JpMembership:
    """
    Whether D ∈ J_p: the singular values γ_n summed to n_max, extended by the
    power tail fitted over [n_max/10, n_max] and classified with that tail.
    """
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    log_gamma = _log_shift_weights(params.alpha, np.arange(n_max))
    partial_sum = math.fsum(np.exp(p * log_gamma))
    slope = gamma_asymptotic_fit(params, max(10, n_max // 10), n_max - 1)
    kappa = -slope
    exponent = p * kappa
    if exponent > 1:
        tail_bound = math.exp(p * log_gamma[-1]) * n_max / (exponent - 1.0)
    else:
        tail_bound = math.inf
    # singular values γ_n sit on the diagonal of the operator built from 1/γ_n
    singular = ZeroMultiset.from_values(np.exp(-log_gamma), infinite=True, tail=TailModel.power_law(kappa))
    ideal = classify(DiagonalOperator.from_zeros(singular), p_max=max(p, DEFAULT_P_MAX))
    logger.debug("J_%d test alpha=%g: slope %.4f, partial sum %.6g", p, params.alpha, slope, partial_sum)
    return JpMembership(
        alpha=params.alpha,
        p=p,
        n_max=n_max,
        partial_sum=partial_sum,
        slope=slope,
        tail_bound=tail_bound,
        ideal=ideal,
        member=ideal.member_of(p),
    )
