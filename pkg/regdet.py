"""
Regularized determinants det_p(I − zD_Z) of diagonal operators, and dense-matrix
oracles for the determinant identities they rest on.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy import linalg

from configs import ROUTE_RTOL, DEFAULT_SERIES_TERMS, get_settings
from errors import (
    BoundExceededError,
    CertificationError,
    ConsistencyError,
    DomainError,
    TruncationError,
)
from factors import checked_exp, ordered_compensated_sum, regdet_log_terms, regdet_term
from opmodel import DiagonalOperator, TailModel

logger = logging.getLogger(__name__)

Pairing = Literal["as-stored", "conjugate-paired", "functional-paired"]

# digits kept when matching ρ with 1 − ρ
_FUNCTIONAL_KEY_DIGITS = 12


class RegDetRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    order_p: int = Field(..., ge=1, description="Determinant order p.")
    eval_point: complex = Field(..., description="Evaluation point z of det_p(I − zD).")
    truncation_N: int | None = Field(None, ge=1, description="Number of diagonal entries used; all when omitted.")
    pairing: Pairing = Field("as-stored", description="Grouping of factors before accumulation.")
    tail_model: TailModel | None = Field(None, description="Overrides the operator's own tail model.")
    certify: bool = Field(False, description="Refuse orders the tail model does not place the operator in.")


class RegDetResult(BaseModel):
    value: complex
    log_value: complex | None = Field(None, description="Compensated log-sum; None when the value is an exact zero.")
    tail_estimate: float = Field(0.0, description="Bound on |log truncated − log full|.")
    zero_index: int | None = Field(None, description="Index of the annihilating factor, if any.")
    terms_used: int = 0
    certified: bool = False


class DenseMatrix(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def _square(cls, entries):
        array = np.array(entries, dtype=np.complex128, copy=True)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] == 0:
            raise ValueError(f"dense oracle needs a nonempty square matrix, got shape {array.shape}")
        array.flags.writeable = False
        return array

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])


class IdentityReport(BaseModel):
    label: str
    lhs: complex
    rhs: complex
    discrepancy: float
    tolerance: float
    passed: bool


def relative_discrepancy(value: complex, reference: complex) -> float:
    scale = max(abs(value), abs(reference))
    if scale == 0:
        return 0.0
    return abs(value - reference) / scale


def _as_dense(A) -> DenseMatrix:
    dense = A if isinstance(A, DenseMatrix) else DenseMatrix(entries=A)
    bound = get_settings().oracle_dim_bound
    if dense.dim > bound:
        raise BoundExceededError(f"dimension {dense.dim} exceeds the oracle bound {bound}")
    return dense


def _group_codes(values: np.ndarray, pairing: Pairing) -> np.ndarray:
    if pairing == "conjugate-paired":
        keys = values.real + 1j * np.abs(values.imag)
    else:
        real = np.round(np.minimum(values.real, 1.0 - values.real), _FUNCTIONAL_KEY_DIGITS)
        keys = real + 1j * np.abs(values.imag)
    codes, _ = pd.factorize(keys)
    return codes


def select_entries(op: DiagonalOperator, N: int | None, pairing: Pairing) -> np.ndarray:
    """
    Indices of the diagonal entries a truncation at N uses, in accumulation order.

    Paired truncations never split a group: every group with a member among the
    first N entries is taken whole, group after group.
    """
    size = op.size
    n = size if N is None else min(N, size)
    if pairing == "as-stored" or n == 0:
        return np.arange(n)
    codes = _group_codes(op.values, pairing)
    wanted = np.unique(codes[:n])
    mask = np.isin(codes, wanted)
    indices = np.flatnonzero(mask)
    return indices[np.argsort(codes[indices], kind="stable")]


def tail_estimate(tail: TailModel, op: DiagonalOperator, order_p: int, z: complex, indices: np.ndarray) -> float:
    """
    Bound on the log of the omitted factors.

    For power-law(κ) with pκ > 1: |log tail| ≤ 2|z|^p c^p N^{1−pκ}/(pκ − 1), where
    c = |z_N|·N^κ, valid while |z|·c·N^{−κ} ≤ 1/2. Otherwise the estimate is infinite.
    """
    if z == 0:
        return 0.0
    used = indices.size
    if tail.kind == "finite":
        if used < op.size:
            raise TruncationError(f"finite tail model but only {used} of {op.size} entries used")
        return 0.0
    if tail.kind == "declared":
        logger.debug("declared tail model gives no numeric bound; tail estimate is infinite")
        return math.inf
    kappa = tail.kappa
    if used == 0 or order_p * kappa <= 1:
        logger.warning("order %d is not summable for power-law(%g); tail estimate is infinite", order_p, kappa)
        return math.inf
    # position of the last entry used counts entries, not groups
    n_last = int(indices.max()) + 1
    c = abs(op.diagonal[n_last - 1]) * n_last**kappa
    head = abs(z) * c * n_last ** (-kappa)
    if head > 0.5:
        logger.warning("tail bound needs |z|·|z_N| ≤ 1/2, got %.3g; tail estimate is infinite", head)
        return math.inf
    return float(2.0 * (abs(z) * c) ** order_p * n_last ** (1.0 - order_p * kappa) / (order_p * kappa - 1.0))


def _chunk_log_sum(p: int, lambdas: np.ndarray, mu: complex) -> complex:
    return ordered_compensated_sum(regdet_log_terms(p, lambdas, mu))


def _log_product(p: int, lambdas: np.ndarray, mu: complex) -> complex:
    settings = get_settings()
    chunk = settings.chunk_size
    chunks = [lambdas[start : start + chunk] for start in range(0, lambdas.size, chunk)]
    logger.debug("accumulating %d factors in %d chunks", lambdas.size, len(chunks))
    if len(chunks) <= 1:
        return _chunk_log_sum(p, lambdas, mu)
    with ThreadPoolExecutor(max_workers=min(settings.threads, len(chunks))) as pool:
        partial = list(pool.map(lambda part: _chunk_log_sum(p, part, mu), chunks))
    return ordered_compensated_sum(partial)


def det_p(op: DiagonalOperator, req: RegDetRequest) -> RegDetResult:
    """
    Truncated det_p(I − zD) = Π (1 − z z_n)·exp(Σ_{j<p} (z z_n)^j / j).

    A factor that vanishes exactly gives value 0 with `zero_index` set to the
    entry's position in the diagonal.
    """
    tail = req.tail_model or op.tail
    p = req.order_p
    z = complex(req.eval_point)
    certified = tail.summable(p)
    if req.certify and not certified:
        raise CertificationError(f"tail model {tail.kind} does not place the operator in J_{p}")
    if z == 0:
        return RegDetResult(value=1.0, log_value=0j, terms_used=0, certified=certified)

    indices = select_entries(op, req.truncation_N, req.pairing)
    estimate = tail_estimate(tail, op, p, z, indices)
    lambdas = op.diagonal[indices]
    mu = -z

    vanishing = (op.values[indices] == z) | (1.0 + mu * lambdas == 0)
    if vanishing.any():
        index = int(indices[np.flatnonzero(vanishing)[0]])
        logger.debug("factor %d annihilates the product at z=%s", index, z)
        return RegDetResult(
            value=0j, tail_estimate=estimate, zero_index=index, terms_used=indices.size, certified=certified
        )

    log_value = _log_product(p, lambdas, mu)
    return RegDetResult(
        value=checked_exp(log_value),
        log_value=log_value,
        tail_estimate=estimate,
        terms_used=int(indices.size),
        certified=certified,
    )


def det_fredholm(op: DiagonalOperator, z: complex, N: int | None = None, certify: bool = False) -> RegDetResult:
    """Π_{n≤N} (1 − z_n z), the Fredholm determinant det(I − zD)."""
    return det_p(op, RegDetRequest(order_p=1, eval_point=z, truncation_N=N, certify=certify))


def winding_number(
    op: DiagonalOperator,
    order: int,
    center: complex,
    radius: float,
    N: int | None = None,
    samples: int = 512,
) -> int:
    """Zeros of the truncated det_p inside |z − center| < radius, by the argument principle."""
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    angles = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    contour = complex(center) + radius * np.exp(1j * angles)
    values = []
    for z in contour:
        result = det_p(op, RegDetRequest(order_p=order, eval_point=complex(z), truncation_N=N))
        if result.zero_index is not None:
            raise DomainError(f"contour passes through the zero of factor {result.zero_index}")
        values.append(result.value)
    values = np.asarray(values)
    steps = np.angle(np.roll(values, -1) / values)
    return int(round(math.fsum(steps) / (2 * np.pi)))


def _log_polynomial(A: np.ndarray, n: int) -> np.ndarray:
    """Σ_{j=1}^{n−1} (−1)^j A^j / j."""
    total = np.zeros_like(A)
    power = np.eye(A.shape[0], dtype=A.dtype)
    for j in range(1, n):
        power = power @ A
        total = total + ((-1) ** j / j) * power
    return total


def rn_matrix(A, n: int) -> DenseMatrix:
    """R_n(A) = (I + A)·exp(Σ_{j<n} (−1)^j A^j / j) − I."""
    if n < 1:
        raise ValueError(f"order must be at least 1, got {n}")
    A = _as_dense(A).entries
    identity = np.eye(A.shape[0], dtype=A.dtype)
    if n == 1:
        return DenseMatrix(entries=A)
    return DenseMatrix(entries=(identity + A) @ linalg.expm(_log_polynomial(A, n)) - identity)


def matrix_det_p(A, n: int, mu: complex = 1.0) -> complex:
    """
    det_n(I + μA), returned from the eigenvalue product.

    The definition det(I + R_n(μA)) is computed too; the two must agree to
    within ROUTE_RTOL.
    """
    A = _as_dense(A)
    mu = complex(mu)
    scaled = mu * A.entries
    by_definition = complex(linalg.det(np.eye(A.dim) + rn_matrix(scaled, n).entries))
    eigenvalues = np.linalg.eigvals(A.entries)
    by_eigenvalues = complex(np.prod([regdet_term(n, lam, mu) for lam in eigenvalues]))
    discrepancy = relative_discrepancy(by_eigenvalues, by_definition)
    if discrepancy > ROUTE_RTOL:
        raise ConsistencyError(
            f"det_{n} routes disagree: eigenvalues {by_eigenvalues} vs definition {by_definition} "
            f"(relative {discrepancy:.3g})"
        )
    return by_eigenvalues


def det_trace_relation_check(A, mu: complex, n: int, tol: float = ROUTE_RTOL) -> IdentityReport:
    """det_n(I + μA) against det(I + μA)·exp(Σ_{j<n} (−1)^j Tr((μA)^j) / j)."""
    A = _as_dense(A)
    scaled = complex(mu) * A.entries
    identity = np.eye(A.dim)
    lhs = complex(linalg.det(identity + rn_matrix(scaled, n).entries))
    traces = []
    power = identity.astype(np.complex128)
    for j in range(1, n):
        power = power @ scaled
        traces.append((-1) ** j * np.trace(power) / j)
    rhs = complex(linalg.det(identity + scaled)) * checked_exp(ordered_compensated_sum(traces))
    discrepancy = relative_discrepancy(lhs, rhs)
    return IdentityReport(
        label=f"det_trace_relation n={n}",
        lhs=lhs,
        rhs=rhs,
        discrepancy=discrepancy,
        tolerance=tol,
        passed=discrepancy <= tol,
    )


def exp_trace_identity_check(
    A, t: complex, terms: int = DEFAULT_SERIES_TERMS, tol: float = ROUTE_RTOL
) -> IdentityReport:
    """exp(Σ_{n≤M} tⁿ Tr(Aⁿ)/n) against det(I − tA)^{−1}."""
    A = _as_dense(A)
    t = complex(t)
    radius = float(np.abs(np.linalg.eigvals(A.entries)).max())
    if abs(t) * radius >= 1:
        raise DomainError(f"|t|·ρ(A) = {abs(t) * radius:.3g} must be below 1")
    series = []
    power = np.eye(A.dim, dtype=np.complex128)
    for k in range(1, terms + 1):
        power = power @ A.entries
        series.append(t**k * np.trace(power) / k)
    lhs = checked_exp(ordered_compensated_sum(series))
    rhs = 1.0 / complex(linalg.det(np.eye(A.dim) - t * A.entries))
    discrepancy = relative_discrepancy(lhs, rhs)
    return IdentityReport(
        label=f"exp_trace terms={terms}",
        lhs=lhs,
        rhs=rhs,
        discrepancy=discrepancy,
        tolerance=tol,
        passed=discrepancy <= tol,
    )
