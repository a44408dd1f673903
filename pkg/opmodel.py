"""
The restricted Polya–Hilbert operator of a zero (or pole) multiset.

Restricted to its total eigenspace, D_Z is the multiplication operator by the
reciprocals z_n = 1/a_n of the entries. Everything here is exact bookkeeping on
that diagonal: spectrum, multiplicities, norm and trace-ideal class.
"""

import logging
from typing import Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from errors import ConstructionError

logger = logging.getLogger(__name__)


def _frozen_array(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True).ravel()
    array.flags.writeable = False
    return array


class TailModel(BaseModel):
    """
    How the stored entries continue beyond what is stored.

    `finite`: the stored entries are all of them. `power-law`: |z_n| = Θ(n^−κ).
    `declared`: the caller vouches for membership in J_p for p ≥ p_star.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["finite", "power-law", "declared"] = "finite"
    kappa: float | None = Field(None, description="Decay exponent of |z_n| for power-law tails.")
    p_star: int | None = Field(None, ge=1, description="Declared summability exponent.")

    @model_validator(mode="after")
    def _check_parameters(self):
        if self.kind == "power-law" and self.kappa is None:
            raise ValueError("power-law tail needs kappa")
        if self.kind == "declared" and self.p_star is None:
            raise ValueError("declared tail needs p_star")
        return self

    @classmethod
    def finite(cls) -> "TailModel":
        return cls(kind="finite")

    @classmethod
    def power_law(cls, kappa: float) -> "TailModel":
        return cls(kind="power-law", kappa=kappa)

    @classmethod
    def declared(cls, p_star: int) -> "TailModel":
        return cls(kind="declared", p_star=p_star)

    def summable(self, p: int) -> bool:
        """Whether Σ|z_n|^p < ∞ under this model."""
        if self.kind == "finite":
            return True
        if self.kind == "power-law":
            return p * self.kappa > 1
        return p >= self.p_star


class ZeroMultiset(BaseModel):
    """
    Ordered multiset of complex zeros or poles with multiplicities.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray = Field(..., description="Entry values in order.")
    multiplicities: np.ndarray = Field(..., description="Positive multiplicity per entry.")
    kind: Literal["zeros", "poles"] = "zeros"
    infinite: bool = Field(False, description="Stored entries truncate an infinite sequence.")
    tail: TailModel = Field(default_factory=TailModel.finite)

    @model_validator(mode="before")
    @classmethod
    def _default_multiplicities(cls, data):
        if isinstance(data, dict) and data.get("multiplicities") is None:
            data = dict(data)
            data["multiplicities"] = np.ones(np.size(data.get("values", [])), dtype=np.int64)
        return data

    @field_validator("values", mode="before")
    @classmethod
    def _as_complex(cls, values):
        array = _frozen_array(values, np.complex128)
        if not np.all(np.isfinite(array)):
            raise ValueError("multiset entries must be finite")
        return array

    @field_validator("multiplicities", mode="before")
    @classmethod
    def _as_counts(cls, multiplicities):
        array = _frozen_array(multiplicities, np.int64)
        if np.any(array < 1):
            raise ValueError("multiplicities must be positive")
        return array

    @model_validator(mode="after")
    def _check_lengths(self):
        if self.values.shape != self.multiplicities.shape:
            raise ValueError("values and multiplicities differ in length")
        return self

    @classmethod
    def from_values(cls, values, kind: str = "zeros", collapse: bool = False, **kwargs) -> "ZeroMultiset":
        values = np.asarray(values, dtype=np.complex128).ravel()
        if not collapse:
            return cls(values=values, multiplicities=None, kind=kind, **kwargs)
        codes, uniques = pd.factorize(values)
        return cls(values=uniques, multiplicities=np.bincount(codes), kind=kind, **kwargs)

    @property
    def size(self) -> int:
        return int(self.multiplicities.sum())

    def expanded(self) -> np.ndarray:
        return np.repeat(self.values, self.multiplicities)


class DiagonalOperator(BaseModel):
    """
    D_Z restricted to its eigenspace: multiplication by z_n = 1/a_n.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    diagonal: np.ndarray = Field(..., description="Reciprocals of the expanded entries, in order.")
    values: np.ndarray = Field(..., description="Expanded source entries a_n.")
    source: ZeroMultiset

    @classmethod
    def from_zeros(cls, zeros: ZeroMultiset) -> "DiagonalOperator":
        values = zeros.expanded()
        vanishing = np.flatnonzero(values == 0)
        if vanishing.size:
            raise ConstructionError(
                f"entry {int(vanishing[0])} is zero; the construction needs f(0) != 0"
            )
        diagonal = 1.0 / values
        diagonal.flags.writeable = False
        values.flags.writeable = False
        logger.debug("built diagonal operator with %d entries", values.size)
        return cls(diagonal=diagonal, values=values, source=zeros)

    @property
    def size(self) -> int:
        return int(self.diagonal.size)

    @property
    def infinite(self) -> bool:
        return self.source.infinite

    @property
    def tail(self) -> TailModel:
        return self.source.tail

    def as_multiset(self) -> ZeroMultiset:
        return ZeroMultiset.from_values(self.diagonal, kind=self.source.kind)


def from_zeros(zeros: ZeroMultiset) -> DiagonalOperator:
    return DiagonalOperator.from_zeros(zeros)


class Spectrum(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    points: np.ndarray
    includes_zero: bool


class IdealClass(BaseModel):
    model_config = ConfigDict(frozen=True)

    p_star: int | None = Field(..., description="Least p with Σ|z_n|^p < ∞, or None up to p_max.")
    p_max: int
    is_bounded: bool
    is_compact: bool
    is_self_adjoint: bool
    tail_kind: str

    def member_of(self, p: int) -> bool:
        return self.p_star is not None and p >= self.p_star

    @property
    def is_trace_class(self) -> bool:
        return self.member_of(1)

    @property
    def is_hilbert_schmidt(self) -> bool:
        return self.member_of(2)


def spectrum(op: DiagonalOperator) -> Spectrum:
    return Spectrum(points=pd.unique(op.diagonal), includes_zero=op.infinite)


def eigen_multiplicity(op: DiagonalOperator, z: complex) -> int:
    return int(np.count_nonzero(op.diagonal == complex(z)))


def operator_norm(op: DiagonalOperator) -> float:
    return float(np.abs(op.diagonal).max()) if op.size else 0.0


def singular_values(op: DiagonalOperator) -> np.ndarray:
    return np.sort(np.abs(op.diagonal))[::-1]


def classify(op: DiagonalOperator, p_max: int = 8, tol: float = 0.0) -> IdealClass:
    """
    Boundedness, compactness, J_p class and self-adjointness of D_Z.

    Summability comes from the operator's tail model, never from the stored
    truncation alone.
    """
    if p_max < 1:
        raise ValueError(f"p_max must be at least 1, got {p_max}")
    tail = op.tail
    p_star = next((p for p in range(1, p_max + 1) if tail.summable(p)), None)
    if tail.kind == "power-law":
        is_bounded = tail.kappa >= 0
        is_compact = tail.kappa > 0
    else:
        is_bounded = is_compact = True
    is_self_adjoint = bool(np.all(np.abs(op.diagonal.imag) <= tol))
    return IdealClass(
        p_star=p_star,
        p_max=p_max,
        is_bounded=is_bounded,
        is_compact=is_compact,
        is_self_adjoint=is_self_adjoint,
        tail_kind=tail.kind,
    )
