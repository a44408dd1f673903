import logging
import math
from pathlib import Path
from typing import ClassVar, Literal

import numpy as np
from pydantic import BaseModel, Field

import bergman
import ffcurves
import recon
from configs import (
    CURVE_RTOL,
    DEFAULT_GAMMA_TERMS,
    DEFAULT_TRUNCATION,
    EULER_S2_RTOL,
    EULER_S3_RTOL,
    FULL_HEIGHTS,
    GAMMA_RECON_RTOL,
    GAMMA_ROUTE_RTOL,
    HADAMARD_RTOL,
    QUADRATURE_RTOL,
    RELAXED_HEIGHTS,
    RELAXED_RTOL,
    ROUTE_RTOL,
    SLOPE_ATOL,
    TAIL_SAFETY,
    WEIL_RTOL,
    XI_RTOL,
    XI_SYMMETRY_RTOL,
    ZETA_RTOL,
    get_settings,
)
from data_fetching import get_data, update_data
from errors import ConsistencyError, DomainError, ParseError
from opmodel import DiagonalOperator, TailModel, ZeroMultiset, classify
from oracles import gamma_oracle, xi_oracle, zeta_oracle
from regdet import (
    Pairing,
    RegDetRequest,
    det_p,
    det_trace_relation_check,
    exp_trace_identity_check,
    matrix_det_p,
    relative_discrepancy,
)
from reports import Report, ReportRow

logger = logging.getLogger(__name__)

FIXTURES = Path(__file__).parent / "fixtures"
CURVE_FIXTURES = ("e_f3.curve", "e_f5.curve", "p1_f3.curve")


def parse_complex(text: str) -> complex:
    """Reads 2, 0.5+1j, 2+i or 2.5i."""
    cleaned = str(text).strip().replace(" ", "")
    if cleaned.lower().lstrip("+-") in ("inf", "nan"):
        return complex(float(cleaned))
    if cleaned.endswith("i"):
        cleaned = cleaned[:-1] + "j"
        if cleaned in ("j", "+j", "-j") or cleaned[-2] in "+-":
            cleaned = cleaned[:-1] + "1j"
    return complex(cleaned)


def _read_values(path: str) -> list[complex]:
    values = []
    for line_number, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(parse_complex(line))
        except ValueError:
            raise ParseError(f"not a number: {line!r}", line=line_number) from None
    return values


def _label(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}i"


class Command(BaseModel):
    """
    Flags shared by every subcommand.
    """

    name: ClassVar[str] = ""

    tol: float | None = Field(None, gt=0, description="Tolerance for every checked row; defaults per check.")
    format: Literal["json", "csv"] = Field("json", description="Report format on stdout.")
    seed: int = Field(0, description="Seed for randomized oracle inputs.")
    no_timing: bool = Field(False, description="Report runtime_ms as 0 so reruns are byte-identical.")

    def tolerance(self, default: float) -> float:
        return self.tol if self.tol is not None else default

    def inputs(self) -> dict:
        return self.model_dump(exclude={"format", "no_timing"})

    def report(self) -> Report:
        return Report(command=self.name, inputs=self.inputs())

    def run(self) -> Report:
        raise NotImplementedError


class RegDetCommand(Command):
    """
    Regularized determinant det_p(I − zD) of a diagonal operator, checked against
    the dense matrix definition when the operator is small.
    """

    name: ClassVar[str] = "regdet"

    diag: list[complex] | None = Field(None, description="Diagonal entries, inline.")
    diag_file: str | None = Field(None, description="File with one diagonal entry per line.")
    order: int = Field(1, ge=1, description="Determinant order p.")
    z: list[complex] = Field([1 + 0j], description="Evaluation points.")
    terms: int | None = Field(None, ge=1, description="Truncation N; all entries when omitted.")
    pairing: Pairing = Field("as-stored", description="Grouping of factors before accumulation.")

    def run(self) -> Report:
        entries = list(self.diag or []) + (_read_values(self.diag_file) if self.diag_file else [])
        if not entries:
            raise DomainError("no diagonal entries; give --diag or --diag-file")
        diagonal = np.asarray(entries, dtype=np.complex128)
        if np.any(diagonal == 0):
            raise DomainError("diagonal entries must be nonzero")
        op = DiagonalOperator.from_zeros(ZeroMultiset.from_values(1.0 / diagonal))
        dense = op.size <= get_settings().oracle_dim_bound and self.terms is None
        report = self.report()
        for z in self.z:
            result = det_p(op, RegDetRequest(order_p=self.order, eval_point=z, truncation_N=self.terms, pairing=self.pairing))
            label = f"det_{self.order}(z={_label(z)})"
            if not dense:
                report.rows.append(ReportRow.value(label, result.value))
                continue
            try:
                oracle = matrix_det_p(np.diag(diagonal), self.order, mu=-complex(z))
            except ConsistencyError as exc:
                logger.warning("%s", exc)
                report.rows.append(ReportRow.flag(f"{label} dense_routes", False, result.value))
                continue
            report.rows.append(
                ReportRow.check(label, result.value, relative_discrepancy(result.value, oracle), self.tolerance(ROUTE_RTOL), oracle)
            )
        return report


class BergmanCommand(Command):
    """
    Shift weights, norms and spectral checks of the derivative on the weighted
    Bergman space with weight exp(−|z|^α).
    """

    name: ClassVar[str] = "bergman"

    alpha: list[float] = Field([0.5], description="Weight exponents α in (0, 1].")
    terms: int = Field(DEFAULT_TRUNCATION, ge=2, description="Truncation size N.")
    k_max: int = Field(20, ge=1, description="Largest power k in the ‖T^k‖ checks.")
    n_quad: int = Field(10, ge=0, description="Largest n compared against quadrature.")

    def run(self) -> Report:
        rng = np.random.default_rng(self.seed)
        report = self.report()
        for alpha in self.alpha:
            params = bergman.BergmanParams(alpha=alpha)
            tag = f"alpha={alpha:g}"

            worst = max(
                relative_discrepancy(bergman.weight_norm_sq(n, alpha), bergman.weight_norm_sq_quadrature(n, alpha))
                for n in range(self.n_quad + 1)
            )
            report.rows.append(ReportRow.check(f"{tag} norm_vs_quadrature", worst, worst, self.tolerance(QUADRATURE_RTOL)))

            n = min(1000, self.terms)
            direct = bergman.shift_weights(params, n)
            from_norms = bergman.shift_weights_from_norms(params, n)
            disc = float(np.max(np.abs(direct - from_norms) / direct))
            report.rows.append(ReportRow.check(f"{tag} gamma_routes n<{n}", disc, disc, self.tolerance(GAMMA_ROUTE_RTOL)))

            tr = bergman.build_truncation(params, self.terms)
            if self.terms > 100:
                slope = bergman.gamma_asymptotic_fit(params, self.terms // 10, self.terms - 1)
                expected = 1.0 - 1.0 / alpha
                report.rows.append(
                    ReportRow.check(f"{tag} slope", slope, abs(slope - expected), self.tolerance(SLOPE_ATOL), expected)
                )

            norms = bergman.truncation_norm_checks(tr, self.k_max)
            ratio = max(check.norm / check.bound for check in norms.checks if check.bound > 0)
            report.rows.append(ReportRow.flag(f"{tag} power_norms_within_bound", norms.passed, ratio))

            cubic = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            s = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
            translation = bergman.translation_check(tr, s, cubic, tol=self.tolerance(ROUTE_RTOL))
            report.rows.append(
                ReportRow.check(f"{tag} translation", translation.discrepancy, translation.discrepancy, translation.tolerance)
            )

            adjoint = bergman.adjoint_check(tr)
            report.rows.append(ReportRow.flag(f"{tag} adjoint", adjoint.passed, adjoint.gamma0_sq))
            shifted = bergman.shifted_spectrum_check(tr, s)
            report.rows.append(ReportRow.flag(f"{tag} shifted_spectrum", shifted.passed, shifted.max_deviation))
            report.rows.append(ReportRow.value(f"{tag} construction_ready", float(params.construction_ready)))
        return report


class GammaCommand(Command):
    """
    Γ(z) rebuilt from the zeros −1, −2, … of 1/(zΓ(z)), against the Lanczos oracle.

    With --tol the ratio check allows twice the tolerance, one share per Γ value.
    """

    name: ClassVar[str] = "gamma"

    points: list[complex] = Field([0.5 + 0j], description="Evaluation points z.")
    terms: int = Field(DEFAULT_GAMMA_TERMS, ge=1, description="Truncation N of the zero set.")
    functional: bool = Field(False, description="Also check Γ(z+1)/Γ(z) = z at each point.")

    def run(self) -> Report:
        report = self.report()
        for z in self.points:
            result = recon.gamma_reconstruct(z, self.terms)
            oracle = gamma_oracle(z)
            tol = self.tolerance(TAIL_SAFETY * result.tail_estimate + 1e-12)
            report.rows.append(
                ReportRow.check(f"gamma({_label(z)})", result.value, relative_discrepancy(result.value, oracle), tol, oracle)
            )
            if self.functional:
                check = recon.gamma_functional_check(z, self.terms)
                ratio_tol = 2 * self.tol if self.tol is not None else TAIL_SAFETY * check.tolerance + 1e-12
                report.rows.append(
                    ReportRow.check(f"gamma_ratio({_label(z)})", check.lhs, check.discrepancy, ratio_tol, check.rhs)
                )
        return report


class EulerCommand(Command):
    """
    The Euler product over primes up to a bound, each factor a Fredholm determinant.
    """

    name: ClassVar[str] = "euler"

    s: list[complex] = Field([2 + 0j, 3 + 0j], description="Points with Re s > 1.")
    prime_bound: int = Field(10_000, ge=2, description="Largest prime in the product.")

    def run(self) -> Report:
        report = self.report()
        for s in self.s:
            value = recon.euler_product_det(s, self.prime_bound)
            oracle = zeta_oracle(s)
            tol = self.tolerance(TAIL_SAFETY * recon.euler_tail_estimate(s, self.prime_bound))
            report.rows.append(
                ReportRow.check(f"euler({_label(s)})", value, relative_discrepancy(value, oracle), tol, oracle)
            )
        return report


class HeightTargets(BaseModel):
    """Fixed accuracy targets for reconstructions from a given number of zero heights."""

    heights: int
    xi: float
    symmetry: float
    zeta: float

    @property
    def sufficient(self) -> bool:
        return self.heights >= RELAXED_HEIGHTS

    @classmethod
    def for_heights(cls, heights: int) -> "HeightTargets":
        if heights >= FULL_HEIGHTS:
            return cls(heights=heights, xi=XI_RTOL, symmetry=XI_SYMMETRY_RTOL, zeta=ZETA_RTOL)
        return cls(heights=heights, xi=RELAXED_RTOL, symmetry=RELAXED_RTOL, zeta=RELAXED_RTOL)


def _heights_row(targets: HeightTargets) -> ReportRow:
    """Fails when too few heights back the targets."""
    return ReportRow.flag(f"heights_used>={RELAXED_HEIGHTS}", targets.sufficient, targets.heights)


def _symmetry_discrepancy(value: complex, mirror: complex) -> float:
    scale = max(abs(value), abs(mirror))
    return 0.0 if scale == 0 else abs(value - mirror) / scale


class XiCommand(Command):
    """
    ξ(s) rebuilt from the zero heights, against the η-series oracle, with the
    symmetry ξ(s) = ξ(1 − s) checked on the same points.

    Tolerances are fixed by the number of heights: 1e-3 (2e-3 for symmetry)
    from 10^5 heights, 3e-2 from 10^3. Fewer than 10^3 heights fail the run.
    """

    name: ClassVar[str] = "xi"

    zeros: str | None = Field(None, description="Zero height file; the configured dataset when omitted.")
    terms: int | None = Field(None, ge=1, description="Number of zero heights used.")
    points: list[complex] = Field(
        [0j, 0.5 + 0j, 1 + 0j, 2 + 0j, 3 + 0j, 0.5 + 1j, 0.5 + 5j], description="Evaluation points s."
    )

    def run(self) -> Report:
        data = get_data(self.zeros)
        targets = HeightTargets.for_heights(self.terms or data.count)
        report = self.report()
        if self.tol is None:
            report.rows.append(_heights_row(targets))
        for s in self.points:
            result = recon.xi_reconstruct(s, data, self.terms)
            oracle = xi_oracle(s)
            report.rows.append(
                ReportRow.check(
                    f"xi({_label(s)})", result.value, relative_discrepancy(result.value, oracle), self.tolerance(targets.xi), oracle
                )
            )
            mirror = recon.xi_reconstruct(1 - complex(s), data, self.terms)
            disc = _symmetry_discrepancy(result.value, mirror.value)
            report.rows.append(
                ReportRow.check(f"xi_symmetry({_label(s)})", mirror.value, disc, self.tolerance(targets.symmetry), result.value)
            )
        return report


class ZetaCommand(Command):
    """
    ζ(s) from the Γ-type, ξ and pole determinants, against the η-series oracle.

    Tolerances follow the number of heights as for xi: 2e-3 from 10^5, 3e-2 from 10^3.
    """

    name: ClassVar[str] = "zeta"

    zeros: str | None = Field(None, description="Zero height file; the configured dataset when omitted.")
    terms: int | None = Field(None, ge=1, description="Number of zero heights used.")
    gamma_terms: int = Field(DEFAULT_GAMMA_TERMS, ge=1, description="Truncation of the Γ-type factor.")
    points: list[complex] = Field([2 + 0j, 3 + 0j, 0j, -1 + 0j, -2 + 0j], description="Evaluation points s.")

    def run(self) -> Report:
        data = get_data(self.zeros)
        targets = HeightTargets.for_heights(self.terms or data.count)
        report = self.report()
        if self.tol is None:
            report.rows.append(_heights_row(targets))
        for s in self.points:
            result = recon.zeta_reconstruct(s, data, self.terms, self.gamma_terms)
            oracle = zeta_oracle(s)
            label = f"zeta({_label(s)})"
            if result.zero_index is not None:
                report.rows.append(ReportRow.flag(f"{label} exact_zero", result.value == 0 and oracle == 0, result.value))
                continue
            report.rows.append(
                ReportRow.check(label, result.value, relative_discrepancy(result.value, oracle), self.tolerance(targets.zeta), oracle)
            )
        return report


class HadamardCommand(Command):
    """
    Entire functions of finite order rebuilt from their zeros in Hadamard form.
    """

    name: ClassVar[str] = "hadamard"

    fixture: list[recon.HadamardName] = Field(
        list(recon.HADAMARD_FIXTURES), description="Named functions to rebuild."
    )
    count: int = Field(1000, ge=1, description="Zeros per side taken from infinite zero sets.")
    points: list[complex] = Field([0.5 + 0j, 1.5 + 0j, 2.5j], description="Evaluation points z.")

    def run(self) -> Report:
        report = self.report()
        for name in self.fixture:
            fixture = recon.hadamard_fixture(name, self.count)
            for z in self.points:
                result = recon.hadamard_reconstruct(fixture.data, z)
                oracle = fixture.oracle(z)
                label = f"{name}({_label(z)})"
                if result.zero_index is not None:
                    report.rows.append(ReportRow.flag(f"{label} exact_zero", result.value == 0, result.value))
                    continue
                tol = self.tolerance(TAIL_SAFETY * result.tail_estimate + 1e-12)
                report.rows.append(
                    ReportRow.check(label, result.value, relative_discrepancy(result.value, oracle), tol, oracle)
                )
        return report


def _curve_rows(curve: ffcurves.PlaneCurve, extensions: int | None, samples: int, rng, tol: float) -> list[ReportRow]:
    lz = ffcurves.local_zeta(curve, extensions)
    rows = [ReportRow.value(f"Y_{n}", count) for n, count in enumerate(lz.counts, start=1)]
    rows += [ReportRow.value(f"P[{i}]", a) for i, a in enumerate(lz.numerator)]
    rows.append(ReportRow.flag("lefschetz_counts", ffcurves.lefschetz_counts(lz, len(lz.counts)) == list(lz.counts)))
    rows.append(
        ReportRow.flag(
            "numerator_from_counts",
            ffcurves.numerator_from_counts(lz.counts, lz.q, lz.genus) == lz.numerator,
        )
    )
    for check in (ffcurves.functional_equation_check(lz), ffcurves.weil_bound_check(lz)):
        rows.append(ReportRow.flag(check.label, check.passed))
    weil = ffcurves.weil_rh_check(lz, tol=WEIL_RTOL)
    rows.append(ReportRow.check("weil_rh", math.sqrt(lz.q), weil.max_deviation, weil.tolerance))
    for _ in range(samples):
        s = complex(rng.uniform(1.5, 3.0), rng.uniform(-10.0, 10.0))
        value = ffcurves.curve_zeta_det_form(lz, s, tol=math.inf)
        rows.append(ReportRow.check(f"zeta_Y({_label(s)})", value.value, value.discrepancy, tol, value.direct))
    return rows


class CurveZetaCommand(Command):
    """
    Zeta function of a curve over a finite field: point counts, the numerator
    P(T), the Weil checks and the determinant form.
    """

    name: ClassVar[str] = "curve-zeta"

    curve: str = Field(..., description="Curve description file.")
    extensions: int | None = Field(None, ge=1, description="Extensions F_{q^n}, n ≤ this, to count over.")
    samples: int = Field(20, ge=0, description="Random points s with Re s in [1.5, 3] for the determinant form.")

    def run(self) -> Report:
        curve = ffcurves.load_curve(self.curve)
        report = self.report()
        rng = np.random.default_rng(self.seed)
        report.rows.extend(_curve_rows(curve, self.extensions, self.samples, rng, self.tolerance(CURVE_RTOL)))
        return report


def _random_matrix(rng, dim: int) -> np.ndarray:
    return (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2 * dim)


class VerifyAllCommand(Command):
    """
    The full verification suite: determinant identities, Bergman checks,
    reconstructions, curves, classification and the self-adjointness predicate.

    Every reconstruction is held to its fixed accuracy target; the zero
    dataset must hold 10^5 heights.
    """

    name: ClassVar[str] = "verify-all"

    zeros: str | None = Field(None, description="Zero height file; the configured dataset when omitted.")
    matrices: int = Field(100, ge=1, description="Random matrices per dimension and order.")
    gamma_terms: int = Field(DEFAULT_GAMMA_TERMS, ge=1, description="Truncation of the Γ reconstruction.")
    hadamard_count: int = Field(1_000_000, ge=1, description="Zeros per side for the sinc reconstruction.")
    jp_n_max: int = Field(100_000, ge=100, description="Terms summed in the J_p membership tests.")

    def _identity_rows(self, rng) -> list[ReportRow]:
        rows = []
        for dim in range(2, 7):
            for n in range(1, 5):
                agree, relation = True, 0.0
                for _ in range(self.matrices):
                    A = _random_matrix(rng, dim)
                    try:
                        matrix_det_p(A, n)
                    except ConsistencyError as exc:
                        logger.info("%s", exc)
                        agree = False
                    relation = max(relation, det_trace_relation_check(A, 1.0, n).discrepancy)
                rows.append(ReportRow.flag(f"det_routes dim={dim} n={n}", agree))
                rows.append(ReportRow.check(f"det_trace_relation dim={dim} n={n}", relation, relation, self.tolerance(ROUTE_RTOL)))
            worst = 0.0
            for _ in range(self.matrices):
                A = _random_matrix(rng, dim)
                radius = float(np.abs(np.linalg.eigvals(A)).max())
                t = 0.5 / radius * np.exp(2j * np.pi * rng.uniform())
                worst = max(worst, exp_trace_identity_check(A, t).discrepancy)
            rows.append(ReportRow.check(f"exp_trace dim={dim}", worst, worst, self.tolerance(ROUTE_RTOL)))
        return rows

    def _classification_rows(self) -> list[ReportRow]:
        n = np.arange(1, 10_001, dtype=float)
        harmonic = classify(
            DiagonalOperator.from_zeros(ZeroMultiset.from_values(n, infinite=True, tail=TailModel.power_law(1.0)))
        )
        square = classify(
            DiagonalOperator.from_zeros(ZeroMultiset.from_values(n**2, infinite=True, tail=TailModel.power_law(2.0)))
        )
        rows = [
            ReportRow.flag("diag 1/n hilbert_schmidt", harmonic.is_hilbert_schmidt and not harmonic.is_trace_class),
            ReportRow.flag("diag 1/n^2 trace_class", square.is_trace_class),
        ]
        for alpha in (0.35, 0.4, 0.45, 0.55, 0.65, 0.7):
            params = bergman.BergmanParams(alpha=alpha)
            for p in (1, 2, 3):
                membership = bergman.jp_membership(params, p, self.jp_n_max)
                expected = alpha < p / (p + 1)
                rows.append(ReportRow.flag(f"bergman alpha={alpha:g} in J_{p}", membership.member == expected, membership.slope))
        return rows

    def run(self) -> Report:
        rng = np.random.default_rng(self.seed)
        report = self.report()
        report.rows.extend(self._identity_rows(rng))

        data = get_data(self.zeros)
        report.rows.append(ReportRow.flag(f"zero dataset holds {FULL_HEIGHTS} heights", data.count >= FULL_HEIGHTS, data.count))

        suites = [
            BergmanCommand(alpha=[0.3, 0.4, 0.5, 1.0], tol=self.tol, seed=self.seed),
            GammaCommand(points=[0.5, 1, 1.5, 2 + 1j], terms=self.gamma_terms, functional=True, tol=self.tolerance(GAMMA_RECON_RTOL)),
            EulerCommand(s=[2], tol=self.tolerance(EULER_S2_RTOL)),
            EulerCommand(s=[3], tol=self.tolerance(EULER_S3_RTOL)),
            XiCommand(zeros=self.zeros, tol=self.tol),
            ZetaCommand(zeros=self.zeros, gamma_terms=self.gamma_terms, points=[2, 3, 0, -1, -2], tol=self.tol),
            HadamardCommand(
                fixture=["sinc", "sine", "cosine", "reciprocal-gamma"],
                count=self.hadamard_count,
                points=[0.5, 1.5, 2.5j],
                tol=self.tolerance(HADAMARD_RTOL),
            ),
            HadamardCommand(fixture=["sinc"], count=self.hadamard_count, points=[1, -2]),
            HadamardCommand(fixture=["linear", "exp-linear"], points=[0.5, 1.5, 2.5j], tol=self.tolerance(ROUTE_RTOL)),
        ]
        for suite in suites:
            report.extend(suite.run())

        targets = HeightTargets.for_heights(data.count)
        from_zeros = recon.zeta_reconstruct(2, data, gamma_terms=self.gamma_terms).value
        from_primes = recon.euler_product_det(2, 10_000)
        report.rows.append(
            ReportRow.check(
                "zeta(2) vs euler(2)",
                from_zeros,
                relative_discrepancy(from_zeros, from_primes),
                self.tolerance(targets.zeta + EULER_S2_RTOL),
                from_primes,
            )
        )

        for fixture in CURVE_FIXTURES:
            curve = ffcurves.load_curve(FIXTURES / fixture)
            for row in _curve_rows(curve, 4, 20, rng, self.tolerance(CURVE_RTOL)):
                report.rows.append(row.model_copy(update={"label": f"{fixture}/{row.label}"}))

        report.rows.extend(self._classification_rows())
        report.rows.append(ReportRow.flag("xi_hat self_adjoint", recon.xi_hat_self_adjoint(data)))
        report.rows.append(
            ReportRow.flag("xi_hat injected complex zero", not recon.xi_hat_self_adjoint(data, extra=[20.0 + 0.5j]))
        )
        return report


class UpdateZerosCommand(Command):
    """
    Computes zero heights with mpmath and writes them as a zero dataset file.
    """

    name: ClassVar[str] = "update-zeros"

    count: int = Field(1000, ge=1, description="Number of zero heights.")
    out: str | None = Field(None, description="Output file; the configured dataset path when omitted.")

    def run(self) -> Report:
        path = update_data(self.count, self.out)
        report = self.report()
        report.inputs["out"] = str(path)
        report.rows.append(ReportRow.value("heights_written", self.count))
        return report


COMMANDS: dict[str, type[Command]] = {
    command.name: command
    for command in (
        RegDetCommand,
        BergmanCommand,
        GammaCommand,
        XiCommand,
        ZetaCommand,
        EulerCommand,
        HadamardCommand,
        CurveZetaCommand,
        VerifyAllCommand,
        UpdateZerosCommand,
    )
}
