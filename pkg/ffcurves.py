"""
Zeta functions of curves over finite fields.

Points are counted by brute force over F_{q^n}, the series exp(Σ Y_n Tⁿ/n) is
built in exact rationals and recognized as P(T)/((1 − T)(1 − qT)). The
numerator then feeds three evaluation routes: Fredholm determinants over the
reciprocal roots, direct rational evaluation, and the alternating determinant
ratio of Frobenius on H⁰, H¹, H².
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path
from tokenize import TokenError
from typing import Literal, Sequence

import numpy as np
import sympy
from numpy.polynomial import polynomial
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import linalg
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from configs import CURVE_RTOL, get_settings
from errors import (
    BoundExceededError,
    ZetaQuantError,
    ConsistencyError,
    DomainError,
    ParseError,
    PoleError,
    RecognitionError,
)
from opmodel import DiagonalOperator, ZeroMultiset
from regdet import det_fredholm, relative_discrepancy

logger = logging.getLogger(__name__)

# polynomials over F_p are coefficient lists, constant term first


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _poly_trim([c % p for c in a])
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        factor = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _poly_trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, m, p)


def _monic_polynomials(p: int, degree: int):
    for low in product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    """No monic factor of degree 1..deg/2, by exhaustive trial division."""
    degree = len(m) - 1
    for d in range(1, degree // 2 + 1):
        for f in _monic_polynomials(p, d):
            if not _poly_mod(m, f, p):
                return False
    return True


def _to_digits(value: int, p: int, k: int) -> list[int]:
    digits = []
    for _ in range(k):
        value, digit = divmod(value, p)
        digits.append(digit)
    return _poly_trim(digits)


def _from_digits(digits: Sequence[int], p: int) -> int:
    return sum(d * p**i for i, d in enumerate(digits))


class FiniteField(BaseModel):
    """
    F_q, q = p^k. Elements are the integers 0..q−1 read as base-p digit vectors of
    polynomials modulo `modulus`; multiplication goes through log/exp tables.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    p: int
    k: int
    modulus: tuple[int, ...] = Field(..., description="Monic irreducible modulus, constant term first.")
    exp_table: np.ndarray = Field(..., repr=False)
    log_table: np.ndarray = Field(..., repr=False)

    @property
    def q(self) -> int:
        return self.p**self.k

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def constant(self, c: int) -> int:
        """Image of the integer c under Z → F_p ⊂ F_q."""
        return c % self.p

    def add(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        result = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        for _ in range(self.k):
            result += ((((a // place) % self.p) + ((b // place) % self.p)) % self.p) * place
            place *= self.p
        return result

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        result = np.zeros_like(a)
        place = 1
        for _ in range(self.k):
            result += ((-((a // place) % self.p)) % self.p) * place
            place *= self.p
        return result

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = np.zeros(a.shape, dtype=np.int64)
        nonzero = (a != 0) & (b != 0)
        out[nonzero] = self.exp_table[(self.log_table[a[nonzero]] + self.log_table[b[nonzero]]) % (self.q - 1)]
        return out

    def pow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = np.zeros_like(a)
        nonzero = a != 0
        out[nonzero] = self.exp_table[(self.log_table[a[nonzero]] * e) % (self.q - 1)]
        return out

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DomainError("0 has no inverse")
        return self.exp_table[(-self.log_table[a]) % (self.q - 1)]

    def frobenius(self, a) -> np.ndarray:
        return self.pow(a, self.p)


def _primitive_element(p: int, modulus: Sequence[int], q: int) -> list[int]:
    prime_factors = list(sympy.factorint(q - 1))

    def power(base: list[int], e: int) -> list[int]:
        result, square = [1], base
        while e:
            if e & 1:
                result = _poly_mulmod(result, square, modulus, p)
            square = _poly_mulmod(square, square, modulus, p)
            e >>= 1
        return result

    for candidate in range(1, q):
        g = _to_digits(candidate, p, len(modulus) - 1)
        if all(power(g, (q - 1) // r) != [1] for r in prime_factors):
            return g
    raise DomainError(f"no primitive element found for modulus {modulus}")


@lru_cache(maxsize=32)
def field_make(p: int, k: int = 1) -> FiniteField:
    """F_{p^k} with the lexicographically first monic irreducible modulus."""
    if not sympy.isprime(p):
        raise DomainError(f"{p} is not prime")
    if k < 1:
        raise DomainError(f"extension degree must be positive, got {k}")
    q = p**k
    bound = get_settings().field_bound
    if q > bound:
        raise BoundExceededError(f"field of size {q} exceeds the enumeration bound {bound}; use a smaller instance")

    if k == 1:
        modulus = (0, 1)
    else:
        modulus = next((tuple(m) for m in _monic_polynomials(p, k) if _is_irreducible(m, p)), None)
        if modulus is None:
            raise DomainError(f"no irreducible polynomial of degree {k} over F_{p}")

    generator = _primitive_element(p, modulus, q) if k > 1 else [int(sympy.primitive_root(p))] if p > 2 else [1]
    exp_table = np.zeros(q - 1, dtype=np.int64)
    log_table = np.zeros(q, dtype=np.int64)
    current = [1]
    for i in range(q - 1):
        value = _from_digits(current, p)
        exp_table[i] = value
        log_table[value] = i
        current = _poly_mulmod(current, generator, modulus, p) if k > 1 else [current[0] * generator[0] % p]
    exp_table.flags.writeable = False
    log_table.flags.writeable = False
    logger.debug("built F_%d with modulus %s", q, modulus)
    return FiniteField(p=p, k=k, modulus=modulus, exp_table=exp_table, log_table=log_table)


class PlaneCurve(BaseModel):
    """
    A plane curve over F_q. Affine curves f(x, y) = 0 carry a declared number of
    points at infinity; projective curves F(x, y, z) = 0 are counted on P².
    Coefficients are integers, read in the prime field.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    base: FiniteField
    form: Literal["affine", "projective"]
    terms: dict[tuple[int, ...], int] = Field(..., description="Exponent tuple -> integer coefficient.")
    infinity: int = Field(0, ge=0, description="Points at infinity of an affine model.")
    genus_hint: int | None = Field(None, ge=0)

    @model_validator(mode="after")
    def _check_polynomial(self):
        p = self.base.p
        live = {e: c % p for e, c in self.terms.items() if c % p}
        if not live:
            raise ValueError("curve polynomial is zero over the base field")
        width = 2 if self.form == "affine" else 3
        if any(len(e) != width for e in live):
            raise ValueError(f"{self.form} terms need {width} exponents")
        if self.form == "projective" and len({sum(e) for e in live}) != 1:
            raise ValueError("projective polynomial must be homogeneous")
        object.__setattr__(self, "terms", live)
        return self


def _evaluate(field: FiniteField, terms: dict, *coords) -> np.ndarray:
    shape = np.broadcast(*coords).shape
    total = np.zeros(shape, dtype=np.int64)
    for exponents, coefficient in terms.items():
        term = np.full(shape, field.constant(coefficient), dtype=np.int64)
        for coord, e in zip(coords, exponents):
            if e:
                term = field.mul(term, field.pow(coord, e))
        total = field.add(total, term)
    return total


def _weierstrass_rhs(terms: dict, p: int):
    """Terms of f(x) when the curve reads c·y² = f(x); None otherwise."""
    if p == 2:
        return None
    c = terms.get((0, 2))
    if c is None or any(j > 0 for (i, j) in terms if (i, j) != (0, 2)):
        return None
    scale = pow(-c, -1, p)
    return {(i,): coefficient * scale % p for (i, j), coefficient in terms.items() if j == 0}


def _count_affine(field: FiniteField, terms: dict) -> int:
    elements = field.elements()
    rhs = _weierstrass_rhs(terms, field.p)
    if rhs is not None:
        # y² = f(x): number of square roots of each value
        roots = np.bincount(field.mul(elements, elements), minlength=field.q)
        return int(roots[_evaluate(field, rhs, elements)].sum())

    def sweep(xs: np.ndarray) -> int:
        return sum(int(np.count_nonzero(_evaluate(field, terms, x, elements) == 0)) for x in xs)

    settings = get_settings()
    chunks = np.array_split(elements, max(1, min(settings.threads, field.q)))
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        return sum(pool.map(sweep, chunks))


def _count_projective(field: FiniteField, terms: dict) -> int:
    elements = field.elements()
    count = 0
    for x in elements:
        count += int(np.count_nonzero(_evaluate(field, terms, x, elements, 1) == 0))
    count += int(np.count_nonzero(_evaluate(field, terms, elements, 1, 0) == 0))
    count += int(_evaluate(field, terms, 1, 0, 0) == 0)
    return count


def count_points(curve: PlaneCurve, n: int = 1) -> int:
    """Y_n: points of the curve over F_{q^n}."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    base = curve.base
    field = field_make(base.p, base.k * n)
    if curve.form == "affine":
        count = _count_affine(field, curve.terms) + curve.infinity
    else:
        count = _count_projective(field, curve.terms)
    logger.debug("Y_%d = %d over F_%d", n, count, field.q)
    return count


def zeta_series(counts: Sequence[int], q: int) -> list[Fraction]:
    """Coefficients b_0..b_M of exp(Σ Y_n Tⁿ/n), from m·b_m = Σ_{n≤m} Y_n b_{m−n}."""
    if len(counts) < 1:
        raise ValueError("need at least one point count")
    series = [Fraction(1)]
    for m in range(1, len(counts) + 1):
        series.append(sum(Fraction(counts[n - 1]) * series[m - n] for n in range(1, m + 1)) / m)
    return series


class LocalZeta(BaseModel):
    model_config = ConfigDict(frozen=True)

    q: int
    counts: tuple[int, ...]
    numerator: tuple[int, ...] = Field(..., description="Coefficients of P(T), constant term first.")
    genus: int

    @model_validator(mode="after")
    def _check_numerator(self):
        if len(self.numerator) != 2 * self.genus + 1 or self.numerator[0] != 1:
            raise ValueError("P must have degree 2·genus and P(0) = 1")
        return self


def rational_recognize(series: Sequence[Fraction], q: int, genus_hint: int | None = None, counts=()) -> LocalZeta:
    """
    P(T) = (1 − T)(1 − qT)·Z(T), read off the series; every known coefficient past
    deg P must vanish.
    """
    order = len(series) - 1
    c = [Fraction(x) for x in series]
    d = [c[j] - (q + 1) * (c[j - 1] if j >= 1 else 0) + q * (c[j - 2] if j >= 2 else 0) for j in range(order + 1)]
    if genus_hint is not None:
        degree = 2 * genus_hint
        if order < degree + 1:
            raise RecognitionError(f"genus {genus_hint} needs the series through order {degree + 1}, got {order}")
        if any(d[j] != 0 for j in range(degree + 1, order + 1)):
            raise RecognitionError(f"numerator does not terminate at degree {degree}")
    else:
        degree = max(j for j, x in enumerate(d) if x != 0)
        if degree >= order:
            raise RecognitionError(f"numerator does not terminate within order {order}; count more extensions")
    if degree % 2:
        raise RecognitionError(f"numerator degree {degree} is odd")
    if any(x.denominator != 1 for x in d[: degree + 1]):
        raise RecognitionError("numerator coefficients are not integers")
    return LocalZeta(q=q, counts=tuple(counts), numerator=tuple(int(x) for x in d[: degree + 1]), genus=degree // 2)


def local_zeta(curve: PlaneCurve, M: int | None = None) -> LocalZeta:
    """Counts Y_1..Y_M and recognizes the zeta function."""
    if M is None:
        M = 2 * (curve.genus_hint if curve.genus_hint is not None else 1) + 2
    counts = [count_points(curve, n) for n in range(1, M + 1)]
    return rational_recognize(zeta_series(counts, curve.base.q), curve.base.q, curve.genus_hint, counts)


def numerator_from_counts(counts: Sequence[int], q: int, genus: int) -> tuple[int, ...]:
    """P(T) from Y_1..Y_g and the symmetry a_{2g−i} = q^{g−i}·a_i."""
    if len(counts) < genus:
        raise RecognitionError(f"genus {genus} needs {genus} counts, got {len(counts)}")
    if genus == 0:
        return (1,)
    series = zeta_series(list(counts[:genus]), q)
    low = [series[j] - (q + 1) * (series[j - 1] if j else 0) + q * (series[j - 2] if j >= 2 else 0) for j in range(genus + 1)]
    coefficients = [int(x) for x in low] + [0] * genus
    for i in range(genus):
        coefficients[2 * genus - i] = q ** (genus - i) * coefficients[i]
    return tuple(coefficients)


def frobenius_matrices(lz: LocalZeta) -> dict[int, np.ndarray]:
    """
    Integer matrices of Frobenius on H⁰, H¹, H²: [1], the companion matrix of
    T^{2g}·P(1/T) (eigenvalues the reciprocal roots of P), and [q].
    """
    size = 2 * lz.genus
    companion = np.zeros((size, size), dtype=object)
    for i in range(1, size):
        companion[i, i - 1] = 1
    for i in range(size):
        # monic T^{2g} + a_1 T^{2g−1} + … + a_{2g}
        companion[i, size - 1] = -lz.numerator[size - i]
    return {0: np.array([[1]], dtype=object), 1: companion, 2: np.array([[lz.q]], dtype=object)}


def lefschetz_counts(lz: LocalZeta, M: int) -> list[int]:
    """Y_n = Σ_j (−1)^j Tr(Fⁿ | H^j), exactly."""
    matrices = frobenius_matrices(lz)
    powers = {j: np.identity(m.shape[0], dtype=object) for j, m in matrices.items()}
    counts = []
    for _ in range(M):
        traces = []
        for j, matrix in matrices.items():
            powers[j] = powers[j].dot(matrix) if matrix.size else powers[j]
            traces.append((-1) ** j * (int(np.trace(powers[j])) if matrix.size else 0))
        counts.append(sum(traces))
    return counts


class WeilReport(BaseModel):
    q: int
    moduli: list[float]
    max_deviation: float = Field(..., description="max ||α| − √q| / √q over reciprocal roots α.")
    tolerance: float
    passed: bool


def weil_rh_check(lz: LocalZeta, tol: float = 1e-12) -> WeilReport:
    """Reciprocal roots of P, as companion-matrix eigenvalues, have modulus √q."""
    sqrt_q = math.sqrt(lz.q)
    # np.roots reads coefficients highest first; fed constant-first it returns reciprocal roots
    reciprocal_roots = np.roots(np.array(lz.numerator, dtype=float)) if lz.genus else np.array([])
    moduli = np.abs(reciprocal_roots)
    deviation = float(np.abs(moduli - sqrt_q).max() / sqrt_q) if moduli.size else 0.0
    return WeilReport(q=lz.q, moduli=moduli.tolist(), max_deviation=deviation, tolerance=tol, passed=deviation <= tol)


class ExactCheck(BaseModel):
    label: str
    passed: bool
    detail: str = ""


def functional_equation_check(lz: LocalZeta) -> ExactCheck:
    g, a = lz.genus, lz.numerator
    bad = [i for i in range(g + 1) if a[2 * g - i] != lz.q ** (g - i) * a[i]]
    return ExactCheck(label="functional_equation", passed=not bad, detail=f"failing indices {bad}" if bad else "")


def weil_bound_check(lz: LocalZeta) -> ExactCheck:
    """|Y_n − (qⁿ + 1)| ≤ 2g·√(qⁿ), squared to stay in integers."""
    bad = [
        n
        for n, count in enumerate(lz.counts, start=1)
        if (count - lz.q**n - 1) ** 2 > 4 * lz.genus**2 * lz.q**n
    ]
    return ExactCheck(label="weil_bound", passed=not bad, detail=f"failing n {bad}" if bad else "")


class CurveZetaValue(BaseModel):
    s: complex
    value: complex = Field(..., description="det(I − TD_P)/det(I − TD_g) at T = q^{−s}.")
    direct: complex = Field(..., description="P(T)/((1 − T)(1 − qT)) evaluated directly.")
    cohomological: complex
    discrepancy: float


def _reciprocal_root_operator(coefficients: Sequence[int]) -> DiagonalOperator:
    roots = np.roots(np.array(coefficients[::-1], dtype=float)) if len(coefficients) > 1 else np.array([])
    return DiagonalOperator.from_zeros(ZeroMultiset.from_values(roots))


def curve_zeta_direct(lz: LocalZeta, s: complex) -> complex:
    t = np.exp(-complex(s) * math.log(lz.q))
    denominator = (1 - t) * (1 - lz.q * t)
    if denominator == 0:
        raise PoleError(f"q^(-s) = {t} is a pole of the zeta function", value=complex(s))
    return complex(polynomial.polyval(t, np.array(lz.numerator, dtype=float)) / denominator)


def curve_zeta_cohomological(lz: LocalZeta, s: complex) -> complex:
    """det(I − FT | H¹)/(det(I − FT | H⁰)·det(I − FT | H²)) on dense matrices."""
    t = np.exp(-complex(s) * math.log(lz.q))
    dets = {}
    for j, matrix in frobenius_matrices(lz).items():
        dense = matrix.astype(float)
        dets[j] = complex(linalg.det(np.eye(dense.shape[0]) - t * dense)) if dense.size else 1.0
    if dets[0] * dets[2] == 0:
        raise PoleError(f"q^(-s) = {t} is a pole of the zeta function", value=complex(s))
    return dets[1] / (dets[0] * dets[2])


def curve_zeta_det_form(lz: LocalZeta, s: complex, tol: float = CURVE_RTOL) -> CurveZetaValue:
    """
    ζ_Y(s) = det(I − q^{−s}D_P)/det(I − q^{−s}D_g), g(T) = (1 − T)(1 − qT),
    cross-checked against the direct and cohomological routes.
    """
    s = complex(s)
    t = complex(np.exp(-s * math.log(lz.q)))
    poles = DiagonalOperator.from_zeros(ZeroMultiset.from_values([1.0, 1.0 / lz.q]))
    denominator = det_fredholm(poles, t)
    if denominator.zero_index is not None:
        raise PoleError(f"q^(-s) = {t} is a pole of the zeta function", index=denominator.zero_index, value=s)
    numerator = det_fredholm(_reciprocal_root_operator(lz.numerator), t)
    value = numerator.value / denominator.value
    direct = curve_zeta_direct(lz, s)
    cohomological = curve_zeta_cohomological(lz, s)
    discrepancy = max(relative_discrepancy(value, direct), relative_discrepancy(cohomological, direct))
    if discrepancy > tol:
        raise ConsistencyError(f"curve zeta routes disagree at s={s}: relative {discrepancy:.3g}")
    return CurveZetaValue(s=s, value=value, direct=direct, cohomological=cohomological, discrepancy=discrepancy)


_SYMBOLS = {name: sympy.Symbol(name) for name in ("x", "y", "z")}
_TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor)


def _parse_polynomial(text: str, variables: Sequence[str], line: int) -> dict[tuple[int, ...], int]:
    sides = text.split("=")
    if len(sides) > 2:
        raise ParseError("more than one '=' in the curve equation", line=line)
    try:
        expressions = [parse_expr(side, local_dict=dict(_SYMBOLS), transformations=_TRANSFORMATIONS) for side in sides]
        expression = expressions[0] - expressions[1] if len(expressions) == 2 else expressions[0]
        poly = sympy.Poly(sympy.expand(expression), *[_SYMBOLS[v] for v in variables])
    except (SyntaxError, TokenError, TypeError, sympy.SympifyError, sympy.PolynomialError) as exc:
        raise ParseError(f"cannot read polynomial {text!r}: {exc}", line=line) from None
    terms = {}
    for exponents, coefficient in poly.terms():
        if not coefficient.is_Integer:
            raise ParseError(f"coefficient {coefficient} is not an integer", line=line)
        terms[tuple(int(e) for e in exponents)] = int(coefficient)
    return terms


def parse_curve(text: str) -> PlaneCurve:
    """
    Curve description:

        field <p> <k>
        affine y^2 = x^3 + x        | projective <homogeneous polynomial in x, y, z>
        infinity <count>            (affine only)
        genus <g>                   (optional)

    '#' starts a comment.
    """
    field = form = terms = None
    infinity, genus, equation_line = 0, None, None
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if keyword == "field":
                p, k = (int(v) for v in rest.split())
                field = field_make(p, k)
            elif keyword in ("affine", "projective"):
                form, equation_line = keyword, line_number
                terms = _parse_polynomial(rest, ("x", "y") if keyword == "affine" else ("x", "y", "z"), line_number)
            elif keyword == "infinity":
                infinity = int(rest)
            elif keyword == "genus":
                genus = int(rest)
            else:
                raise ParseError(f"unknown keyword {keyword!r}", line=line_number)
        except ValueError as exc:
            if isinstance(exc, ZetaQuantError):
                raise
            raise ParseError(str(exc), line=line_number) from None
    if field is None:
        raise ParseError("missing 'field p k' line")
    if form is None:
        raise ParseError("missing 'affine' or 'projective' equation")
    try:
        return PlaneCurve(base=field, form=form, terms=terms, infinity=infinity, genus_hint=genus)
    except ValueError as exc:
        raise ParseError(str(exc), line=equation_line) from None


def load_curve(path) -> PlaneCurve:
    return parse_curve(Path(path).read_text())
