from fractions import Fraction

import numpy as np
import pytest

import ffcurves
from errors import BoundExceededError, DomainError, ParseError, PoleError, RecognitionError


def curve(text):
    return ffcurves.parse_curve(text)


E_F3 = "field 3 1\naffine y^2 = x^3 + x\ninfinity 1\ngenus 1\n"
E_F5 = "field 5 1\naffine y^2 = x^3 + x\ninfinity 1\ngenus 1\n"
P1_F3 = "field 3 1\nprojective z\ngenus 0\n"


def test_prime_field_arithmetic():
    field = ffcurves.field_make(7)
    a = field.elements()[1:]
    np.testing.assert_array_equal(field.mul(a, field.inv(a)), np.ones(6))
    np.testing.assert_array_equal(field.mul(a, 3), (a * 3) % 7)
    np.testing.assert_array_equal(field.add(a, field.neg(a)), np.zeros(6))


@pytest.mark.parametrize("p, k", [(2, 2), (2, 3), (3, 2), (5, 2)])
def test_extension_field_axioms(p, k):
    field = ffcurves.field_make(p, k)
    elements = field.elements()
    nonzero = elements[1:]
    assert field.q == p**k
    np.testing.assert_array_equal(field.mul(nonzero, field.inv(nonzero)), np.ones(field.q - 1))
    np.testing.assert_array_equal(field.add(elements, field.neg(elements)), np.zeros(field.q))
    np.testing.assert_array_equal(field.pow(elements, field.q), elements)
    # the prime subfield is fixed by Frobenius, nothing else is
    fixed = elements[field.frobenius(elements) == elements]
    np.testing.assert_array_equal(fixed, np.arange(p))


def test_field_distributes(rng):
    field = ffcurves.field_make(3, 2)
    a, b, c = rng.integers(0, field.q, (3, 50))
    left = field.mul(a, field.add(b, c))
    right = field.add(field.mul(a, b), field.mul(a, c))
    np.testing.assert_array_equal(left, right)


def test_field_rejects_bad_input(env):
    with pytest.raises(DomainError):
        ffcurves.field_make(4)
    with pytest.raises(DomainError):
        ffcurves.field_make(3, 0)
    with pytest.raises(DomainError):
        ffcurves.field_make(3).inv(0)
    env(ZETAQUANT_FIELD_BOUND=8)
    ffcurves.field_make.cache_clear()
    with pytest.raises(BoundExceededError):
        ffcurves.field_make(13)
    ffcurves.field_make.cache_clear()


def test_point_counts_over_extensions():
    e3 = curve(E_F3)
    assert [ffcurves.count_points(e3, n) for n in range(1, 5)] == [4, 16, 28, 64]
    assert ffcurves.count_points(curve(E_F5)) == 4
    assert [ffcurves.count_points(curve(P1_F3), n) for n in range(1, 4)] == [4, 10, 28]


def test_generic_affine_sweep():
    hyperbola = curve("field 5 1\naffine x y = 1\n")
    assert ffcurves.count_points(hyperbola) == 4


def test_projective_conic():
    conic = curve("field 3 1\nprojective x^2 + y^2 - z^2\n")
    assert ffcurves.count_points(conic) == 4
    assert ffcurves.count_points(conic, 2) == 10


def test_characteristic_two_curve():
    supersingular = curve("field 2 1\naffine y^2 + y = x^3\ninfinity 1\ngenus 1\n")
    assert ffcurves.count_points(supersingular) == 3
    assert ffcurves.count_points(supersingular, 2) == 9
    assert ffcurves.local_zeta(supersingular).numerator == (1, 0, 2)


def test_zeta_series_of_projective_line():
    series = ffcurves.zeta_series([4, 10], 3)
    assert series == [Fraction(1), Fraction(4), Fraction(13)]


@pytest.mark.parametrize(
    "text, numerator",
    [(E_F3, (1, 0, 3)), (E_F5, (1, -2, 5)), (P1_F3, (1,))],
)
def test_local_zeta_numerators(text, numerator):
    lz = ffcurves.local_zeta(curve(text))
    assert lz.numerator == numerator
    assert lz.genus == (len(numerator) - 1) // 2


def test_recognition_without_genus_hint():
    counts = [4, 16, 28, 64]
    lz = ffcurves.rational_recognize(ffcurves.zeta_series(counts, 3), 3, counts=counts)
    assert lz.numerator == (1, 0, 3)


def test_recognition_rejects_wrong_genus():
    with pytest.raises(RecognitionError):
        ffcurves.rational_recognize(ffcurves.zeta_series([4, 16], 3), 3, genus_hint=0)
    with pytest.raises(RecognitionError):
        ffcurves.rational_recognize(ffcurves.zeta_series([4], 3), 3, genus_hint=1)


def test_numerator_from_first_counts():
    assert ffcurves.numerator_from_counts([4], 3, 1) == (1, 0, 3)
    assert ffcurves.numerator_from_counts([4], 5, 1) == (1, -2, 5)
    assert ffcurves.numerator_from_counts([], 3, 0) == (1,)


@pytest.mark.parametrize("text", [E_F3, E_F5, P1_F3])
def test_lefschetz_traces_reproduce_counts(text):
    lz = ffcurves.local_zeta(curve(text), 4)
    assert ffcurves.lefschetz_counts(lz, 4) == list(lz.counts)


def test_frobenius_on_h1():
    lz = ffcurves.local_zeta(curve(E_F5))
    h1 = ffcurves.frobenius_matrices(lz)[1].astype(float)
    assert np.trace(h1) == pytest.approx(2)
    assert np.linalg.det(h1) == pytest.approx(5)


@pytest.mark.parametrize("text", [E_F3, E_F5])
def test_weil_checks(text):
    lz = ffcurves.local_zeta(curve(text), 4)
    report = ffcurves.weil_rh_check(lz)
    assert report.passed
    np.testing.assert_allclose(report.moduli, np.sqrt(lz.q), rtol=1e-12)
    assert ffcurves.functional_equation_check(lz).passed
    assert ffcurves.weil_bound_check(lz).passed


def test_functional_equation_failure_is_reported():
    lz = ffcurves.LocalZeta(q=3, counts=(), numerator=(1, 0, 2), genus=1)
    check = ffcurves.functional_equation_check(lz)
    assert not check.passed
    assert "0" in check.detail


def test_curve_zeta_values_at_two():
    p1 = ffcurves.local_zeta(curve(P1_F3))
    assert ffcurves.curve_zeta_det_form(p1, 2).value == pytest.approx(27 / 16, rel=1e-12)
    e3 = ffcurves.local_zeta(curve(E_F3))
    assert ffcurves.curve_zeta_det_form(e3, 2).value == pytest.approx(7 / 4, rel=1e-12)


@pytest.mark.parametrize("text", [E_F3, E_F5, P1_F3])
def test_determinant_form_matches_direct(text, rng):
    lz = ffcurves.local_zeta(curve(text))
    for _ in range(20):
        s = complex(rng.uniform(1.5, 3.0), rng.uniform(-10.0, 10.0))
        value = ffcurves.curve_zeta_det_form(lz, s)
        assert value.discrepancy <= 1e-10
        assert value.cohomological == pytest.approx(value.direct, rel=1e-10)


def test_curve_zeta_pole():
    lz = ffcurves.local_zeta(curve(E_F3))
    with pytest.raises(PoleError):
        ffcurves.curve_zeta_det_form(lz, 0)


def test_load_fixture_curves(fixtures_dir):
    loaded = ffcurves.load_curve(fixtures_dir / "e_f3.curve")
    assert loaded.base.q == 3
    assert loaded.infinity == 1
    assert loaded.genus_hint == 1


@pytest.mark.parametrize(
    "text, line",
    [
        ("affine y^2 = x^3\n", None),
        ("field 3 1\n", None),
        ("field 3 1\nelliptic y^2 = x^3\n", 2),
        ("field 3 1\naffine y^2 = = x\n", 2),
        ("field 3 1\naffine y^2 = x/2\n", 2),
        ("field 3 1\nprojective x^2 + z\n", 2),
        ("field 3\naffine y = x\n", 1),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as excinfo:
        curve(text)
    assert excinfo.value.line == line


def test_parse_rejects_composite_characteristic():
    with pytest.raises(DomainError):
        curve("field 9 1\naffine y^2 = x^3 + x\n")


def test_coefficients_reduce_mod_p():
    reduced = curve("field 3 1\naffine y^2 = x^3 + 4x + 3\ninfinity 1\n")
    assert ffcurves.count_points(reduced) == ffcurves.count_points(curve(E_F3))
