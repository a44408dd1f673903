import cmath
import math
from fractions import Fraction

import pytest
from pydantic import ValidationError

import recon
from errors import DomainError, InsufficientDataError, PoleError
from opmodel import ZeroMultiset
from oracles import gamma_oracle, xi_oracle, zeta_oracle
from regdet import relative_discrepancy


def test_rational_reconstruction_matches_exact():
    zeros, poles = [2, -3], [5]
    value = recon.rational_reconstruct(
        ZeroMultiset.from_values(zeros), ZeroMultiset.from_values(poles), 1, 2, 1.5
    )
    exact = recon.rational_reconstruct_exact(zeros, poles, 1, 2, Fraction(3, 2))
    assert exact == Fraction(3, 2) * 2 * Fraction(1, 4) * Fraction(3, 2) / Fraction(7, 10)
    assert value == pytest.approx(float(exact), rel=1e-14)


def test_rational_reconstruction_zero_and_pole():
    zeros, poles = ZeroMultiset.from_values([2.0]), ZeroMultiset.from_values([5.0, 7.0])
    assert recon.rational_reconstruct(zeros, poles, 0, 1, 2.0) == 0
    with pytest.raises(PoleError) as excinfo:
        recon.rational_reconstruct(zeros, poles, 0, 1, 7.0)
    assert excinfo.value.index == 1
    with pytest.raises(PoleError):
        recon.rational_reconstruct_exact([2], [5], 0, 1, 5)


@pytest.mark.parametrize("z", [0.5, 1.0, 1.5, 2 + 1j])
def test_gamma_reconstruction(z):
    result = recon.gamma_reconstruct(z, 100_000)
    assert relative_discrepancy(result.value, gamma_oracle(z)) <= 3 * result.tail_estimate


def test_gamma_reconstruction_at_full_length():
    result = recon.gamma_reconstruct(2 + 1j)
    assert relative_discrepancy(result.value, gamma_oracle(2 + 1j)) <= 1e-5


def test_gamma_pole():
    with pytest.raises(PoleError):
        recon.gamma_reconstruct(-3, 1000)


def test_gamma_functional_equation():
    report = recon.gamma_functional_check(0.5 + 1j, 100_000)
    assert report.passed, report


def test_euler_product():
    assert recon.euler_product_det(2, 10_000) == pytest.approx(math.pi**2 / 6, rel=5e-5)
    assert recon.euler_product_det(3, 10_000) == pytest.approx(zeta_oracle(3), rel=1e-6)
    with pytest.raises(DomainError):
        recon.euler_product_det(1, 100)


def test_xi_exact_at_zero(zeros30):
    assert recon.xi_reconstruct(0, zeros30).value == 0.5


@pytest.mark.parametrize("s", [0.5, 1, 2, 3, 0.5 + 1j, 0.5 + 5j])
def test_xi_within_tail_estimate(zeros30, s):
    result = recon.xi_reconstruct(s, zeros30)
    assert relative_discrepancy(result.value, xi_oracle(s)) <= 3 * result.tail_estimate


@pytest.mark.parametrize("s", [2, 3, 0.5 + 5j])
def test_xi_symmetry(zeros30, s):
    here = recon.xi_reconstruct(s, zeros30)
    there = recon.xi_reconstruct(1 - s, zeros30)
    assert abs(here.value - there.value) / abs(here.value) <= 2 * (here.tail_estimate + there.tail_estimate)


def test_xi_improves_with_more_zeros(zeros30):
    few = recon.xi_reconstruct(2, zeros30, N=10)
    many = recon.xi_reconstruct(2, zeros30)
    oracle = xi_oracle(2)
    assert relative_discrepancy(many.value, oracle) < relative_discrepancy(few.value, oracle)


def test_xi_operator_needs_enough_heights(zeros30):
    with pytest.raises(InsufficientDataError):
        recon.xi_operator(zeros30, 31)
    assert recon.xi_operator(zeros30, 4).size == 8


@pytest.mark.parametrize("s", [2, 3, 0, -1])
def test_zeta_three_determinants(zeros30, s):
    result = recon.zeta_reconstruct(s, zeros30, gamma_terms=100_000)
    assert relative_discrepancy(result.value, zeta_oracle(s)) <= 3 * result.tail_estimate + 1e-12


@pytest.mark.parametrize("s, index", [(-2, 0), (-4, 1), (-10, 4)])
def test_zeta_trivial_zeros_are_exact(zeros30, s, index):
    result = recon.zeta_reconstruct(s, zeros30, gamma_terms=1000)
    assert result.value == 0
    assert result.zero_index == index


def test_zeta_pole(zeros30):
    with pytest.raises(PoleError):
        recon.zeta_reconstruct(1, zeros30, gamma_terms=100)


def test_zeta_agrees_with_euler_product(zeros30):
    three = recon.zeta_reconstruct(2, zeros30, gamma_terms=100_000)
    euler = recon.euler_product_det(2, 10_000)
    budget = 3 * (three.tail_estimate + recon.euler_tail_estimate(2, 10_000))
    assert relative_discrepancy(three.value, euler) <= budget


def test_self_adjoint_predicate_wiring(zeros30):
    assert recon.xi_hat_self_adjoint(zeros30)
    assert not recon.xi_hat_self_adjoint(zeros30, extra=[20.0 + 0.5j])
    assert recon.xi_hat_zeros(zeros30).size == 60


@pytest.mark.parametrize("z", [0.5, 1.5, 2.5j])
def test_hadamard_sinc(z):
    fixture = recon.hadamard_fixture("sinc", 100_000)
    result = recon.hadamard_reconstruct(fixture.data, z)
    assert relative_discrepancy(result.value, fixture.oracle(z)) <= 3 * result.tail_estimate


@pytest.mark.parametrize("z", [1, -2, 3])
def test_hadamard_exact_zeros(z):
    fixture = recon.hadamard_fixture("sinc", 100)
    result = recon.hadamard_reconstruct(fixture.data, z)
    assert result.value == 0
    assert result.zero_index is not None


@pytest.mark.parametrize("name", ["sine", "cosine", "reciprocal-gamma"])
def test_hadamard_infinite_fixtures(name):
    fixture = recon.hadamard_fixture(name, 100_000)
    for z in (0.25, 0.7 + 0.4j):
        result = recon.hadamard_reconstruct(fixture.data, z)
        assert relative_discrepancy(result.value, fixture.oracle(z)) <= 3 * result.tail_estimate


def test_hadamard_finite_fixtures_are_exact():
    z = 0.3 - 0.2j
    linear = recon.hadamard_fixture("linear")
    assert recon.hadamard_reconstruct(linear.data, z).value == pytest.approx(1 - z, rel=1e-14)
    exp_linear = recon.hadamard_fixture("exp-linear")
    assert recon.hadamard_reconstruct(exp_linear.data, z).value == pytest.approx(cmath.exp(z) * (1 - z), rel=1e-14)
    assert recon.hadamard_genus(exp_linear.data) == 1


def test_finite_case_reduces_to_rational_reconstruction():
    zeros = ZeroMultiset.from_values([2.0, -3.0, 0.5 + 1j])
    data = recon.HadamardData(zeros=zeros, order_lambda=0)
    poles = ZeroMultiset.from_values([])
    z = 0.8 + 0.1j
    assert recon.hadamard_reconstruct(data, z).value == pytest.approx(
        recon.rational_reconstruct(zeros, poles, 0, 1, z), rel=1e-14
    )


def test_hadamard_data_checks():
    with pytest.raises(ValidationError):
        recon.HadamardData(zeros=ZeroMultiset.from_values([1.0]), g_coeffs=(0, 0, 1), order_lambda=1)
    with pytest.raises(ValidationError):
        recon.HadamardData(zeros=ZeroMultiset.from_values([0.0, 1.0]), order_lambda=1)
    sine = recon.hadamard_fixture("sine").data
    assert recon.hadamard_genus(sine) == 1
    assert sine.g(0) == pytest.approx(math.log(math.pi))


def test_unknown_fixture():
    with pytest.raises(ValueError):
        recon.hadamard_fixture("tangent")


def test_gamma_operator_diagonal():
    op = recon.gamma_operator(4)
    assert list(op.diagonal.real) == [-1.0, -0.5, pytest.approx(-1 / 3), -0.25]
    assert op.tail.kind == "power-law"
