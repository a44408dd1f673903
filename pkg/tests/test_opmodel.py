import numpy as np
import pytest
from pydantic import ValidationError

from errors import ConstructionError
from opmodel import (
    DiagonalOperator,
    TailModel,
    ZeroMultiset,
    classify,
    eigen_multiplicity,
    from_zeros,
    operator_norm,
    singular_values,
    spectrum,
)


def power_law_operator(values, kappa):
    return from_zeros(ZeroMultiset.from_values(values, infinite=True, tail=TailModel.power_law(kappa)))


def test_collapse_counts_repeats():
    zeros = ZeroMultiset.from_values([2, 2, 3], collapse=True)
    np.testing.assert_array_equal(zeros.values, [2, 3])
    np.testing.assert_array_equal(zeros.multiplicities, [2, 1])
    assert zeros.size == 3
    np.testing.assert_array_equal(zeros.expanded(), [2, 2, 3])


def test_multiplicities_must_be_positive():
    with pytest.raises(ValidationError):
        ZeroMultiset(values=[1.0, 2.0], multiplicities=[1, 0])


def test_lengths_must_match():
    with pytest.raises(ValidationError):
        ZeroMultiset(values=[1.0, 2.0], multiplicities=[1])


def test_entries_must_be_finite():
    with pytest.raises(ValidationError):
        ZeroMultiset.from_values([1.0, np.inf])


def test_tail_model_parameters():
    with pytest.raises(ValidationError):
        TailModel(kind="power-law")
    with pytest.raises(ValidationError):
        TailModel(kind="declared")
    assert TailModel.power_law(1.0).summable(2)
    assert not TailModel.power_law(1.0).summable(1)
    assert TailModel.declared(2).summable(3)
    assert TailModel.finite().summable(1)


def test_zero_entry_is_rejected():
    with pytest.raises(ConstructionError):
        from_zeros(ZeroMultiset.from_values([1.0, 0.0]))


def test_diagonal_is_reciprocal_and_involutive():
    op = from_zeros(ZeroMultiset.from_values([2.0, -4.0, 1 + 1j]))
    np.testing.assert_allclose(op.diagonal, [0.5, -0.25, 0.5 - 0.5j])
    back = DiagonalOperator.from_zeros(op.as_multiset())
    np.testing.assert_allclose(back.diagonal, op.values)


def test_spectrum_and_multiplicity():
    op = from_zeros(ZeroMultiset(values=[2.0, 3.0], multiplicities=[2, 1]))
    found = spectrum(op)
    np.testing.assert_allclose(np.sort(found.points.real), [1 / 3, 0.5])
    assert not found.includes_zero
    assert eigen_multiplicity(op, 0.5) == 2
    assert eigen_multiplicity(op, 0.25) == 0
    assert spectrum(power_law_operator([1.0, 2.0], 1.0)).includes_zero


def test_norm_and_singular_values():
    op = from_zeros(ZeroMultiset.from_values([3.0, -1.0, 2j]))
    assert operator_norm(op) == 1.0
    np.testing.assert_allclose(singular_values(op), [1.0, 0.5, 1 / 3])


def test_empty_operator_has_zero_norm():
    assert operator_norm(from_zeros(ZeroMultiset.from_values([]))) == 0.0


def test_classify_harmonic_diagonal():
    n = np.arange(1, 1001, dtype=float)
    ideal = classify(power_law_operator(n, 1.0))
    assert ideal.p_star == 2
    assert ideal.is_hilbert_schmidt and not ideal.is_trace_class
    assert ideal.is_bounded and ideal.is_compact


def test_classify_square_diagonal():
    n = np.arange(1, 1001, dtype=float)
    ideal = classify(power_law_operator(n**2, 2.0))
    assert ideal.is_trace_class
    assert all(ideal.member_of(p) for p in range(1, 9))


def test_classify_uses_tail_not_truncation():
    # the stored entries are few, but the declared growth is too slow for any J_p
    ideal = classify(power_law_operator([1.0, 2.0, 3.0], 0.1), p_max=8)
    assert ideal.p_star is None
    assert ideal.is_compact
    flat = classify(power_law_operator([1.0, 1.0], 0.0))
    assert flat.is_bounded and not flat.is_compact


def test_classify_finite_and_declared():
    assert classify(from_zeros(ZeroMultiset.from_values([5.0]))).p_star == 1
    declared = from_zeros(ZeroMultiset.from_values([1.0], infinite=True, tail=TailModel.declared(2)))
    assert classify(declared).p_star == 2


def test_classify_rejects_bad_p_max():
    with pytest.raises(ValueError):
        classify(from_zeros(ZeroMultiset.from_values([1.0])), p_max=0)


def test_self_adjoint_predicate():
    assert classify(from_zeros(ZeroMultiset.from_values([1.0, -2.0]))).is_self_adjoint
    op = from_zeros(ZeroMultiset.from_values([1.0, 2.0 + 1e-9j]))
    assert not classify(op).is_self_adjoint
    assert classify(op, tol=1e-6).is_self_adjoint
