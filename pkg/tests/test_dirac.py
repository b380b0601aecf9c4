import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirac_descent.adapted import adapted
from dirac_descent.clifford import NumericGammaSet
from dirac_descent.descent import split_even
from dirac_descent.dirac import (
    DescentConditionError,
    Momentum,
    determinant_deviation,
    dirac_adjoint,
    dirac_operator,
    dispersion_check,
    kernel_basis,
    lagrangian_density,
    lagrangian_split_check,
    plane_wave_solutions,
    random_momentum,
    random_spinor,
    reduced_operator,
    reflection_equivalence_check,
    reflection_pair_check,
    spawn_generators,
)
from dirac_descent.exact import DimensionError

from conftest import haar_unitary
from test_clifford import dirac_basis

coords = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


def test_momentum_basics():
    p = Momentum((2, 1, 0.5), 1)
    assert p.square() == 4 - 1 - 0.25
    assert p.mass_shell() == pytest.approx(1.75)
    assert p.truncated().components == (2.0, 1.0)
    assert p.reflected().components == (2.0, 1.0, -0.5)
    assert p.extended().dim == 4
    with pytest.raises(ValueError):
        Momentum((1, 0), -1)


def test_two_dimensional_operator_by_hand():
    p0, p1, m = 1.5, 0.25, 0.5
    d = dirac_operator(adapted(2), Momentum((p0, p1), m)).matrix
    assert np.array_equal(d, np.array([[p0 - m, p1], [-p1, -p0 - m]]))
    assert abs(np.linalg.det(d)) == pytest.approx(abs(p0**2 - p1**2 - m**2))


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        dirac_operator(adapted(4), Momentum((1, 0, 0), 0))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7).flatmap(lambda d: st.tuples(st.just(d), st.lists(coords, min_size=d, max_size=d))),
       st.floats(0, 3))
def test_dispersion_identity(case, m):
    d, comps = case
    p = Momentum(tuple(comps), m)
    assert dispersion_check(adapted(d), p) <= 1e-10 * max(p.scale(), 1.0) ** 2


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_determinant_identity(d):
    for rng in spawn_generators(7, 20):
        p = random_momentum(rng, d)
        if abs(p.mass_shell()) > 1e-3:
            assert determinant_deviation(adapted(d), p) <= 1e-8


def test_dispersion_in_a_foreign_representation(rng):
    s = NumericGammaSet.from_exact(dirac_basis()).conjugated(haar_unitary(rng, 4))
    p = Momentum((0.3, -1.2, 0.7, 2.0), 0.4)
    assert dispersion_check(s, p) <= 1e-12 * p.scale() ** 2


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7, 8])
def test_on_shell_kernel(d):
    s = adapted(d)
    for rng in spawn_generators(d, 10):
        p = random_momentum(rng, d, on_shell=True)
        basis = plane_wave_solutions(s, p)
        assert basis.shape == (s.order, s.order // 2)
        op = dirac_operator(s, p).matrix
        assert np.max(np.abs(op @ basis)) <= 1e-10 * p.scale()
        assert np.allclose(basis.conj().T @ basis, np.eye(s.order // 2), atol=1e-12)


def test_massless_on_shell_kernel():
    s = adapted(4)
    p = Momentum((1.0, 0.6, 0.8, 0.0), 0.0)
    assert plane_wave_solutions(s, p).shape == (4, 2)


def test_off_shell_has_no_solutions():
    basis = plane_wave_solutions(adapted(4), Momentum((2, 1, 0.5, 0), 1))
    assert basis.shape == (4, 0)


def test_zero_momentum_massless_rejected():
    with pytest.raises(ValueError):
        plane_wave_solutions(adapted(3), Momentum((0, 0, 0), 0))


def test_kernel_basis_is_canonical(rng):
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1.0
    basis = kernel_basis(m)
    assert np.allclose(basis, np.eye(4)[:, 1:])
    assert kernel_basis(np.eye(3)).shape == (3, 0)
    assert kernel_basis(np.zeros((2, 2))).shape == (2, 2)


@pytest.mark.parametrize("d", [4, 6, 8, 10])
def test_reduced_operator_blocks(d):
    s = adapted(d)
    plus, minus = split_even(s)
    for rng in spawn_generators(d, 10):
        p = random_momentum(rng, d, descent=True)
        d_plus, d_minus = reduced_operator(s, p)
        assert np.array_equal(d_plus, dirac_operator(plus, p.truncated()).matrix)
        assert np.array_equal(d_minus, dirac_operator(minus, p.truncated()).matrix)
        assert reflection_equivalence_check(s, p.truncated())


def test_reduced_operator_needs_descent():
    with pytest.raises(DescentConditionError):
        reduced_operator(adapted(4), Momentum((1, 0, 0, 0.1), 0))


def test_reflection_detects_unrelated_sets():
    plus, _ = split_even(adapted(6))
    p = Momentum((1.0, 0.5, 0.2, 0.3, 0.7), 0.2)
    report = reflection_pair_check(plus, plus, p)
    assert not report and report.value == pytest.approx(2 * 0.7)


def test_dirac_adjoint_and_reality(rng):
    s = adapted(6)
    psi = random_spinor(rng, 8)
    assert np.allclose(dirac_adjoint(s, psi), psi.conj() @ s[0].to_complex())
    p = random_momentum(rng, 6)
    assert abs(lagrangian_density(s, psi, p).imag) <= 1e-12 * np.vdot(psi, psi).real * p.scale()
    with pytest.raises(DimensionError):
        dirac_adjoint(s, psi[:4])


@pytest.mark.parametrize("d", [4, 6, 8])
def test_lagrangian_split(d):
    s = adapted(d)
    for rng in spawn_generators(100 + d, 10):
        p = random_momentum(rng, d, descent=True)
        assert lagrangian_split_check(s, random_spinor(rng, s.order), p)
    with pytest.raises(DescentConditionError):
        lagrangian_split_check(s, np.ones(s.order), Momentum((1.0,) * d, 0))


def test_spawn_generators_reproducible():
    a = [g.random() for g in spawn_generators(3, 4)]
    b = [g.random() for g in spawn_generators(3, 4)]
    assert a == b and len(set(a)) == 4


def test_random_momentum_flags():
    rng = np.random.default_rng(0)
    p = random_momentum(rng, 5, on_shell=True, descent=True)
    assert p.components[-1] == 0.0 and p.is_on_shell()
