import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirac_descent.exact import (
    I,
    ONE,
    ZERO,
    DimensionError,
    ExactMatrix,
    ExactScalar,
    adjoint,
    kron,
    mat_mul,
    trace,
)

from conftest import naive_matmul

small_ints = st.integers(-8, 8)
scalars = st.builds(ExactScalar, small_ints, small_ints, st.integers(0, 3))


@st.composite
def matrices(draw, n=None, max_den=2):
    n = n or draw(st.integers(1, 4))
    re = draw(st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n))
    im = draw(st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n))
    return ExactMatrix(re, im, draw(st.integers(0, max_den)))


# scalars


def test_scalar_reduction():
    assert ExactScalar(4, 2, 2) == ExactScalar(2, 1, 1)
    assert ExactScalar(4, 2, 2).log2_den == 1
    assert ExactScalar(0, 0, 5) == ZERO and ZERO.log2_den == 0
    assert hash(ExactScalar(6, 0, 1)) == hash(ExactScalar(3))


def test_scalar_quarter_phases():
    assert [ExactScalar.quarter(p) for p in range(4)] == [ONE, I, -ONE, -I]
    assert I * I == -ONE
    assert ExactScalar(1, 1).quarter_phase() is None
    assert ZERO.quarter_phase() is None


def test_scalar_from_complex():
    assert ExactScalar.from_complex(0.5 - 0.25j, 2) == ExactScalar(2, -1, 2)
    with pytest.raises(ValueError):
        ExactScalar.from_complex(0.3, 4)


def test_scalar_coerce_floats():
    # every finite double is dyadic, so coercion is exact
    assert ExactScalar.coerce(0.1) == ExactScalar(3602879701896397, 0, 55)
    assert ExactScalar.coerce(-0.75j) == ExactScalar(0, -3, 2)
    for bad in (float("nan"), float("inf"), "1"):
        with pytest.raises(TypeError):
            ExactScalar.coerce(bad)


@given(scalars, scalars, scalars)
def test_scalar_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a - a == ZERO
    assert complex(a * b) == pytest.approx(complex(a) * complex(b))


# matrices


def test_hand_products():
    s3 = ExactMatrix.from_rows([[1, 0], [0, -1]])
    is2 = ExactMatrix.from_rows([[0, 1], [-1, 0]])
    assert s3 @ is2 == ExactMatrix.from_rows([[0, 1], [1, 0]])
    assert is2 @ is2 == -ExactMatrix.identity(2)
    assert s3.anticommutes_with(is2)
    assert not s3.commutes_with(is2)


def test_kron_example():
    # (-i s3) (x) s1
    m = kron(ExactMatrix.from_rows([[-1j, 0], [0, 1j]]), ExactMatrix.from_rows([[0, 1], [1, 0]]))
    assert m == ExactMatrix.from_rows([[0, -1j, 0, 0], [-1j, 0, 0, 0], [0, 0, 0, 1j], [0, 0, 1j, 0]])


def test_exchange_and_block():
    j = ExactMatrix.exchange(4)
    assert j.to_complex().tolist() == np.fliplr(np.eye(4)).tolist()
    z, one = ExactMatrix.zeros(2), ExactMatrix.identity(2)
    assert ExactMatrix.block([[z, one], [one, z]]).submatrix(slice(0, 2), slice(2, 4)) == one


def test_shape_errors():
    with pytest.raises(DimensionError):
        ExactMatrix([[1, 2, 3]])
    with pytest.raises(DimensionError):
        ExactMatrix.identity(2) @ ExactMatrix.identity(3)


def test_immutable():
    m = ExactMatrix.identity(2)
    re, _ = m.numerators
    with pytest.raises(ValueError):
        re[0, 0] = 5


def test_trace_adjoint_identity():
    m = ExactMatrix.from_rows([[1j, 2], [0.5, -1]])
    assert trace(m) == ExactScalar(0, 1) + ExactScalar(-1)
    assert adjoint(m) == ExactMatrix.from_rows([[-1j, 0.5], [2, -1]])
    assert m.power(0).is_identity()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n), matrices(n))))
def test_matmul_matches_naive_loop(pair):
    a, b = pair
    want = naive_matmul(a.to_complex().tolist(), b.to_complex().tolist())
    assert (a @ b).to_complex().tolist() == want
    assert mat_mul(a, b) == a @ b


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(matrices(n), matrices(n), matrices(n))))
def test_ring_laws(triple):
    a, b, c = triple
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    assert (a @ b).adjoint() == b.adjoint() @ a.adjoint()
    assert trace(a @ b) == trace(b @ a)


@settings(max_examples=30, deadline=None)
@given(matrices(n=2), matrices(n=2), matrices(n=2), matrices(n=2))
def test_kron_mixed_product(a, b, c, d):
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)
    assert kron(a, b).to_complex().tolist() == np.kron(a.to_complex(), b.to_complex()).tolist()


def test_large_entries_fall_back_to_exact_integers():
    big = 2**40
    a = ExactMatrix([[big, big], [big, -big]])
    sq = a @ a
    assert sq[0, 0] == ExactScalar(2 * big * big)
    assert sq[1, 0] == ZERO


def test_key_and_hash():
    a = ExactMatrix([[2, 0], [0, 2]], log2_den=1)
    assert a == ExactMatrix.identity(2)
    assert hash(a) == hash(ExactMatrix.identity(2))
    assert len({a, ExactMatrix.identity(2)}) == 1


def test_monomial_and_phases():
    assert ExactMatrix.exchange(3).is_monomial()
    assert not ExactMatrix([[1, 1], [0, 1]]).is_monomial()
    assert ExactMatrix([[0, 1], [-1, 0]], [[0, 0], [0, 0]]).entries_are_quarter_phases()
    assert not ExactMatrix([[2, 0], [0, 1]]).entries_are_quarter_phases()
