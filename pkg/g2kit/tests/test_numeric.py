"""Tests for the numeric core of g2kit package."""

import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2kit.errors import SolverFailure, UnsupportedBackend
from g2kit.numeric import (
    EXACT,
    FLOAT,
    ComplexScalar,
    _polish,
    backend_named,
    companion_roots,
    det3,
    eig3_unit,
    inverse,
    nullspace,
    rank,
    rational_sqrt,
    rref,
    solve,
)

entries = st.fractions(min_value=-3, max_value=3, max_denominator=4) | st.just(
    Fraction(0)
)
matrices = st.tuples(st.integers(1, 5), st.integers(1, 6)).flatmap(
    lambda shape: st.lists(
        st.lists(entries, min_size=shape[1], max_size=shape[1]),
        min_size=shape[0],
        max_size=shape[0],
    )
)


def _sorted_by_angle(values):
    return sorted(values, key=lambda z: (round(cmath.phase(z), 9), abs(z)))


class TestBackends:
    """Tests for scalar conversion on the two backends."""

    def test_exact_scalar_parses_fractions(self):
        assert EXACT.scalar("3/5") == Fraction(3, 5)
        assert EXACT.scalar(2) == Fraction(2)

    def test_float_scalar_parses_fractions(self):
        assert FLOAT.scalar("3/5") == pytest.approx(0.6)
        assert isinstance(FLOAT.scalar(1), float)

    def test_backend_named(self):
        assert backend_named("exact") is EXACT
        assert backend_named("float") is FLOAT

    def test_backend_named_rejects_unknown(self):
        with pytest.raises(ValueError, match="unknown backend"):
            backend_named("decimal")

    def test_exact_is_zero_ignores_tolerance(self):
        assert EXACT.is_zero(Fraction(0))
        assert not EXACT.is_zero(Fraction(1, 10**20))

    def test_float_is_zero_uses_tolerance(self):
        assert FLOAT.is_zero(1e-12)
        assert not FLOAT.is_zero(1e-3)

    def test_exact_sqrt_of_non_square(self):
        with pytest.raises(UnsupportedBackend, match="no rational square root"):
            EXACT.sqrt(Fraction(2))


class TestRationalHelpers:
    """Tests for rational square roots and exact complex scalars."""

    def test_rational_sqrt(self):
        assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
        assert rational_sqrt(Fraction(0)) == 0
        assert rational_sqrt(Fraction(2)) is None
        assert rational_sqrt(Fraction(-1)) is None

    def test_complex_scalar_arithmetic(self):
        z = ComplexScalar(1, 2) * ComplexScalar(3, -1)
        assert z == ComplexScalar(5, 5)
        assert z.conjugate() == ComplexScalar(5, -5)
        assert ComplexScalar(1, 1) + 1 == ComplexScalar(2, 1)
        assert (ComplexScalar(0, 1) * ComplexScalar(0, 1)) == -1

    def test_complex_scalar_division(self):
        z = ComplexScalar(3, 4) / ComplexScalar(3, 4)
        assert z == 1
        with pytest.raises(ZeroDivisionError):
            ComplexScalar(1, 0) / ComplexScalar(0, 0)

    def test_complex_scalar_is_immutable(self):
        z = ComplexScalar(1, 0)
        with pytest.raises(AttributeError):
            z.re = Fraction(2)


class TestLinearAlgebra:
    """Tests for row reduction, nullspaces and solving."""

    def test_exact_nullspace(self):
        M = EXACT.array([[1, 2, 3], [2, 4, 6]])
        basis = nullspace(M)
        assert len(basis) == 2
        for v in basis:
            assert all(x == 0 for x in M.dot(v))

    def test_exact_rref(self):
        R, pivots = rref(EXACT.array([[2, 4], [1, 3]]))
        assert pivots == [0, 1]
        assert R[0, 0] == 1 and R[0, 1] == 0 and R[1, 1] == 1

    def test_float_nullspace_is_canonical(self):
        M = np.array([[1.0, 2.0, 3.0], [0.0, 1.0, 1.0]])
        a = nullspace(M)
        b = nullspace(3.0 * M)
        assert len(a) == len(b) == 1
        assert np.allclose(a[0], b[0], atol=1e-12)
        assert np.allclose(M @ a[0], 0, atol=1e-12)

    def test_rank(self):
        assert rank(EXACT.array([[1, 1], [2, 2]])) == 1
        assert rank(np.eye(4)) == 4

    def test_solve_exact(self):
        A = EXACT.array([[2, 1], [1, 3]])
        x = solve(A, EXACT.array([3, 5]))
        assert list(x) == [Fraction(4, 5), Fraction(7, 5)]

    def test_solve_singular(self):
        with pytest.raises(SolverFailure, match="singular"):
            solve(EXACT.array([[1, 2], [2, 4]]), EXACT.array([1, 1]))
        with pytest.raises(SolverFailure, match="singular"):
            solve(np.array([[1.0, 2.0], [2.0, 4.0]]), np.array([1.0, 1.0]))

    def test_inverse_exact(self):
        M = EXACT.array([[1, 2], [3, 4]])
        product = M.dot(inverse(M))
        assert all(product[i, j] == (i == j) for i in range(2) for j in range(2))

    def test_det3(self):
        M = EXACT.array([[2, 0, 0], [0, 3, 0], [1, 1, Fraction(1, 6)]])
        assert det3(M) == 1


class TestEig3Unit:
    """Tests for the 3x3 special unitary eigensolver."""

    @pytest.fixture
    def unitary(self):
        rng = np.random.default_rng(3)
        z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        q, _ = np.linalg.qr(z)
        return q

    def test_diagonal_spectrum(self):
        values = [1, 1j, -1j]
        spectrum = eig3_unit(np.diag(values))
        for got, want in zip(_sorted_by_angle(spectrum), _sorted_by_angle(values)):
            assert abs(got - want) < 1e-12

    @pytest.mark.parametrize("seed", range(100))
    def test_agrees_with_companion_oracle(self, seed):
        rng = np.random.default_rng(seed)
        theta, phi = rng.uniform(0.2, 0.8), rng.uniform(1.2, 1.8)
        d = np.diag(
            [cmath.exp(-1j * (theta + phi)), cmath.exp(1j * theta), cmath.exp(1j * phi)]
        )
        z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        unitary, _ = np.linalg.qr(z)
        A = unitary @ d @ unitary.conj().T
        spectrum = eig3_unit(A)
        tr = np.trace(A)
        minors = (np.trace(A) ** 2 - np.trace(A @ A)) / 2
        oracle = companion_roots([1, -tr, minors, -np.linalg.det(A)])
        for got in spectrum:
            assert min(abs(got - want) for want in oracle) < 1e-9
        for want in oracle:
            assert min(abs(got - want) for got in spectrum) < 1e-9

    def test_polishing_takes_a_single_newton_step(self):
        # (z - 1)(z - i)(z + i)
        coeffs = (1.0, -1.0, 1.0, -1.0)
        x = 1.0 + 1e-3
        f = x**3 - x**2 + x - 1
        df = 3 * x**2 - 2 * x + 1
        polished = _polish(x, coeffs)
        assert abs(polished - (x - f / df)) < 1e-14
        assert abs(polished - 1) > 1e-9

    def test_repeated_eigenvalue_comes_out_repeated(self, unitary):
        w = cmath.exp(2j * cmath.pi / 3)
        A = unitary @ np.diag([w, w, w]) @ unitary.conj().T
        l1, l2, l3 = eig3_unit(A)
        assert l1 == l2 == l3
        assert abs(l1 - w) < 1e-9

    def test_double_eigenvalue(self, unitary):
        A = unitary @ np.diag([1, -1, -1]) @ unitary.conj().T
        spectrum = sorted(eig3_unit(A), key=lambda z: z.real)
        assert spectrum[0] == spectrum[1]
        assert abs(spectrum[0] + 1) < 1e-9
        assert abs(spectrum[2] - 1) < 1e-9

    def test_exact_input(self):
        A = EXACT.identity(3)
        assert all(abs(z - 1) < 1e-12 for z in eig3_unit(A))

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError, match="3x3"):
            eig3_unit(np.eye(2))


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_rank_plus_nullity_is_column_count(rows):
    M = EXACT.array(rows)
    kernel = nullspace(M)
    assert rank(M) + len(kernel) == M.shape[1]
    assert rank(M) == np.linalg.matrix_rank(M.astype(float))
    for v in kernel:
        assert all(c == 0 for c in M.dot(v))
    if kernel:
        assert rank(EXACT.array(kernel)) == len(kernel)
