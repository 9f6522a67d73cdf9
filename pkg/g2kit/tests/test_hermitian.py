"""Tests for the hermitian space and the SU(3) bridge of g2kit package."""

from fractions import Fraction

import numpy as np
import pytest

from g2kit.automorphism import (
    commutes,
    compose,
    fixed_subalgebra,
    fixes_pointwise,
    is_involution,
)
from g2kit.errors import (
    BadBasisPosition,
    DegenerateForm,
    NotFixingL,
    NotInComplement,
    NotSpecialUnitary,
)
from g2kit.hermitian import (
    aut_to_su3,
    build_hermitian_space,
    coordinates,
    default_space,
    diagonal,
    h_eval,
    intertwiner,
    is_special_unitary,
    positioned_space,
    rho_conjugate_matrix,
    su3_matrix,
    su3_to_aut,
    witness,
)
from g2kit.numeric import EXACT, ComplexScalar, is_zero_array
from g2kit.octonion import AlgebraContext, generate_subalgebra


@pytest.fixture
def space(exact_ctx):
    return default_space(exact_ctx)


@pytest.fixture
def z():
    """3/5 + 4/5 i, a rational point of the unit circle."""
    return ComplexScalar(Fraction(3, 5), Fraction(4, 5))


def random_su3(rng):
    M = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    U, _ = np.linalg.qr(M)
    U[:, 0] = U[:, 0] / np.linalg.det(U)
    return U


class TestHermitianSpace:
    """Tests for building (L-perp, h)."""

    def test_default_form_is_identity(self, space):
        for j in range(3):
            for k in range(3):
                assert space.H[j, k] == (1 if j == k else 0)

    def test_default_form_float(self, float_ctx):
        H = default_space(float_ctx).H
        assert np.allclose(H, np.eye(3))

    def test_hermitian_symmetry(self, space, exact_ctx):
        e = exact_ctx.unit
        x = e(2) + e(5) * Fraction(2) - e(7)
        y = e(3) * Fraction(1, 3) + e(6)
        assert h_eval(space, x, y) == h_eval(space, y, x).conjugate()

    def test_linear_in_first_argument(self, space, exact_ctx):
        e = exact_ctx.unit
        x = e(2) - e(4) * Fraction(3)
        y = e(3) + e(4) + e(7)
        i = ComplexScalar(0, 1)
        assert h_eval(space, space.gamma * x, y) == i * h_eval(space, x, y)

    def test_coordinates_of_basis(self, space):
        assert coordinates(space, space.a * space.b) == [0, 0, 1]
        assert coordinates(space, space.gamma * space.b) == [
            0,
            ComplexScalar(0, 1),
            0,
        ]

    def test_positioned_space_is_orthonormal(self, float_ctx):
        L = generate_subalgebra([float_ctx.unit(3)])
        H = positioned_space(L).H
        assert np.allclose(H, np.eye(3))

    def test_vector_in_l_is_rejected(self, space, exact_ctx):
        with pytest.raises(NotInComplement, match="not orthogonal to L"):
            h_eval(space, exact_ctx.one(), exact_ctx.unit(2))

    def test_a_must_lie_in_complement(self, exact_choices):
        L, ctx = exact_choices.L, exact_choices.L.ctx
        with pytest.raises(BadBasisPosition, match="L-perp"):
            build_hermitian_space(L, ctx.unit(1), ctx.unit(4))

    def test_b_must_avoid_l_plus_la(self, exact_choices):
        L, ctx = exact_choices.L, exact_choices.L.ctx
        with pytest.raises(BadBasisPosition, match="L \\+ La"):
            build_hermitian_space(L, ctx.unit(2), ctx.unit(3))

    def test_l_must_be_quadratic(self, exact_choices):
        ctx = exact_choices.Q.ctx
        with pytest.raises(BadBasisPosition, match="quadratic"):
            build_hermitian_space(exact_choices.Q, ctx.unit(4), ctx.unit(5))

    def test_split_l_is_degenerate(self):
        ctx = AlgebraContext((1, -1, -1), EXACT)
        L = generate_subalgebra([ctx.unit(1)])
        with pytest.raises(DegenerateForm, match="not negative"):
            build_hermitian_space(L, ctx.unit(2), ctx.unit(4))


class TestBridge:
    """Tests for G(C/L) = SU(L-perp, h) in both directions."""

    def test_diagonal_round_trip_exact(self, space, z):
        A = diagonal(space, (1, z, z.conjugate()))
        t = su3_to_aut(space, A)
        assert t.certified
        assert fixes_pointwise(t, space.L)
        back = aut_to_su3(space, t)
        assert all(back.A[j, k] == A.A[j, k] for j in range(3) for k in range(3))

    def test_homomorphism_exact(self, space, z):
        A = diagonal(space, (z * z, z.conjugate(), z.conjugate()))
        B = intertwiner(space)
        lhs = su3_to_aut(space, A @ B)
        rhs = compose(su3_to_aut(space, A), su3_to_aut(space, B))
        assert is_zero_array(lhs.m - rhs.m)

    def test_random_round_trips(self, float_ctx):
        space = default_space(float_ctx)
        rng = np.random.default_rng(7)
        for _ in range(100):
            A = su3_matrix(space, random_su3(rng).tolist())
            back = aut_to_su3(space, su3_to_aut(space, A))
            assert np.allclose(back.A, A.A, atol=1e-9)

    def test_random_homomorphism(self, float_ctx):
        space = default_space(float_ctx)
        rng = np.random.default_rng(11)
        for _ in range(100):
            A = su3_matrix(space, random_su3(rng).tolist())
            B = su3_matrix(space, random_su3(rng).tolist())
            lhs = su3_to_aut(space, A @ B)
            rhs = compose(su3_to_aut(space, A), su3_to_aut(space, B))
            assert lhs.isclose(rhs, 1e-9)

    @pytest.mark.parametrize(
        "entries, has_one",
        [
            (lambda z: (1, 1, 1), True),
            (lambda z: (1, z, z.conjugate()), True),
            (lambda z: (z.conjugate(), 1, z), True),
            (lambda z: (1, -1, -1), True),
            (lambda z: (z * z, z.conjugate(), z.conjugate()), False),
            (lambda z: (-1, z, -z.conjugate()), False),
            (lambda z: (z, z, z.conjugate() * z.conjugate()), False),
        ],
    )
    def test_eigenvalue_one_iff_large_fixed_subalgebra(
        self, space, z, entries, has_one
    ):
        t = su3_to_aut(space, diagonal(space, entries(z)))
        assert (fixed_subalgebra(t).dim >= 4) == has_one

    def test_not_unitary(self, space):
        A = diagonal(space, (2, Fraction(1, 2), 1))
        assert not is_special_unitary(space, A)
        with pytest.raises(NotSpecialUnitary, match="SU\\(H\\)"):
            su3_to_aut(space, A)

    def test_determinant_minus_one(self, space):
        with pytest.raises(NotSpecialUnitary):
            su3_to_aut(space, diagonal(space, (-1, 1, 1)))

    def test_rho_is_not_in_g_c_l(self, space):
        with pytest.raises(NotFixingL, match="pointwise"):
            aut_to_su3(space, space.rho())

    def test_rho_conjugation(self, space, z):
        A = diagonal(space, (z, z.conjugate() * z.conjugate(), z))
        rho = space.rho()
        t = su3_to_aut(space, A)
        conjugated = compose(rho, compose(t, rho))
        expected = su3_to_aut(space, rho_conjugate_matrix(A))
        assert is_zero_array(conjugated.m - expected.m)


class TestIntertwiner:
    """Tests for the matrix B and the disconnecting element."""

    def test_intertwines(self, space, z):
        A = diagonal(space, (1, z, z.conjugate()))
        B = intertwiner(space)
        assert is_zero_array((A @ B).A - (B @ A.conjugate()).A)
        assert is_zero_array((B @ B).A - np.eye(3, dtype=int))
        assert is_special_unitary(space, B)

    def test_witness(self, space, z):
        t = su3_to_aut(space, diagonal(space, (1, z, z.conjugate())))
        g = witness(space)
        assert is_involution(g)
        assert commutes(g, t)
        assert g(space.gamma) == -space.gamma

    def test_witness_in_eigenbasis(self, float_ctx):
        space = default_space(float_ctx)
        rng = np.random.default_rng(3)
        U = random_su3(rng)
        w = np.exp(0.7j)
        D = np.diag([1, w, np.conj(w)])
        t = su3_to_aut(space, su3_matrix(space, (U @ D @ U.conj().T).tolist()))
        g = witness(space, U)
        assert commutes(g, t)
        assert g(space.gamma).isclose(-space.gamma)
