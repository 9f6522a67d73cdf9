"""Tests for the octonion algebra of g2kit package."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2kit.errors import (
    ContextMismatch,
    DimensionOverflow,
    DivisionByZero,
    NormZero,
    NotComposition,
    NotOrthogonal,
)
from g2kit.numeric import EXACT
from g2kit.octonion import (
    AlgebraContext,
    Octonion,
    Subalgebra,
    bilinear,
    conjugate,
    double_subalgebra,
    full_algebra,
    generate_subalgebra,
    inverse,
    norm,
    orthogonal_complement,
    subalgebra_from_span,
    trace,
    verify_axioms,
)

EXACT_CTX = AlgebraContext.compact(EXACT)

coordinates = st.fractions(min_value=-5, max_value=5, max_denominator=6)
octonions = st.lists(coordinates, min_size=8, max_size=8).map(
    lambda cs: Octonion(EXACT_CTX, cs)
)
laws = settings(max_examples=60, deadline=None)


class TestMultiplicationTable:
    """Tests for the standard basis products."""

    @pytest.mark.parametrize("i, j, k", [(1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 4, 7)])
    def test_named_products(self, exact_ctx, i, j, k):
        assert exact_ctx.unit(i) * exact_ctx.unit(j) == exact_ctx.unit(k)

    def test_imaginary_units_square_to_minus_one(self, exact_ctx):
        for e in exact_ctx.units()[1:]:
            assert e * e == -exact_ctx.one()

    def test_imaginary_units_anticommute(self, exact_ctx):
        units = exact_ctx.units()
        for i in range(1, 8):
            for j in range(i + 1, 8):
                assert units[i] * units[j] == -(units[j] * units[i])

    def test_not_associative(self, exact_ctx):
        e1, e2, e4 = exact_ctx.unit(1), exact_ctx.unit(2), exact_ctx.unit(4)
        assert (e1 * e2) * e4 == -(e1 * (e2 * e4))

    def test_standard_basis_is_orthonormal(self, exact_ctx):
        units = exact_ctx.units()
        for i in range(8):
            for j in range(8):
                assert bilinear(units[i], units[j]) == (1 if i == j else 0)

    def test_float_table_matches_exact(self, exact_ctx, float_ctx):
        x = Octonion(exact_ctx, [1, 2, -1, 0, 3, Fraction(1, 2), 0, -2])
        y = Octonion(exact_ctx, [0, 1, 1, -3, 0, 2, 1, 1])
        exact = x * y
        floated = x.with_backend(float_ctx.backend) * y.with_backend(float_ctx.backend)
        assert floated.isclose(exact.with_backend(float_ctx.backend))


class TestCompositionLaws:
    """Property tests of the composition-algebra laws on exact rationals."""

    @laws
    @given(octonions, octonions)
    def test_norm_is_multiplicative(self, x, y):
        assert norm(x * y) == norm(x) * norm(y)

    @laws
    @given(octonions, octonions)
    def test_alternative(self, x, y):
        assert x * (x * y) == (x * x) * y
        assert (y * x) * x == y * (x * x)

    @laws
    @given(octonions, octonions, octonions)
    def test_moufang(self, x, y, z):
        assert z * (x * (z * y)) == ((z * x) * z) * y
        assert x * (z * (y * z)) == ((x * z) * y) * z
        assert (z * x) * (y * z) == (z * (x * y)) * z

    @laws
    @given(octonions, octonions)
    def test_conjugation_reverses_products(self, x, y):
        assert conjugate(x * y) == conjugate(y) * conjugate(x)

    @laws
    @given(octonions)
    def test_norm_and_trace(self, x):
        one = x.ctx.one()
        assert x * conjugate(x) == one * norm(x)
        assert x + conjugate(x) == one * trace(x)

    @laws
    @given(octonions)
    def test_inverse(self, x):
        if norm(x) == 0:
            with pytest.raises(DivisionByZero):
                inverse(x)
        else:
            assert inverse(x) * x == x.ctx.one()


class TestOctonionValues:
    """Tests for element construction and context checks."""

    def test_wrong_length(self, exact_ctx):
        with pytest.raises(ValueError, match="8 coordinates"):
            Octonion(exact_ctx, [1, 2, 3])

    def test_inverse_of_zero(self, exact_ctx):
        with pytest.raises(DivisionByZero, match="no inverse"):
            inverse(exact_ctx.zero())

    def test_mixing_contexts(self, exact_ctx, float_ctx):
        with pytest.raises(ContextMismatch, match="different algebra contexts"):
            exact_ctx.one() + float_ctx.one()

    def test_scalar_multiplication_both_sides(self, exact_ctx):
        e1 = exact_ctx.unit(1)
        assert Fraction(1, 2) * e1 == e1 * Fraction(1, 2)
        assert (e1 * 4) / 2 == e1 * 2

    def test_context_rejects_zero_parameter(self):
        with pytest.raises(ValueError, match="nonzero"):
            AlgebraContext((-1, 0, -1), EXACT)

    def test_verify_axioms_exact(self, exact_ctx):
        report = verify_axioms(exact_ctx, trials=1000, seed=1)
        assert report.trials == 1000
        assert "left Moufang" in report.laws
        assert report.checks == 1000 * len(report.laws)

    def test_verify_axioms_float(self, float_ctx):
        report = verify_axioms(float_ctx, trials=50, seed=2)
        assert len(report.laws) == 10


class TestSubalgebras:
    """Tests for generation, complements and doubling."""

    def test_generated_dimensions(self, exact_ctx):
        e = exact_ctx.unit
        assert generate_subalgebra([e(1)]).dim == 2
        assert generate_subalgebra([e(1), e(2)]).dim == 4
        assert generate_subalgebra([e(1), e(2), e(4)]).dim == 8
        assert generate_subalgebra([exact_ctx.one() * 3]).dim == 1

    def test_generated_from_a_random_element(self, exact_ctx):
        x = Octonion(exact_ctx, [1, 2, 0, -1, 0, 3, 1, 0])
        L = generate_subalgebra([x])
        assert L.dim == 2
        assert L.contains(x)
        assert L.contains(x * x)

    def test_complement(self, exact_choices):
        L = exact_choices.L
        complement = orthogonal_complement(L)
        assert len(complement) == 6
        for v in complement:
            assert L.is_orthogonal_to(v)
        for i, u in enumerate(complement):
            for v in complement[i + 1 :]:
                assert bilinear(u, v) == 0

    def test_doubling(self, exact_choices):
        Q = double_subalgebra(exact_choices.L, exact_choices.a)
        assert Q.dim == 4
        C = double_subalgebra(Q, exact_choices.b)
        assert C.dim == 8

    def test_doubling_requires_orthogonality(self, exact_choices, exact_ctx):
        with pytest.raises(NotOrthogonal):
            double_subalgebra(exact_choices.L, exact_ctx.unit(1))

    def test_doubling_overflow(self, exact_ctx):
        with pytest.raises(DimensionOverflow):
            double_subalgebra(full_algebra(exact_ctx), exact_ctx.unit(1))

    def test_doubling_isotropic_element(self):
        split = AlgebraContext((1, -1, -1), EXACT)
        D = Subalgebra(split, (split.one(),))
        a = split.unit(1) + split.unit(2)
        assert norm(a) == 0
        with pytest.raises(NormZero):
            double_subalgebra(D, a)

    def test_span_without_one(self, exact_ctx):
        with pytest.raises(NotComposition, match="does not contain 1"):
            subalgebra_from_span(exact_ctx, [exact_ctx.unit(1)])

    def test_span_not_closed(self, exact_ctx):
        one, e1, e2 = exact_ctx.one(), exact_ctx.unit(1), exact_ctx.unit(2)
        with pytest.raises(NotComposition):
            subalgebra_from_span(exact_ctx, [one, e1, e2])

    def test_float_subalgebra_basis_is_normalized(self, float_ctx):
        x = Octonion(float_ctx, [0.3, 1.2, -0.4, 0.0, 0.5, 0.0, 0.1, 0.0])
        L = generate_subalgebra([x])
        assert L.dim == 2
        assert abs(norm(L.basis[1]) - 1) < 1e-12
