"""Shared fixtures for the g2kit tests."""

import pytest

from g2kit.automorphism import standing_choices
from g2kit.numeric import EXACT, FLOAT
from g2kit.octonion import AlgebraContext


@pytest.fixture
def exact_ctx():
    return AlgebraContext.compact(EXACT)


@pytest.fixture
def float_ctx():
    return AlgebraContext.compact(FLOAT)


@pytest.fixture
def exact_choices(exact_ctx):
    """L = span{1, e1}, a = e2, Q = span{1, e1, e2, e3}, b = e4 (exact)."""
    return standing_choices(exact_ctx)


@pytest.fixture
def float_choices(float_ctx):
    return standing_choices(float_ctx)
