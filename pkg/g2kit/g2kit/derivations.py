"""
Derivations of the octonions: the 14-dimensional Lie algebra of G2.

Der(C) is the kernel of the Leibniz system D(e_i e_j) = D(e_i) e_j + e_i D(e_j),
64 unknowns (the entries of D) and 512 scalar equations. Centralizer
dimensions are measured inside Der(C), and exponentials of derivations give
automorphisms, which is how random elements are sampled.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence

import numpy as np

from g2kit.automorphism import AutMatrix, certify_constructed, compose, identity
from g2kit.constants import (
    DIMENSION,
    RESIDUAL_TOL,
    SAMPLER_FACTORS,
    SCALING_TARGET,
    SERIES_CUTOFF,
    SPECTRUM_TOL,
)
from g2kit.errors import ContextMismatch
from g2kit.numeric import EXACT, FLOAT, is_zero_array, nullspace
from g2kit.octonion import AlgebraContext, Octonion, Subalgebra
from g2kit.rng import XorShift64Star

__all__ = [
    "Derivation",
    "leibniz_system",
    "derivation_basis",
    "is_derivation",
    "bracket",
    "combine",
    "centralizer_dimension",
    "exponentiate",
    "sample_automorphism",
    "stabilizer_derivations",
    "sample_fixing",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Derivation:
    """An 8x8 matrix d; column q holds the coordinates of d(e_q)."""

    d: np.ndarray
    ctx: AlgebraContext

    def __call__(self, x: Octonion) -> Octonion:
        return Octonion.from_array(self.ctx, self.d.dot(x.array()))

    def vector(self) -> np.ndarray:
        return self.d.reshape(DIMENSION * DIMENSION)

    def to_float(self) -> "Derivation":
        if not self.ctx.backend.exact:
            return self
        return Derivation(
            np.array(self.d.tolist(), dtype=float), self.ctx.with_backend(FLOAT)
        )


def leibniz_system(ctx: AlgebraContext) -> np.ndarray:
    """
    The 512 x 64 coefficient matrix of the Leibniz equations.

    Row (i*8 + j)*8 + k is coordinate k of D(e_i e_j) - D(e_i) e_j - e_i D(e_j);
    column p*8 + q is the unknown D[p, q].
    """
    n = DIMENSION
    M = ctx.backend.zeros((n * n * n, n * n))
    for a, b, c, coef in ctx.table:
        # D(e_a e_b): e_a e_b has coefficient coef on e_c
        for k in range(n):
            M[(a * n + b) * n + k, k * n + c] += coef
        # D(e_i) e_b with e_a e_b = coef e_c: term D[a, i] in row (i, b, c)
        for i in range(n):
            M[(i * n + b) * n + c, a * n + i] -= coef
        # e_a D(e_j) with e_a e_b = coef e_c: term D[b, j] in row (a, j, c)
        for j in range(n):
            M[(a * n + j) * n + c, b * n + j] -= coef
    return M


@lru_cache(maxsize=None)
def _exact_basis(params: tuple) -> tuple:
    ctx = AlgebraContext(params, EXACT)
    M = leibniz_system(ctx)
    kernel = nullspace(M)
    logger.debug("Leibniz system %d x %d has nullity %d", *M.shape, len(kernel))
    return tuple(v.reshape(DIMENSION, DIMENSION) for v in kernel)


def derivation_basis(ctx: AlgebraContext) -> List[Derivation]:
    """
    Basis of Der(C), computed exactly and converted to the context backend.

    The basis is the reduced-row-echelon kernel of the Leibniz system, so it is
    the same on both backends.
    """
    basis = _exact_basis(ctx.with_backend(EXACT).params)
    if ctx.backend.exact:
        return [Derivation(d.copy(), ctx) for d in basis]
    return [Derivation(np.array(d.tolist(), dtype=float), ctx) for d in basis]


def is_derivation(d: Derivation, tol: float = RESIDUAL_TOL) -> bool:
    ctx = d.ctx
    units = ctx.units()
    images = [d(e) for e in units]
    if not images[0].is_zero(tol):
        return False
    for i in range(DIMENSION):
        for j in range(DIMENSION):
            lhs = d(units[i] * units[j])
            rhs = images[i] * units[j] + units[i] * images[j]
            if not lhs.isclose(rhs, tol):
                return False
    return True


def bracket(d1: Derivation, d2: Derivation) -> Derivation:
    if d1.ctx != d2.ctx:
        raise ContextMismatch("derivations belong to different contexts")
    return Derivation(d1.d.dot(d2.d) - d2.d.dot(d1.d), d1.ctx)


def combine(coeffs: Sequence, basis: Sequence[Derivation]) -> Derivation:
    ctx = basis[0].ctx
    d = ctx.backend.zeros((DIMENSION, DIMENSION))
    for c, b in zip(coeffs, basis):
        d = d + ctx.backend.scalar(c) * b.d
    return Derivation(d, ctx)


@lru_cache(maxsize=None)
def _orthonormal_basis(params: tuple) -> np.ndarray:
    columns = [np.array(d.tolist(), dtype=float).ravel() for d in _exact_basis(params)]
    q, _ = np.linalg.qr(np.column_stack(columns))
    return q


def _orthonormal_stabilizer(D: Subalgebra) -> np.ndarray:
    columns = [d.to_float().d.ravel() for d in stabilizer_derivations(D)]
    q, _ = np.linalg.qr(np.column_stack(columns))
    return q


def centralizer_dimension(
    t: AutMatrix, tol: float = SPECTRUM_TOL, within: Subalgebra = None
) -> int:
    """
    Dimension of {d in Der(C) : t d = d t}, the Lie algebra of Z_G(t).

    With ``within`` set, only derivations vanishing on that subalgebra are
    searched, which measures the centralizer of t inside G(C/within); t must
    fix ``within``. Measured on a Frobenius-orthonormal float basis, so
    singular values of the commutator map are comparable to ``tol``.
    """
    t = t.to_float()
    if within is None:
        q = _orthonormal_basis(t.ctx.with_backend(EXACT).params)
    else:
        q = _orthonormal_stabilizer(within)
    m = t.m
    columns = []
    for k in range(q.shape[1]):
        d = q[:, k].reshape(DIMENSION, DIMENSION)
        columns.append((m @ d - d @ m).ravel())
    s = np.linalg.svd(np.column_stack(columns), compute_uv=False)
    rank = int(np.sum(s > tol))
    logger.debug("commutator map singular values %s", s)
    return q.shape[1] - rank


def exponentiate(d: Derivation, scale: float = 1.0) -> AutMatrix:
    """
    exp(scale * d) by scaling and squaring.

    The matrix is scaled until its norm is at most ``SCALING_TARGET``, the
    Taylor series is summed until a term drops below ``SERIES_CUTOFF``, and
    the result is squared back. Exact derivations are converted to floats.

    Raises:
        CertificationFailure: if the result does not certify
    """
    d = d.to_float()
    A = float(scale) * d.d
    n = float(np.linalg.norm(A))
    squarings = 0
    if n > SCALING_TARGET:
        squarings = int(math.ceil(math.log2(n / SCALING_TARGET)))
    A = A / (2**squarings)
    result = np.eye(DIMENSION)
    term = np.eye(DIMENSION)
    k = 0
    while True:
        k += 1
        term = term @ A / k
        result = result + term
        if np.linalg.norm(term) < SERIES_CUTOFF:
            break
    for _ in range(squarings):
        result = result @ result
    return certify_constructed(result, d.ctx)


def _random_product(
    basis: Sequence[Derivation], rng: XorShift64Star, factors: int
) -> AutMatrix:
    ctx = basis[0].ctx
    t = identity(ctx)
    for _ in range(factors):
        coeffs = [rng.uniform(-1.0, 1.0) for _ in basis]
        t = compose(t, exponentiate(combine(coeffs, basis)))
    return t


def sample_automorphism(
    seed: int,
    ctx: AlgebraContext = None,
    factors: int = SAMPLER_FACTORS,
) -> AutMatrix:
    """
    Pseudo-random automorphism: a product of exponentials of random derivations.

    Each factor draws 14 coefficients uniformly from [-1, 1] from the
    xorshift64* stream seeded with ``seed``. The distribution has full support
    on G but is not Haar measure.
    """
    ctx = ctx.with_backend(FLOAT) if ctx is not None else AlgebraContext.compact()
    rng = XorShift64Star(seed)
    return _random_product(derivation_basis(ctx), rng, factors)


def stabilizer_derivations(D: Subalgebra) -> List[Derivation]:
    """
    Derivations vanishing on D: the Lie algebra of G(C/D).

    For a quadratic subalgebra this is su(3) (dimension 8); for a quaternion
    subalgebra it is sl_1(Q) (dimension 3).
    """
    basis = derivation_basis(D.ctx)
    backend = D.ctx.backend
    rows = []
    for x in D.basis:
        images = [b(x).coords for b in basis]
        for k in range(DIMENSION):
            rows.append([img[k] for img in images])
    M = backend.array(rows)
    out = []
    for coeffs in nullspace(M):
        d = combine(list(coeffs), basis)
        if not is_zero_array(d.d):
            out.append(d)
    logger.debug("stabilizer of a %d-dim subalgebra has dimension %d", D.dim, len(out))
    return out


def sample_fixing(
    D: Subalgebra, seed: int, factors: int = SAMPLER_FACTORS
) -> AutMatrix:
    """Pseudo-random element of G(C/D), fixing D pointwise (float backend)."""
    float_ctx = D.ctx.with_backend(FLOAT)
    stabilizer = [d.to_float() for d in stabilizer_derivations(D)]
    if not stabilizer:
        return identity(float_ctx)
    return _random_product(stabilizer, XorShift64Star(seed), factors)
