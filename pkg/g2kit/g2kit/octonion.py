"""
Octonion arithmetic by Cayley-Dickson doubling.

This module implements the algebra engine for g2kit. It provides:
- Algebra contexts (three doubling parameters plus a scalar backend)
- Octonion elements with multiplication, conjugation, norm, trace, inverse
- The polarized bilinear form, halved so the standard basis is orthonormal
- Composition subalgebras: generation from seeds, orthogonal complements and
  doubling D -> D + Da

The doubling rule at every level is

    (a, b)(c, d) = (ac + lambda * conj(d) b, da + b conj(c))

with lambda the parameter of that level. The standard basis is e0 = 1,
e1, ..., e7 with e3 = e1e2, e5 = e1e4, e6 = e2e4, e7 = e3e4; the compact
preset (-1, -1, -1) gives the real octonion division algebra.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from g2kit.constants import COMPACT_PARAMS, DIMENSION, RESIDUAL_TOL
from g2kit.errors import (
    ContextMismatch,
    DimensionOverflow,
    Disagreement,
    DivisionByZero,
    NormZero,
    NotComposition,
    NotOrthogonal,
)
from g2kit.numeric import FLOAT, Backend, nullspace
from g2kit.rng import XorShift64Star

__all__ = [
    "AlgebraContext",
    "Octonion",
    "Subalgebra",
    "cd_multiply",
    "norm",
    "conjugate",
    "bilinear",
    "trace",
    "inverse",
    "orthogonalize",
    "generate_subalgebra",
    "subalgebra_from_span",
    "orthogonal_complement",
    "double_subalgebra",
    "full_algebra",
    "AxiomReport",
    "verify_axioms",
]

logger = logging.getLogger(__name__)

COMPOSITION_DIMS = (1, 2, 4, 8)


def _cd_conj(x: list) -> list:
    if len(x) == 1:
        return list(x)
    h = len(x) // 2
    return _cd_conj(x[:h]) + [-v for v in x[h:]]


def _cd_product(x: list, y: list, params: Sequence) -> list:
    n = len(x)
    if n == 1:
        return [x[0] * y[0]]
    h = n // 2
    lam = params[h.bit_length() - 1]
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    ac = _cd_product(a, c, params)
    dbar_b = _cd_product(_cd_conj(d), b, params)
    da = _cd_product(d, a, params)
    b_cbar = _cd_product(b, _cd_conj(c), params)
    first = [u + lam * v for u, v in zip(ac, dbar_b)]
    second = [u + v for u, v in zip(da, b_cbar)]
    return first + second


@lru_cache(maxsize=None)
def _multiplication_table(params: tuple, backend: Backend) -> tuple:
    zero, one = backend.scalar(0), backend.scalar(1)
    table = []
    for i in range(DIMENSION):
        for j in range(DIMENSION):
            x = [one if k == i else zero for k in range(DIMENSION)]
            y = [one if k == j else zero for k in range(DIMENSION)]
            prod = _cd_product(x, y, params)
            for k, coef in enumerate(prod):
                if coef != 0:
                    table.append((i, j, k, coef))
    return tuple(table)


@dataclass(frozen=True)
class AlgebraContext:
    """
    Doubling parameters (c1, c2, c3) and the scalar backend.

    The multiplication table is derived once per context and cached.
    """

    params: Tuple = COMPACT_PARAMS
    backend: Backend = FLOAT

    def __post_init__(self):
        if len(self.params) != 3:
            raise ValueError(f"expected three doubling parameters, got {self.params}")
        converted = tuple(self.backend.scalar(c) for c in self.params)
        if any(c == 0 for c in converted):
            raise ValueError(f"doubling parameters must be nonzero, got {self.params}")
        object.__setattr__(self, "params", converted)

    @classmethod
    def compact(cls, backend: Backend = FLOAT) -> "AlgebraContext":
        return cls(COMPACT_PARAMS, backend)

    @property
    def is_compact(self) -> bool:
        return all(c == -1 for c in self.params)

    @property
    def table(self) -> tuple:
        return _multiplication_table(self.params, self.backend)

    @property
    def norm_diagonal(self) -> tuple:
        # N(e_i) from e_i * conj(e_i); the standard basis is orthogonal.
        return _norm_diagonal(self.params, self.backend)

    def with_backend(self, backend: Backend) -> "AlgebraContext":
        return AlgebraContext(self.params, backend)

    def element(self, coords) -> "Octonion":
        return Octonion(self, coords)

    def zero(self) -> "Octonion":
        return Octonion(self, [0] * DIMENSION)

    def one(self) -> "Octonion":
        return self.unit(0)

    def unit(self, index: int) -> "Octonion":
        if not 0 <= index < DIMENSION:
            raise ValueError(f"basis index {index} out of range 0..7")
        return Octonion(self, [1 if k == index else 0 for k in range(DIMENSION)])

    def units(self) -> List["Octonion"]:
        return [self.unit(i) for i in range(DIMENSION)]

    def gram(self) -> np.ndarray:
        g = self.backend.zeros((DIMENSION, DIMENSION))
        for i, n in enumerate(self.norm_diagonal):
            g[i, i] = n
        return g


@lru_cache(maxsize=None)
def _norm_diagonal(params: tuple, backend: Backend) -> tuple:
    out = []
    for i in range(DIMENSION):
        x = [backend.scalar(1 if k == i else 0) for k in range(DIMENSION)]
        out.append(_cd_product(x, _cd_conj(x), params)[0])
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Octonion:
    """An element of the algebra: 8 coordinates in the standard basis."""

    ctx: AlgebraContext
    coords: tuple = field(default=())

    # numpy scalars defer to __rmul__ instead of broadcasting over an Octonion.
    __array_ufunc__ = None

    def __post_init__(self):
        coords = tuple(self.ctx.backend.scalar(c) for c in self.coords)
        if len(coords) != DIMENSION:
            raise ValueError(f"an octonion needs 8 coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_array(cls, ctx: AlgebraContext, array) -> "Octonion":
        return cls(ctx, list(np.asarray(array).ravel()))

    def array(self) -> np.ndarray:
        if self.ctx.backend.exact:
            return np.array(self.coords, dtype=object)
        return np.array(self.coords, dtype=float)

    def with_backend(self, backend: Backend) -> "Octonion":
        return Octonion(self.ctx.with_backend(backend), self.coords)

    def _check(self, other: "Octonion"):
        if other.ctx != self.ctx:
            raise ContextMismatch(
                "octonions belong to different algebra contexts",
                left=self.ctx,
                right=other.ctx,
            )

    def __add__(self, other: "Octonion") -> "Octonion":
        self._check(other)
        return Octonion(self.ctx, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Octonion") -> "Octonion":
        self._check(other)
        return Octonion(self.ctx, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Octonion":
        return Octonion(self.ctx, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return cd_multiply(self, other)
        s = self.ctx.backend.scalar(other)
        return Octonion(self.ctx, [s * a for a in self.coords])

    def __rmul__(self, other):
        s = self.ctx.backend.scalar(other)
        return Octonion(self.ctx, [s * a for a in self.coords])

    def __truediv__(self, other):
        s = self.ctx.backend.scalar(other)
        return Octonion(self.ctx, [a / s for a in self.coords])

    def __eq__(self, other):
        if not isinstance(other, Octonion) or other.ctx != self.ctx:
            return NotImplemented
        return self.coords == other.coords

    __hash__ = None

    def is_zero(self, tol: float = RESIDUAL_TOL) -> bool:
        backend = self.ctx.backend
        return all(backend.is_zero(a, tol) for a in self.coords)

    def isclose(self, other: "Octonion", tol: float = RESIDUAL_TOL) -> bool:
        return (self - other).is_zero(tol)

    def conjugate(self) -> "Octonion":
        return conjugate(self)

    def norm(self):
        return norm(self)

    def inverse(self) -> "Octonion":
        return inverse(self)

    def __repr__(self):
        body = ", ".join(str(a) for a in self.coords)
        return f"Octonion([{body}], {self.ctx.backend.name})"


def cd_multiply(x: Octonion, y: Octonion) -> Octonion:
    """
    Multiply two octonions of the same context.

    Args:
        x (Octonion): left factor
        y (Octonion): right factor

    Returns:
        Octonion: the product xy

    Raises:
        ContextMismatch: if x and y come from different contexts
    """
    x._check(y)
    zero = x.ctx.backend.scalar(0)
    out = [zero] * DIMENSION
    xc, yc = x.coords, y.coords
    for i, j, k, coef in x.ctx.table:
        if xc[i] != 0 and yc[j] != 0:
            out[k] = out[k] + coef * xc[i] * yc[j]
    return Octonion(x.ctx, out)


def bilinear(x: Octonion, y: Octonion):
    """Halved polarization (N(x+y) - N(x) - N(y)) / 2 of the norm form."""
    x._check(y)
    return sum(
        (g * a * b for g, a, b in zip(x.ctx.norm_diagonal, x.coords, y.coords)),
        x.ctx.backend.scalar(0),
    )


def norm(x: Octonion):
    return bilinear(x, x)


def trace(x: Octonion):
    return 2 * bilinear(x, x.ctx.one())


def conjugate(x: Octonion) -> Octonion:
    return Octonion(x.ctx, [x.coords[0]] + [-a for a in x.coords[1:]])


def inverse(x: Octonion) -> Octonion:
    """
    Multiplicative inverse conj(x) / N(x).

    Raises:
        DivisionByZero: if N(x) = 0
    """
    n = norm(x)
    if x.ctx.backend.is_zero(n):
        raise DivisionByZero(f"{x!r} has norm zero and no inverse")
    return conjugate(x) / n


def _residual(x: Octonion, basis: Sequence[Octonion]) -> Octonion:
    w = x
    for u in basis:
        w = w - (bilinear(w, u) / norm(u)) * u
    return w


def _dependent(w: Octonion, v: Octonion, tol: float) -> bool:
    if w.ctx.backend.exact:
        return w.is_zero()
    scale = max(1.0, max(abs(a) for a in v.coords))
    return w.is_zero(tol * scale)


def orthogonalize(
    vectors: Sequence[Octonion], tol: float = RESIDUAL_TOL
) -> List[Octonion]:
    """
    Gram-Schmidt in input order, dropping dependent vectors.

    Exact vectors are kept unnormalized so they stay rational; float vectors
    are scaled to norm +-1.

    Raises:
        NotComposition: if a new direction is isotropic
    """
    out: List[Octonion] = []
    for v in vectors:
        w = _residual(v, out)
        if _dependent(w, v, tol):
            continue
        n = norm(w)
        backend = w.ctx.backend
        if backend.is_zero(n, tol):
            raise NotComposition(f"isotropic direction {w!r}; the form is degenerate")
        if not backend.exact:
            w = w / backend.sqrt(abs(n))
        out.append(w)
    return out


@dataclass(frozen=True, eq=False)
class Subalgebra:
    """
    A composition subalgebra given by an orthogonal basis starting with 1.

    Use ``generate_subalgebra``, ``subalgebra_from_span`` or
    ``double_subalgebra`` to build one; they verify closure.
    """

    ctx: AlgebraContext
    basis: Tuple[Octonion, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def residual(self, x: Octonion) -> Octonion:
        return _residual(x, self.basis)

    def contains(self, x: Octonion, tol: float = RESIDUAL_TOL) -> bool:
        return _dependent(self.residual(x), x, tol)

    def project(self, x: Octonion) -> Octonion:
        return x - self.residual(x)

    def is_orthogonal_to(self, x: Octonion, tol: float = RESIDUAL_TOL) -> bool:
        backend = self.ctx.backend
        return all(backend.is_zero(bilinear(x, d), tol) for d in self.basis)

    def trace_zero_part(self) -> List[Octonion]:
        return list(self.basis[1:])

    def matrix(self) -> np.ndarray:
        """Basis vectors as the columns of an 8 x dim array."""
        return np.column_stack([d.array() for d in self.basis])

    def with_backend(self, backend: Backend) -> "Subalgebra":
        ctx = self.ctx.with_backend(backend)
        return _make_subalgebra(ctx, [d.with_backend(backend) for d in self.basis[1:]])


def _make_subalgebra(ctx: AlgebraContext, vectors: Sequence[Octonion]) -> Subalgebra:
    one = ctx.one()
    basis = orthogonalize([one] + list(vectors))
    closed = _close_under_products(basis, grow=False)
    if closed is None:
        raise NotComposition("the span is not closed under multiplication")
    if len(basis) not in COMPOSITION_DIMS:
        raise NotComposition(f"dimension {len(basis)} is not 1, 2, 4 or 8")
    return Subalgebra(ctx, tuple(basis))


def _close_under_products(basis: List[Octonion], grow: bool):
    changed = True
    while changed:
        changed = False
        for x in list(basis):
            for y in list(basis):
                p = x * y
                w = _residual(p, basis)
                if _dependent(w, p, RESIDUAL_TOL):
                    continue
                if not grow:
                    return None
                extended = orthogonalize(basis + [p])
                if len(extended) > DIMENSION:
                    raise NotComposition("closure exceeded the algebra dimension")
                basis[:] = extended
                changed = True
    return basis


def generate_subalgebra(seeds: Sequence[Octonion]) -> Subalgebra:
    """
    Smallest subalgebra containing 1 and the seeds.

    Args:
        seeds (list): nonempty list of octonions of one context

    Returns:
        Subalgebra: orthogonal basis, first vector 1

    Raises:
        NotComposition: if the closure's norm form is degenerate
    """
    if not seeds:
        raise ValueError("generate_subalgebra needs at least one seed")
    ctx = seeds[0].ctx
    for s in seeds[1:]:
        seeds[0]._check(s)
    basis = orthogonalize([ctx.one()] + list(seeds))
    _close_under_products(basis, grow=True)
    if len(basis) not in COMPOSITION_DIMS:
        raise NotComposition(f"closure has dimension {len(basis)}")
    logger.debug("generated subalgebra of dimension %d", len(basis))
    return Subalgebra(ctx, tuple(basis))


def subalgebra_from_span(
    ctx: AlgebraContext, vectors: Sequence[Octonion]
) -> Subalgebra:
    """
    Wrap a subspace already known to be a subalgebra (e.g. a fixed space).

    Raises:
        NotComposition: if the span misses 1 or is not closed
    """
    if vectors:
        without_one = orthogonalize(vectors)
        with_one = orthogonalize([ctx.one()] + list(vectors))
        if len(with_one) != len(without_one):
            raise NotComposition("the span does not contain 1")
    return _make_subalgebra(ctx, vectors)


def full_algebra(ctx: AlgebraContext) -> Subalgebra:
    return _make_subalgebra(ctx, ctx.units()[1:])


def orthogonal_complement(D: Subalgebra) -> List[Octonion]:
    """
    Basis of the orthogonal complement of D, orthogonalized.

    Returns:
        list: 8 - dim(D) octonions
    """
    ctx = D.ctx
    g = ctx.norm_diagonal
    rows = [[gi * a for gi, a in zip(g, d.coords)] for d in D.basis]
    M = ctx.backend.array(rows)
    kernel = nullspace(M)
    vectors = [Octonion.from_array(ctx, v) for v in kernel]
    return orthogonalize(vectors)


def double_subalgebra(D: Subalgebra, a: Octonion) -> Subalgebra:
    """
    Cayley-Dickson doubling D + Da.

    Args:
        D (Subalgebra): composition subalgebra with 2*dim(D) <= 8
        a (Octonion): element of the complement of D with N(a) != 0

    Returns:
        Subalgebra: basis {d} followed by {d*a}

    Raises:
        NotOrthogonal, NormZero, DimensionOverflow
    """
    D.basis[0]._check(a)
    if 2 * D.dim > DIMENSION:
        raise DimensionOverflow(f"cannot double a subalgebra of dimension {D.dim}")
    if not D.is_orthogonal_to(a):
        raise NotOrthogonal(f"{a!r} is not orthogonal to the subalgebra")
    if D.ctx.backend.is_zero(norm(a)):
        raise NormZero(f"{a!r} has norm zero")
    vectors = list(D.basis[1:]) + [d * a for d in D.basis]
    return _make_subalgebra(D.ctx, vectors)


def _random_octonion(ctx: AlgebraContext, rng: XorShift64Star) -> Octonion:
    if ctx.backend.exact:
        return Octonion(ctx, [rng.rational() for _ in range(DIMENSION)])
    return Octonion(ctx, [rng.uniform(-1.0, 1.0) for _ in range(DIMENSION)])


def _laws(x: Octonion, y: Octonion, z: Octonion):
    one = x.ctx.one()
    yield "norm multiplicative", norm(x * y), norm(x) * norm(y)
    yield "left alternative", x * (x * y), (x * x) * y
    yield "right alternative", (y * x) * x, y * (x * x)
    yield "flexible", (x * y) * x, x * (y * x)
    yield "left Moufang", z * (x * (z * y)), ((z * x) * z) * y
    yield "right Moufang", x * (z * (y * z)), ((x * z) * y) * z
    yield "middle Moufang", (z * x) * (y * z), (z * (x * y)) * z
    yield "conjugate reverses products", conjugate(x * y), conjugate(y) * conjugate(x)
    yield "x conj(x) = N(x)", x * conjugate(x), one * norm(x)
    yield "trace", trace(x) * one, x + conjugate(x)


@dataclass(frozen=True)
class AxiomReport:
    ctx: AlgebraContext
    trials: int
    seed: int
    laws: Tuple[str, ...]

    @property
    def checks(self) -> int:
        return self.trials * len(self.laws)


def verify_axioms(
    ctx: AlgebraContext, trials: int, seed: int = 0, tol: float = RESIDUAL_TOL
) -> AxiomReport:
    """
    Check the composition-algebra laws on random triples (x, y, z).

    Exact contexts draw small rationals and compare exactly; float contexts
    draw coordinates in [-1, 1] and compare within ``tol``.

    Raises:
        Disagreement: on the first triple that breaks a law
    """
    rng = XorShift64Star(seed)
    names = ()
    for trial in range(trials):
        x, y, z = (_random_octonion(ctx, rng) for _ in range(3))
        names = []
        for name, lhs, rhs in _laws(x, y, z):
            names.append(name)
            if isinstance(lhs, Octonion):
                holds = lhs.isclose(rhs, tol)
            else:
                holds = ctx.backend.is_zero(lhs - rhs, tol)
            if not holds:
                raise Disagreement(
                    f"trial {trial}: {name} fails",
                    trial=trial,
                    law=name,
                    x=x.coords,
                    y=y.coords,
                    z=z.coords,
                )
    logger.debug("%d trials of %d laws hold", trials, len(names))
    return AxiomReport(ctx, trials, seed, tuple(names))
