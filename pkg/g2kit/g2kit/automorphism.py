"""
Automorphisms of the octonions as certified 8x8 matrices.

Every constructor funnels through ``certify``: a matrix is accepted only if it
fixes 1 and is multiplicative on all 64 basis pairs. The families built here
are the ones needed to describe centralizers:

- ``make_Rp``: x + yb -> x + (py)b, fixing a quaternion subalgebra Q
- ``make_inner_ext``: x + yb -> cxc^-1 + (cyc^-1)b, lifting conjugation on Q
- ``make_rho``: the involution lifting the conjugation of a quadratic L
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from g2kit.constants import (
    DEFAULT_A_INDEX,
    DEFAULT_B_INDEX,
    DEFAULT_GAMMA_INDEX,
    DIMENSION,
    EQUALITY_TOL,
    RESIDUAL_TOL,
)
from g2kit.errors import (
    CertificationFailure,
    ContextMismatch,
    NormNotOne,
    NormZero,
    NotAutomorphism,
    NotFixingL,
    NotOrthogonal,
)
from g2kit.numeric import FLOAT
from g2kit.numeric import inverse as matrix_inverse
from g2kit.numeric import is_zero_array, max_abs, nullspace
from g2kit.octonion import (
    AlgebraContext,
    Octonion,
    Subalgebra,
    bilinear,
    conjugate,
    double_subalgebra,
    generate_subalgebra,
    inverse as octonion_inverse,
    norm,
    subalgebra_from_span,
)

__all__ = [
    "AutMatrix",
    "QuaternionPoint",
    "StandingChoices",
    "certify",
    "fixed_subalgebra",
    "make_Rp",
    "make_inner_ext",
    "make_rho",
    "compose",
    "inverse",
    "commutes",
    "identity",
    "fixes_pointwise",
    "leaves_invariant",
    "is_involution",
    "involution_of",
    "rp_parameter",
    "in_subalgebra",
    "form_preserved",
    "standing_choices",
    "from_basis_images",
    "certify_constructed",
]

logger = logging.getLogger(__name__)

# Singular values of t - I below this count as fixed directions.
FIXED_SPACE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class AutMatrix:
    """An 8x8 matrix acting on coordinate columns, plus its context."""

    m: np.ndarray
    ctx: AlgebraContext
    certified: bool = False

    def __call__(self, x: Octonion) -> Octonion:
        if x.ctx != self.ctx:
            raise ContextMismatch("octonion and automorphism contexts differ")
        return Octonion.from_array(self.ctx, self.m.dot(x.array()))

    def __matmul__(self, other: "AutMatrix") -> "AutMatrix":
        return compose(self, other)

    @property
    def backend(self):
        return self.ctx.backend

    def to_float(self) -> "AutMatrix":
        if not self.backend.exact:
            return self
        m = np.array(self.m.tolist(), dtype=float)
        return AutMatrix(m, self.ctx.with_backend(FLOAT), self.certified)

    def is_identity(self, tol: float = RESIDUAL_TOL) -> bool:
        return is_zero_array(self.m - self.backend.identity(DIMENSION), tol)

    def isclose(self, other: "AutMatrix", tol: float = RESIDUAL_TOL) -> bool:
        _same_context(self, other)
        return is_zero_array(self.m - other.m, tol)


class QuaternionPoint:
    """An element of a quaternion subalgebra Q (p, c and friends)."""

    def __init__(self, value, host: Subalgebra):
        if host.dim != 4:
            raise ValueError(
                f"host must be a quaternion subalgebra, got dimension {host.dim}"
            )
        if not isinstance(value, Octonion):
            value = host.ctx.one() * value
        if not host.contains(value):
            raise ValueError(f"{value!r} does not lie in the host subalgebra")
        self.value = value
        self.host = host

    def __repr__(self):
        return f"QuaternionPoint({self.value!r})"


class StandingChoices(NamedTuple):
    """L = span{1, e1}, a = e2, Q = span{1, e1, e2, e3}, b = e4."""

    L: Subalgebra
    a: Octonion
    Q: Subalgebra
    b: Octonion


def standing_choices(ctx: AlgebraContext) -> StandingChoices:
    L = generate_subalgebra([ctx.unit(DEFAULT_GAMMA_INDEX)])
    a = ctx.unit(DEFAULT_A_INDEX)
    Q = double_subalgebra(L, a)
    return StandingChoices(L, a, Q, ctx.unit(DEFAULT_B_INDEX))


def _same_context(g: AutMatrix, t: AutMatrix):
    if g.ctx != t.ctx:
        raise ContextMismatch(
            "automorphisms belong to different algebra contexts",
            left=g.ctx,
            right=t.ctx,
        )


def _product_rules(ctx: AlgebraContext) -> dict:
    rules = {}
    for i, j, k, coef in ctx.table:
        rules.setdefault((i, j), []).append((k, coef))
    return rules


def certify(m, ctx: AlgebraContext, tol: float = RESIDUAL_TOL) -> AutMatrix:
    """
    Check that ``m`` is an algebra automorphism.

    Args:
        m: 8x8 matrix; column i holds the coordinates of t(e_i)
        ctx (AlgebraContext): context whose backend the entries are read in
        tol (float): residual bound on the float backend

    Returns:
        AutMatrix: with ``certified`` set

    Raises:
        NotAutomorphism: naming the first failing basis pair
    """
    backend = ctx.backend
    m = backend.array(m)
    if m.shape != (DIMENSION, DIMENSION):
        raise ValueError(f"expected an 8x8 matrix, got shape {m.shape}")
    scale = max(1.0, max_abs(m)) ** 2
    unit = backend.identity(DIMENSION)[:, 0]
    if not is_zero_array(m[:, 0] - unit, tol):
        raise NotAutomorphism("the matrix does not fix 1", pair=(0, 0))
    images = [Octonion.from_array(ctx, m[:, i]) for i in range(DIMENSION)]
    rules = _product_rules(ctx)
    for i in range(1, DIMENSION):
        for j in range(1, DIMENSION):
            lhs = ctx.zero()
            for k, coef in rules.get((i, j), ()):
                lhs = lhs + coef * images[k]
            rhs = images[i] * images[j]
            if not (lhs - rhs).is_zero(tol * scale):
                residual = max_abs((lhs - rhs).array())
                raise NotAutomorphism(
                    f"t(e{i} e{j}) != t(e{i}) t(e{j}) (residual {residual:.3g})",
                    pair=(i, j),
                    residual=residual,
                )
    return AutMatrix(m, ctx, True)


def certify_constructed(m, ctx: AlgebraContext) -> AutMatrix:
    """Certify a matrix built by a constructor; failure is an internal error."""
    try:
        return certify(m, ctx)
    except NotAutomorphism as e:
        raise CertificationFailure(
            f"constructed matrix failed certification: {e}", **e.details
        ) from e


def from_basis_images(
    ctx: AlgebraContext, source: Sequence[Octonion], images: Sequence[Octonion]
) -> AutMatrix:
    """The certified automorphism sending each source vector to its image."""
    S = np.column_stack([s.array() for s in source])
    T = np.column_stack([v.array() for v in images])
    return certify_constructed(T.dot(matrix_inverse(S)), ctx)


def identity(ctx: AlgebraContext) -> AutMatrix:
    return AutMatrix(ctx.backend.identity(DIMENSION), ctx, True)


def fixed_subalgebra(t: AutMatrix) -> Subalgebra:
    """The subalgebra of elements fixed by t (its 1-eigenspace)."""
    kernel = nullspace(t.m - t.backend.identity(DIMENSION), FIXED_SPACE_TOL)
    vectors = [Octonion.from_array(t.ctx, v) for v in kernel]
    F = subalgebra_from_span(t.ctx, vectors)
    logger.debug("fixed subalgebra of dimension %d", F.dim)
    return F


def _check_doubling_element(D: Subalgebra, b: Octonion):
    if not D.is_orthogonal_to(b):
        raise NotOrthogonal(f"{b!r} is not orthogonal to the subalgebra")
    if D.ctx.backend.is_zero(norm(b)):
        raise NormZero(f"{b!r} has norm zero")


def _quaternion_frame(Q: Subalgebra, b: Octonion):
    if Q.dim != 4:
        raise ValueError(f"expected a quaternion subalgebra, got dimension {Q.dim}")
    _check_doubling_element(Q, b)
    return list(Q.basis) + [q * b for q in Q.basis]


def make_Rp(Q: Subalgebra, b: Octonion, p: QuaternionPoint) -> AutMatrix:
    """
    R_p: x + yb -> x + (py)b for x, y in Q.

    Raises:
        NormNotOne: if N(p) != 1
        NotOrthogonal: if b is not in the complement of Q
    """
    source = _quaternion_frame(Q, b)
    n = norm(p.value)
    if not Q.ctx.backend.is_zero(n - 1, EQUALITY_TOL):
        raise NormNotOne(f"N(p) = {n}, expected 1", norm=n)
    images = list(Q.basis) + [(p.value * q) * b for q in Q.basis]
    return from_basis_images(Q.ctx, source, images)


def make_inner_ext(Q: Subalgebra, b: Octonion, c: QuaternionPoint) -> AutMatrix:
    """Lift of x -> cxc^-1 on Q: x + yb -> cxc^-1 + (cyc^-1)b."""
    source = _quaternion_frame(Q, b)
    if Q.ctx.backend.is_zero(norm(c.value)):
        raise NormZero(f"{c.value!r} has norm zero")
    c_inv = octonion_inverse(c.value)
    conj = [(c.value * q) * c_inv for q in Q.basis]
    images = conj + [y * b for y in conj]
    return from_basis_images(Q.ctx, source, images)


def make_rho(L: Subalgebra, a: Octonion, b: Octonion) -> AutMatrix:
    """
    The involution conjugating the L-coefficients in the basis (1, a, b, ab).

    Raises:
        NotOrthogonal, NormZero: if a or b is badly positioned
    """
    if L.dim != 2:
        raise ValueError(f"expected a quadratic subalgebra, got dimension {L.dim}")
    _check_doubling_element(L, a)
    Q = double_subalgebra(L, a)
    _check_doubling_element(Q, b)
    gamma = L.basis[1]
    frame = [L.ctx.one(), a, b, a * b]
    source, images = [], []
    for v in frame:
        source += [v, gamma * v]
        images += [v, -(gamma * v)]
    return from_basis_images(L.ctx, source, images)


def compose(g: AutMatrix, t: AutMatrix) -> AutMatrix:
    """g after t."""
    _same_context(g, t)
    return AutMatrix(g.m.dot(t.m), g.ctx, g.certified and t.certified)


def inverse(t: AutMatrix) -> AutMatrix:
    # t preserves the form, so t^-1 = G^-1 t^T G with G the Gram matrix.
    G = t.ctx.gram()
    G_inv = matrix_inverse(G)
    return AutMatrix(G_inv.dot(t.m.T).dot(G), t.ctx, t.certified)


def commutes(g: AutMatrix, t: AutMatrix, tol: float = RESIDUAL_TOL) -> bool:
    _same_context(g, t)
    return is_zero_array(g.m.dot(t.m) - t.m.dot(g.m), tol)


def fixes_pointwise(t: AutMatrix, D: Subalgebra, tol: float = RESIDUAL_TOL) -> bool:
    """Membership in G(C/D)."""
    return all(t(d).isclose(d, tol) for d in D.basis)


def leaves_invariant(t: AutMatrix, D: Subalgebra, tol: float = RESIDUAL_TOL) -> bool:
    """Membership in G(C, D)."""
    return all(D.contains(t(d), tol) for d in D.basis)


def is_involution(t: AutMatrix, tol: float = RESIDUAL_TOL) -> bool:
    return compose(t, t).is_identity(tol) and not t.is_identity(tol)


def involution_of(Q: Subalgebra, b: Octonion) -> AutMatrix:
    """R_{-1} over Q: the involution whose fixed subalgebra is Q."""
    return make_Rp(Q, b, QuaternionPoint(-1, Q))


def rp_parameter(t: AutMatrix, Q: Subalgebra, b: Octonion) -> QuaternionPoint:
    """
    Recover p with t = R_p from t(b) = pb.

    Raises:
        NotFixingL: if t does not fix Q pointwise
    """
    if not fixes_pointwise(t, Q):
        raise NotFixingL("the automorphism does not fix Q pointwise")
    p = (t(b) * conjugate(b)) / norm(b)
    return QuaternionPoint(p, Q)


def in_subalgebra(x: Octonion, D: Subalgebra, tol: float = EQUALITY_TOL) -> bool:
    """Membership by projection residual (exact zero or below tol)."""
    return D.contains(x, tol)


def form_preserved(
    t: AutMatrix, x: Octonion, y: Octonion, tol: float = RESIDUAL_TOL
) -> bool:
    return t.backend.is_zero(bilinear(t(x), t(y)) - bilinear(x, y), tol)
