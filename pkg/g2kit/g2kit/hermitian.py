"""
The hermitian space (L-perp, h) and the isomorphism G(C/L) = SU(L-perp, h).

For a quadratic subalgebra L = k(gamma), gamma^2 = c.1 with c < 0, the
complement of L is a left L-vector space of dimension 3 with basis (a, b, ab),
and

    h(x, y) = N(x, y) + c^-1 gamma N(gamma x, y)

is a nondegenerate hermitian form on it. Writing L = k(i) with
i = gamma / sqrt(-c), this reads h(x, y) = B(x, y) - B(i x, y) i, which is
L-linear in x. An automorphism fixing L pointwise is L-linear on L-perp; its
matrix A in the basis (a, b, ab) satisfies det A = 1 and A^T H conj(A) = H.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from g2kit.automorphism import (
    AutMatrix,
    compose,
    fixes_pointwise,
    from_basis_images,
    make_rho,
    standing_choices,
)
from g2kit.constants import EQUALITY_TOL, RESIDUAL_TOL
from g2kit.errors import (
    BadBasisPosition,
    CertificationFailure,
    DegenerateForm,
    NotFixingL,
    NotInComplement,
    NotSpecialUnitary,
)
from g2kit.numeric import (
    ComplexScalar,
    conj_array,
    det3,
    is_zero_array,
    max_abs,
    solve,
)
from g2kit.octonion import (
    AlgebraContext,
    Octonion,
    Subalgebra,
    bilinear,
    double_subalgebra,
    norm,
    orthogonal_complement,
)

__all__ = [
    "HermitianSpace",
    "SU3Matrix",
    "INTERTWINER",
    "build_hermitian_space",
    "default_space",
    "positioned_space",
    "h_eval",
    "coordinates",
    "aut_to_su3",
    "su3_to_aut",
    "su3_matrix",
    "diagonal",
    "is_special_unitary",
    "rho_conjugate_matrix",
    "intertwiner",
    "witness",
]

logger = logging.getLogger(__name__)

# B with A B = B conj(A) for A = diag(1, z, conj(z)); B^2 = I.
INTERTWINER = ((-1, 0, 0), (0, 0, 1), (0, 1, 0))


@dataclass(frozen=True, eq=False)
class HermitianSpace:
    """L with its unit imaginary ``gamma``, the L-basis (a, b, ab) and H."""

    L: Subalgebra
    gamma: Octonion
    c: object
    basis: tuple
    H: np.ndarray

    @property
    def ctx(self) -> AlgebraContext:
        return self.L.ctx

    @property
    def a(self) -> Octonion:
        return self.basis[0]

    @property
    def b(self) -> Octonion:
        return self.basis[1]

    def real_frame(self):
        """The k-basis (v1, i v1, v2, i v2, v3, i v3) of L-perp."""
        frame = []
        for v in self.basis:
            frame += [v, self.gamma * v]
        return frame

    def rho(self) -> AutMatrix:
        return make_rho(self.L, self.a, self.b)


@dataclass(frozen=True, eq=False)
class SU3Matrix:
    """A 3x3 matrix over L acting on coordinate columns in the basis (a, b, ab)."""

    A: np.ndarray
    space: HermitianSpace

    def __matmul__(self, other: "SU3Matrix") -> "SU3Matrix":
        return SU3Matrix(self.A.dot(other.A), self.space)

    def conjugate(self) -> "SU3Matrix":
        return SU3Matrix(conj_array(self.A), self.space)

    def to_complex(self) -> np.ndarray:
        if self.A.dtype == object:
            return np.array([[complex(z) for z in row] for row in self.A])
        return np.asarray(self.A, dtype=complex)


def _raw_h(gamma: Octonion, x: Octonion, y: Octonion):
    backend = x.ctx.backend
    return backend.complex(bilinear(x, y), -bilinear(gamma * x, y))


def build_hermitian_space(L: Subalgebra, a: Octonion, b: Octonion) -> HermitianSpace:
    """
    Assemble (L-perp, h) over the basis (a, b, ab).

    Raises:
        BadBasisPosition: if a is not in L-perp, or b not in (L + La)-perp
        DegenerateForm: if L is split or h vanishes on a basis vector
    """
    ctx = L.ctx
    backend = ctx.backend
    if L.dim != 2:
        raise BadBasisPosition(f"L must be quadratic, got dimension {L.dim}")
    if not L.is_orthogonal_to(a) or backend.is_zero(norm(a)):
        raise BadBasisPosition(f"{a!r} is not an anisotropic vector of L-perp")
    Q = double_subalgebra(L, a)
    if not Q.is_orthogonal_to(b) or backend.is_zero(norm(b)):
        raise BadBasisPosition(
            f"{b!r} is not an anisotropic vector of (L + La)-perp"
        )
    raw = L.basis[1]
    c = (raw * raw).coords[0]
    if not c < 0:
        raise DegenerateForm(f"gamma^2 = {c} is not negative; L is not a field")
    gamma = raw / backend.sqrt(-c)
    basis = (a, b, a * b)
    H = np.empty((3, 3), dtype=object) if backend.exact else np.zeros((3, 3), complex)
    for j, u in enumerate(basis):
        for k, v in enumerate(basis):
            H[j, k] = _raw_h(gamma, u, v)
    for k in range(3):
        if backend.is_zero(H[k, k].real):
            raise DegenerateForm(f"h vanishes on basis vector {k}")
    logger.debug("hermitian space with H diagonal %s", [H[k, k] for k in range(3)])
    return HermitianSpace(L, gamma, c, basis, H)


def default_space(ctx: AlgebraContext = None) -> HermitianSpace:
    """L = span{1, e1}, a = e2, b = e4; H is the identity on the compact preset."""
    ctx = ctx or AlgebraContext.compact()
    choice = standing_choices(ctx)
    return build_hermitian_space(choice.L, choice.a, choice.b)


def positioned_space(L: Subalgebra) -> HermitianSpace:
    """Space over L with a, b the first orthogonalized complement vectors."""
    a = orthogonal_complement(L)[0]
    Q = double_subalgebra(L, a)
    b = orthogonal_complement(Q)[0]
    return build_hermitian_space(L, a, b)


def _check_complement(space: HermitianSpace, x: Octonion):
    if not space.L.is_orthogonal_to(x):
        raise NotInComplement(f"{x!r} is not orthogonal to L")


def h_eval(space: HermitianSpace, x: Octonion, y: Octonion):
    """h(x, y) as an element of L (``ComplexScalar`` or ``complex``)."""
    _check_complement(space, x)
    _check_complement(space, y)
    return _raw_h(space.gamma, x, y)


def coordinates(space: HermitianSpace, x: Octonion) -> list:
    """
    L-coordinates (alpha1, alpha2, alpha3) of x = alpha1 a + alpha2 b + alpha3 ab.

    Solved as a 6 x 6 real system of normal equations in the frame
    (v, i v) for v in (a, b, ab).
    """
    _check_complement(space, x)
    backend = space.ctx.backend
    frame = space.real_frame()
    gram = backend.array([[bilinear(u, v) for v in frame] for u in frame])
    rhs = backend.array([bilinear(x, u) for u in frame])
    sol = solve(gram, rhs)
    return [backend.complex(sol[2 * k], sol[2 * k + 1]) for k in range(3)]


def _as_exact_complex(z):
    if isinstance(z, ComplexScalar):
        return z
    if isinstance(z, (list, tuple)):
        return ComplexScalar(z[0], z[1])
    return ComplexScalar(z, 0)


def su3_matrix(space: HermitianSpace, rows) -> SU3Matrix:
    """Wrap a 3x3 grid of scalars, complex numbers or [re, im] pairs."""
    if space.ctx.backend.exact:
        A = np.empty((3, 3), dtype=object)
        for j in range(3):
            for k in range(3):
                A[j, k] = _as_exact_complex(rows[j][k])
        return SU3Matrix(A, space)
    grid = [
        [complex(*z) if isinstance(z, (list, tuple)) else complex(z) for z in row]
        for row in rows
    ]
    return SU3Matrix(np.array(grid, dtype=complex), space)


def diagonal(space: HermitianSpace, values: Sequence) -> SU3Matrix:
    zero = 0 if space.ctx.backend.exact else 0j
    rows = [[values[j] if j == k else zero for k in range(3)] for j in range(3)]
    return su3_matrix(space, rows)


def intertwiner(space: HermitianSpace) -> SU3Matrix:
    return su3_matrix(space, INTERTWINER)


def is_special_unitary(
    space: HermitianSpace, A: SU3Matrix, tol: float = EQUALITY_TOL
) -> bool:
    """det A = 1 and A^T H conj(A) = H (exact, or within ``tol``)."""
    M = A.A
    if M.shape != (3, 3):
        return False
    det = det3(M)
    lhs = M.T.dot(space.H).dot(conj_array(M))
    if space.ctx.backend.exact:
        return det == 1 and is_zero_array(lhs - space.H)
    scale = max(1.0, max_abs(M)) ** 2
    return abs(det - 1) <= tol * scale and max_abs(lhs - space.H) <= tol * scale


def aut_to_su3(space: HermitianSpace, t: AutMatrix) -> SU3Matrix:
    """
    Restrict t to L-perp and write it in the basis (a, b, ab).

    Column k of the result holds the L-coordinates of t(v_k).

    Raises:
        NotFixingL: if t moves an element of L
    """
    if not fixes_pointwise(t, space.L):
        raise NotFixingL("the automorphism does not fix L pointwise")
    columns = [coordinates(space, t(v)) for v in space.basis]
    rows = [[columns[k][j] for k in range(3)] for j in range(3)]
    A = su3_matrix(space, rows)
    if not is_special_unitary(space, A, tol=RESIDUAL_TOL):
        raise CertificationFailure("restriction of an automorphism is not in SU(H)")
    return A


def _scale(space: HermitianSpace, alpha, v: Octonion) -> Octonion:
    scalar = space.ctx.backend.scalar
    return scalar(alpha.real) * v + scalar(alpha.imag) * (space.gamma * v)


def su3_to_aut(space: HermitianSpace, A: SU3Matrix) -> AutMatrix:
    """
    The automorphism fixing L pointwise whose restriction matrix is A.

    Images are prescribed on the k-basis {1, i, v_k, i v_k} using
    t(i v) = i t(v), then certified.

    Raises:
        NotSpecialUnitary: if A fails det = 1 or the hermitian condition
        CertificationFailure: if the assembled matrix does not certify
    """
    if not is_special_unitary(space, A):
        raise NotSpecialUnitary("matrix is not in SU(H)", matrix=A.A.tolist())
    ctx = space.ctx
    one, gamma = ctx.one(), space.gamma
    source = [one, gamma]
    images = [one, gamma]
    for k, v in enumerate(space.basis):
        image = ctx.zero()
        for j, u in enumerate(space.basis):
            image = image + _scale(space, A.A[j, k], u)
        source += [v, gamma * v]
        images += [image, gamma * image]
    return from_basis_images(ctx, source, images)


def rho_conjugate_matrix(A: SU3Matrix) -> SU3Matrix:
    """conj(A): the matrix of rho t rho when t has matrix A."""
    return A.conjugate()


def witness(space: HermitianSpace, eigenbasis: np.ndarray = None) -> AutMatrix:
    """
    g = su3_to_aut(B) o rho, with B = U B0 U^T for an eigenbasis U (det U = 1).

    When the restriction of t is diag(1, z, conj(z)) in the basis of ``space``
    (U = I), g commutes with t, g^2 = 1 and g moves gamma.
    """
    if eigenbasis is None:
        B = intertwiner(space)
    else:
        U = np.asarray(eigenbasis, dtype=complex)
        B0 = np.array(INTERTWINER, dtype=complex)
        B = su3_matrix(space, (U @ B0 @ U.T).tolist())
    return compose(su3_to_aut(space, B), space.rho())
