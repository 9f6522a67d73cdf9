"""
Skolem-Noether for composition algebras, made constructive.

Every isomorphism between composition subalgebras D -> D' extends to an
automorphism of C: pick a in D-perp and a' in D'-perp of the same norm, extend
by x + ya -> phi(x) + phi(y)a' and repeat on the doubled algebras until they
fill C. Consequences implemented here:

- ``conjugating_element``: an automorphism carrying D onto D', which
  conjugates G(C/D) onto G(C/D')
- ``verify_centralizer_conjugacy``: Z_G(R_p) and Z_G(R_p') are conjugate for
  elements fixing quaternion subalgebras
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from g2kit.automorphism import (
    AutMatrix,
    QuaternionPoint,
    commutes,
    compose,
    fixes_pointwise,
    from_basis_images,
    inverse,
    make_inner_ext,
    make_Rp,
    rp_parameter,
)
from g2kit.constants import RESIDUAL_TOL
from g2kit.derivations import sample_fixing
from g2kit.errors import (
    Disagreement,
    InvalidIso,
    NormNotRepresented,
    NotIsomorphic,
    NotOrthogonal,
    UnsupportedBackend,
)
from g2kit.numeric import FLOAT, rational_sqrt
from g2kit.octonion import (
    Octonion,
    Subalgebra,
    bilinear,
    double_subalgebra,
    generate_subalgebra,
    norm,
    orthogonal_complement,
)
from g2kit.octonion import inverse as octonion_inverse
from g2kit.rng import XorShift64Star, derive_seed

__all__ = [
    "SubalgebraIso",
    "extend_isomorphism",
    "matched_iso",
    "conjugating_element",
    "verify_conjugation_contract",
    "verify_centralizer_conjugacy",
    "ConjugationReport",
]

logger = logging.getLogger(__name__)


def _coefficients(D: Subalgebra, x: Octonion) -> list:
    return [bilinear(x, d) / norm(d) for d in D.basis]


@dataclass(frozen=True, eq=False)
class SubalgebraIso:
    """
    A linear map D -> D' given by the images of D's basis vectors.

    Construction checks that the map is an algebra isomorphism.
    """

    source: Subalgebra
    target: Subalgebra
    images: Tuple[Octonion, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        self.validate()

    def __call__(self, x: Octonion) -> Octonion:
        out = self.target.ctx.zero()
        for c, v in zip(_coefficients(self.source, x), self.images):
            out = out + c * v
        return out

    def matrix(self) -> list:
        """Column j: coordinates of the image of source.basis[j] in target.basis."""
        cols = [_coefficients(self.target, v) for v in self.images]
        k = len(cols)
        return [[cols[j][i] for j in range(k)] for i in range(k)]

    def validate(self, tol: float = RESIDUAL_TOL):
        D, T = self.source, self.target
        if D.ctx != T.ctx:
            raise InvalidIso("source and target live in different contexts")
        if D.dim != T.dim or len(self.images) != D.dim:
            raise InvalidIso(
                f"dimension mismatch: {D.dim} -> {T.dim}, {len(self.images)} images"
            )
        backend = D.ctx.backend
        for v in self.images:
            if not T.contains(v, tol):
                raise InvalidIso(f"image {v!r} is not in the target")
        if not self(D.ctx.one()).isclose(D.ctx.one(), tol):
            raise InvalidIso("the map does not send 1 to 1")
        for i, x in enumerate(D.basis):
            for j, y in enumerate(D.basis):
                if not backend.is_zero(
                    bilinear(self.images[i], self.images[j]) - bilinear(x, y), tol
                ):
                    raise InvalidIso(f"the map changes the form on ({i}, {j})")
                if not self(x * y).isclose(self.images[i] * self.images[j], tol):
                    raise InvalidIso(f"the map is not multiplicative on ({i}, {j})")


def _matching_vector(T: Subalgebra, target_norm) -> Octonion:
    backend = T.ctx.backend
    complement = orthogonal_complement(T)
    if not backend.exact:
        v = complement[0]
        return v * math.sqrt(target_norm / norm(v))
    for v in complement:
        r = rational_sqrt(target_norm / norm(v))
        if r is not None:
            return r * v
    raise NormNotRepresented(
        f"no rational multiple of a complement vector has norm {target_norm}",
        norm=str(target_norm),
    )


def extend_isomorphism(iso: SubalgebraIso) -> AutMatrix:
    """
    Extend an isomorphism of composition subalgebras to an automorphism of C.

    Each step doubles source and target with the first orthogonalized
    complement vector a and a target complement vector a' with N(a') = N(a).

    Raises:
        NormNotRepresented: exact backend, no rational a' of the right norm
        InvalidIso: if ``iso`` is not an isomorphism
    """
    D, T = iso.source, iso.target
    source, images = list(D.basis), list(iso.images)
    while D.dim < 8:
        a = orthogonal_complement(D)[0]
        a_prime = _matching_vector(T, norm(a))
        if not T.is_orthogonal_to(a_prime):
            raise NotOrthogonal("doubling element of the target is not orthogonal")
        source = source + [s * a for s in source]
        images = images + [v * a_prime for v in images]
        D = double_subalgebra(D, a)
        T = double_subalgebra(T, a_prime)
        logger.debug("doubled to dimension %d", D.dim)
    return from_basis_images(D.ctx, source, images)


def _doubling_generators(D: Subalgebra) -> List[Octonion]:
    ctx = D.ctx
    cur = Subalgebra(ctx, (ctx.one(),))
    gens = []
    while cur.dim < D.dim:
        for d in D.basis:
            w = cur.residual(d)
            if not w.is_zero():
                break
        gens.append(w)
        cur = double_subalgebra(cur, w)
    return gens


def _doubling_frame(ctx, gens: Sequence[Octonion]) -> List[Octonion]:
    frame = [ctx.one()]
    for g in gens:
        frame = frame + [f * g for f in frame]
    return frame


def _positive(x: Octonion) -> Octonion:
    backend = x.ctx.backend
    for c in x.coords:
        if not backend.is_zero(c):
            return x if c > 0 else -x
    return x


def matched_iso(D: Subalgebra, D_prime: Subalgebra) -> SubalgebraIso:
    """
    Isomorphism D -> D' matching orthogonal doubling generators of equal norm.

    Each target generator is rescaled to the source norm and signed so that
    its first nonzero coordinate is positive.

    Raises:
        NotIsomorphic: if dimensions differ or a norm ratio is not a square
    """
    if D.dim != D_prime.dim or D.ctx != D_prime.ctx:
        raise NotIsomorphic(f"cannot match dimension {D.dim} with {D_prime.dim}")
    backend = D.ctx.backend
    gens = _doubling_generators(D)
    matched = []
    for g, h in zip(gens, _doubling_generators(D_prime)):
        ratio = norm(g) / norm(h)
        if ratio <= 0:
            raise NotIsomorphic("generator norms have different signs")
        r = math.sqrt(ratio) if not backend.exact else rational_sqrt(ratio)
        if r is None:
            raise NotIsomorphic(f"norm ratio {ratio} is not a rational square")
        matched.append(_positive(r * h))
    source_frame = _doubling_frame(D.ctx, gens)
    target_frame = _doubling_frame(D.ctx, matched)
    images = []
    for d in D.basis:
        x = D.ctx.zero()
        for s, v in zip(source_frame, target_frame):
            x = x + (bilinear(d, s) / norm(s)) * v
        images.append(x)
    return SubalgebraIso(D, D_prime, tuple(images))


def _carries_onto(phi: AutMatrix, D: Subalgebra, D_prime: Subalgebra) -> bool:
    return all(D_prime.contains(phi(d)) for d in D.basis)


def conjugating_element(D: Subalgebra, D_prime: Subalgebra) -> AutMatrix:
    """An automorphism phi with phi(D) = D', so phi G(C/D) phi^-1 = G(C/D')."""
    phi = extend_isomorphism(matched_iso(D, D_prime))
    if not _carries_onto(phi, D, D_prime):
        raise Disagreement("conjugating element does not carry D onto D'")
    return phi


@dataclass(frozen=True)
class ConjugationReport:
    samples: int
    seed: int
    passed: int

    @property
    def ok(self) -> bool:
        return self.passed == self.samples


def verify_conjugation_contract(
    D: Subalgebra,
    D_prime: Subalgebra,
    phi: AutMatrix = None,
    samples: int = 20,
    seed: int = 0,
) -> ConjugationReport:
    """
    For sampled t fixing D pointwise, phi t phi^-1 fixes D' pointwise.

    Runs on the float backend.

    Raises:
        Disagreement: on the first sample that breaks the contract
    """
    phi = (phi or conjugating_element(D, D_prime)).to_float()
    target = D_prime.with_backend(FLOAT) if D_prime.ctx.backend.exact else D_prime
    phi_inv = inverse(phi)
    for i in range(samples):
        t = sample_fixing(D, derive_seed(seed, i))
        conj = compose(compose(phi, t), phi_inv)
        if not fixes_pointwise(conj, target):
            raise Disagreement(f"sample {i}: phi t phi^-1 moves D'", sample=i)
    return ConjugationReport(samples, seed, samples)


def _unit_imaginary(x: Octonion) -> Octonion:
    im = x - x.ctx.one() * x.coords[0]
    return im / math.sqrt(norm(im))


def _rotation(Q: Subalgebra, u: Octonion, v: Octonion) -> Octonion:
    # c u c^-1 = v for unit imaginaries u, v of Q.
    c = Q.ctx.one() - v * u
    if not c.is_zero():
        return c
    for w in Q.basis[1:]:
        w = w - (bilinear(w, u) / norm(u)) * u
        if not w.is_zero():
            return w
    raise Disagreement("no rotation found inside Q")


def _random_unit(Q: Subalgebra, rng: XorShift64Star) -> Octonion:
    x = Q.ctx.zero()
    for q in Q.basis:
        x = x + rng.uniform(-1.0, 1.0) * q
    return x / math.sqrt(norm(x))


def verify_centralizer_conjugacy(
    p: QuaternionPoint,
    b: Octonion,
    p_prime: QuaternionPoint,
    b_prime: Octonion,
    samples: int = 20,
    seed: int = 0,
) -> ConjugationReport:
    """
    Check that Z_G(R_p) over (Q, b) is conjugate to Z_G(R_p') over (Q', b').

    Psi = I_c o Phi, where Phi carries Q' onto Q and the lifted inner
    automorphism I_c turns k(q) onto k(p) for Phi R_p' Phi^-1 = R_q. Sampled
    members z = R_p1 I_c1 of Z_G(R_p) (p1 c1 in k(p)) are pulled back by Psi
    and must commute with R_p'. Float backend only.

    Raises:
        UnsupportedBackend: for exact input
        Disagreement: on the first sample that fails
    """
    Q, Q_prime = p.host, p_prime.host
    if Q.ctx.backend.exact:
        raise UnsupportedBackend("centralizer conjugacy runs on the float backend")
    t = make_Rp(Q, b, p)
    t_prime = make_Rp(Q_prime, b_prime, p_prime)
    Phi = conjugating_element(Q_prime, Q)
    conjugated = compose(compose(Phi, t_prime), inverse(Phi))
    q = rp_parameter(conjugated, Q, b).value
    c = _rotation(Q, _unit_imaginary(q), _unit_imaginary(p.value))
    Psi = compose(make_inner_ext(Q, b, QuaternionPoint(c, Q)), Phi)
    Psi_inv = inverse(Psi)
    L = generate_subalgebra([p.value])
    rng = XorShift64Star(seed)
    for i in range(samples):
        p1 = _random_unit(Q, rng)
        ell = _random_unit(L, rng)
        c1 = octonion_inverse(p1) * ell
        z = compose(
            make_Rp(Q, b, QuaternionPoint(p1, Q)),
            make_inner_ext(Q, b, QuaternionPoint(c1, Q)),
        )
        if not commutes(z, t):
            raise Disagreement(f"sample {i} is not in the centralizer of R_p", sample=i)
        pulled = compose(compose(Psi_inv, z), Psi)
        if not commutes(pulled, t_prime):
            raise Disagreement(
                f"sample {i}: the conjugated element does not commute with R_p'",
                sample=i,
            )
    return ConjugationReport(samples, seed, samples)
