"""
Orbit types of the compact G2 and the checks behind its centralizer table.

An element t fixes a quadratic subalgebra L pointwise, so it lives in
G(C/L) = SU(3) and is classified by the spectrum of its 3x3 matrix:

    =====================================  =============  ===  =====
    representative                         centralizer    dim  comps
    =====================================  =============  ===  =====
    I                                      G              14   1
    diag(e^-i(t+f), e^it, e^if)            T              2    1
    diag(1, e^it, e^-it)                   T x| Z/2       2    2
    diag(e^-2it, e^it, e^it)               U(2)           4    1
    diag(1, -1, -1)                        U(2) x| Z/2    4    2
    diag(w, w, w), w^3 = 1, w != 1         SU(3)          8    1
    =====================================  =============  ===  =====

The dim column is the centralizer of t among automorphisms that preserve L,
measured in the derivations vanishing on L (all of Der(C) for the identity).
The full centralizer in G is reported alongside as ``full_dim``; it is larger
for the T x| Z/2 row (4, a U(2)) and the involution (6, an SO(4)). The extra
component of the two semidirect rows is exhibited by an explicit element
g = su3_to_aut(B) o rho.
"""

import cmath
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Literal, NamedTuple, Optional, Tuple

import numpy as np

from g2kit.automorphism import (
    AutMatrix,
    QuaternionPoint,
    commutes,
    compose,
    fixed_subalgebra,
    identity,
    in_subalgebra,
    involution_of,
    is_involution,
    make_inner_ext,
    make_Rp,
    standing_choices,
)
from g2kit.constants import (
    AMBIGUOUS_BAND,
    DEFAULT_INVOLUTION_TRIALS,
    DEFAULT_PHI,
    DEFAULT_SAMPLE_TRIALS,
    DEFAULT_THETA,
    DEFAULT_VERIFY_TRIALS,
    GENERIC_FRACTION,
    RESIDUAL_TOL,
    SPECTRUM_TOL,
)
from g2kit.derivations import centralizer_dimension, sample_automorphism
from g2kit.errors import AmbiguousSpectrum, Disagreement, NormNotOne
from g2kit.hermitian import (
    HermitianSpace,
    SU3Matrix,
    aut_to_su3,
    default_space,
    diagonal,
    positioned_space,
    su3_to_aut,
    witness,
)
from g2kit.numeric import EXACT, eig3_unit, nullspace
from g2kit.octonion import (
    AlgebraContext,
    Octonion,
    Subalgebra,
    generate_subalgebra,
    inverse,
    norm,
)
from g2kit.rng import XorShift64Star, derive_seed

__all__ = [
    "OrbitTag",
    "OrbitType",
    "ORBIT_TYPES",
    "TABLE_ORDER",
    "ClassificationReport",
    "TableRow",
    "TableReport",
    "RpReport",
    "InvolutionReport",
    "SampleReport",
    "classify_spectrum",
    "classify",
    "representative",
    "representative_matrix",
    "table_report",
    "render_table",
    "verify_rp_centralizer",
    "verify_involution_centralizer",
    "sample_report",
    "random_unit_quaternion",
]

logger = logging.getLogger(__name__)

OrbitTag = Literal[
    "Identity", "SU3Type", "U2Type", "U2Ext", "TorusExt", "StronglyRegular"
]


class OrbitType(NamedTuple):
    tag: OrbitTag
    expected_dim: int
    expected_components: int
    representative: str
    centralizer: str


ORBIT_TYPES: Dict[str, OrbitType] = {
    t.tag: t
    for t in (
        OrbitType("Identity", 14, 1, "I", "G"),
        OrbitType("StronglyRegular", 2, 1, "diag(e^-i(t+f), e^it, e^if)", "T"),
        OrbitType("TorusExt", 2, 2, "diag(1, e^it, e^-it)", "T x| Z/2"),
        OrbitType("U2Type", 4, 1, "diag(e^-2it, e^it, e^it)", "U(2)"),
        OrbitType("U2Ext", 4, 2, "diag(1, -1, -1)", "U(2) x| Z/2"),
        OrbitType("SU3Type", 8, 1, "diag(w, w, w)", "SU(3)"),
    )
}

TABLE_ORDER: Tuple[str, ...] = tuple(ORBIT_TYPES)
WITNESS_TAGS = ("TorusExt", "U2Ext")
FIXED_DIMS = {"Identity": 8, "U2Ext": 4, "TorusExt": 4}


@dataclass(frozen=True)
class ClassificationReport:
    type: OrbitType
    spectrum: Tuple[complex, complex, complex]
    fixed_dim: int
    measured_dim: int
    full_dim: int
    witness: Optional[AutMatrix] = None

    @property
    def ok(self) -> bool:
        expected_fixed = FIXED_DIMS.get(self.type.tag, 2)
        return (
            self.measured_dim == self.type.expected_dim
            and self.fixed_dim == expected_fixed
            and (self.witness is not None) == (self.type.tag in WITNESS_TAGS)
        )


def _compare(x: complex, y: complex, tol: float, band: float) -> bool:
    distance = abs(x - y)
    if distance <= tol:
        return True
    if distance < band:
        raise AmbiguousSpectrum(
            f"eigenvalues {x:.12g} and {y:.12g} are {distance:.3g} apart, "
            f"inside the ambiguity band ({tol:g}, {band:g})",
            distance=distance,
        )
    return False


def classify_spectrum(
    spectrum, tol: float = SPECTRUM_TOL, band: float = AMBIGUOUS_BAND
) -> str:
    """
    Orbit tag of an SU(3) spectrum.

    Raises:
        AmbiguousSpectrum: if a decisive distance falls between tol and band
        Disagreement: if the multiset violates det = 1
    """
    band = max(band, tol)
    l1, l2, l3 = spectrum
    e12 = _compare(l1, l2, tol, band)
    e13 = _compare(l1, l3, tol, band)
    e23 = _compare(l2, l3, tol, band)
    has_one = [_compare(lam, 1, tol, band) for lam in spectrum]
    equal_pairs = e12 + e13 + e23
    if equal_pairs == 3:
        if has_one[0]:
            return "Identity"
        mean = (l1 + l2 + l3) / 3
        if abs(mean**3 - 1) > band:
            raise Disagreement(f"triple eigenvalue {mean} is not a cube root of 1")
        return "SU3Type"
    if equal_pairs == 2:
        raise AmbiguousSpectrum(
            "eigenvalue equality is not transitive", spectrum=spectrum
        )
    if equal_pairs == 1:
        if e23:
            alpha, beta = l1, l2
        elif e13:
            alpha, beta = l2, l1
        else:
            alpha, beta = l3, l1
        alpha_one = _compare(alpha, 1, tol, band)
        if alpha_one and _compare(beta, -1, tol, band):
            return "U2Ext"
        if any(has_one):
            raise Disagreement(f"spectrum {spectrum} violates det = 1")
        return "U2Type"
    return "TorusExt" if any(has_one) else "StronglyRegular"


def _eigenbasis(A: np.ndarray, spectrum, tol: float) -> np.ndarray:
    # Columns: an eigenvector for 1, then the remaining eigenspace(s); unitary
    # with det 1.
    ident = np.eye(3, dtype=complex)
    others = [lam for lam in spectrum if abs(lam - 1) > tol]
    groups = [1.0 + 0j]
    for lam in others:
        if all(abs(lam - g) > tol for g in groups):
            groups.append(lam)
    columns = []
    for lam in groups:
        columns += nullspace(A - lam * ident, tol)
    U, _ = np.linalg.qr(np.column_stack(columns[:3]))
    U[:, 0] = U[:, 0] / np.linalg.det(U)
    return U


def _attach_witness(
    space: HermitianSpace, A: SU3Matrix, t: AutMatrix, spectrum, tol: float
) -> AutMatrix:
    U = _eigenbasis(A.to_complex(), spectrum, tol)
    g = witness(space, U)
    if not commutes(g, t, RESIDUAL_TOL):
        raise Disagreement("the disconnecting element does not commute with t")
    if g(space.gamma).isclose(space.gamma):
        raise Disagreement("the disconnecting element fixes L")
    return g


def classify(
    t: AutMatrix,
    tol: float = SPECTRUM_TOL,
    band: float = AMBIGUOUS_BAND,
    with_witness: bool = True,
) -> ClassificationReport:
    """
    Classify a compact-G2 element into one of the six orbit types.

    The fixed subalgebra F of t is computed; if it is everything, t = I.
    Otherwise the first orthogonalized trace-zero vector of F spans L, t is
    written as a matrix A in SU(L-perp, h), and the spectrum of A decides the
    type. measured_dim is the centralizer dimension among derivations vanishing
    on L; full_dim is the dimension in all of Der(C). Exact input is converted
    to floats first.

    Raises:
        AmbiguousSpectrum: if the spectrum sits in the no-man's-land
    """
    t = t.to_float()
    if not t.ctx.is_compact:
        raise ValueError("classification is only defined for the compact preset")
    F = fixed_subalgebra(t)
    if F.dim == 8:
        full = centralizer_dimension(t)
        identity_type = ORBIT_TYPES["Identity"]
        return ClassificationReport(identity_type, (1 + 0j,) * 3, 8, full, full)
    L = generate_subalgebra([F.basis[1]])
    space = positioned_space(L)
    A = aut_to_su3(space, t)
    spectrum = eig3_unit(A.A)
    tag = classify_spectrum(spectrum, tol, band)
    if tag == "Identity":
        raise Disagreement(
            "spectrum is trivial but t moves a vector", fixed_dim=F.dim
        )
    logger.debug("spectrum %s classified %s (fixed dim %d)", spectrum, tag, F.dim)
    g = None
    if with_witness and tag in WITNESS_TAGS:
        g = _attach_witness(space, A, t, spectrum, tol)
    return ClassificationReport(
        ORBIT_TYPES[tag],
        tuple(spectrum),
        F.dim,
        centralizer_dimension(t, within=L),
        centralizer_dimension(t),
        g,
    )


def representative_matrix(
    tag: str,
    theta: float = DEFAULT_THETA,
    phi: float = DEFAULT_PHI,
    space: HermitianSpace = None,
) -> SU3Matrix:
    """The diagonal SU(3) matrix of the table row for ``tag``."""
    space = space or default_space()
    e = cmath.exp
    values = {
        "Identity": (1, 1, 1),
        "StronglyRegular": (e(-1j * (theta + phi)), e(1j * theta), e(1j * phi)),
        "TorusExt": (1, e(1j * theta), e(-1j * theta)),
        "U2Type": (e(-2j * theta), e(1j * theta), e(1j * theta)),
        "U2Ext": (1, -1, -1),
        "SU3Type": (e(2j * cmath.pi / 3),) * 3,
    }
    if tag not in values:
        raise ValueError(f"unknown orbit type {tag!r}; expected one of {TABLE_ORDER}")
    return diagonal(space, values[tag])


def representative(
    tag: str,
    theta: float = DEFAULT_THETA,
    phi: float = DEFAULT_PHI,
    space: HermitianSpace = None,
) -> AutMatrix:
    """The table's representative for ``tag``, realized over the default space."""
    space = space or default_space()
    if tag == "Identity":
        return identity(space.ctx)
    return su3_to_aut(space, representative_matrix(tag, theta, phi, space))


@dataclass(frozen=True)
class TableRow:
    position: int
    expected: OrbitType
    spectrum: Tuple[complex, ...]
    classified: str
    measured_dim: int
    full_dim: int
    witness: bool

    @property
    def ok(self) -> bool:
        return (
            self.classified == self.expected.tag
            and self.measured_dim == self.expected.expected_dim
            and self.witness == (self.expected.tag in WITNESS_TAGS)
        )


@dataclass(frozen=True)
class TableReport:
    theta: float
    phi: float
    rows: Tuple[TableRow, ...]

    @property
    def ok(self) -> bool:
        return len(self.rows) == len(ORBIT_TYPES) and all(r.ok for r in self.rows)

    @property
    def dimensions(self) -> List[int]:
        return [r.measured_dim for r in self.rows]


def table_report(
    theta: float = DEFAULT_THETA, phi: float = DEFAULT_PHI, tol: float = SPECTRUM_TOL
) -> TableReport:
    """Classify and measure every representative, in table order."""
    space = default_space()
    rows = []
    for position, tag in enumerate(TABLE_ORDER, start=1):
        t = representative(tag, theta, phi, space)
        report = classify(t, tol)
        rows.append(
            TableRow(
                position,
                ORBIT_TYPES[tag],
                report.spectrum,
                report.type.tag,
                report.measured_dim,
                report.full_dim,
                report.witness is not None,
            )
        )
    return TableReport(theta, phi, tuple(rows))


def render_table(report: TableReport) -> str:
    header = (
        "#",
        "representative",
        "centralizer",
        "dim",
        "comps",
        "measured",
        "full",
        "type",
        "witness",
    )
    lines = []
    body = [
        (
            str(r.position),
            r.expected.representative,
            r.expected.centralizer,
            str(r.expected.expected_dim),
            str(r.expected.expected_components),
            str(r.measured_dim),
            str(r.full_dim),
            r.classified,
            "yes" if r.witness else "-",
        )
        for r in report.rows
    ]
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    for row in [header] + body:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _random_quaternion(Q: Subalgebra, rng: XorShift64Star) -> Octonion:
    while True:
        x = Q.ctx.zero()
        for q in Q.basis:
            x = x + rng.rational() * q
        if not x.is_zero():
            return x


def random_unit_quaternion(Q: Subalgebra, rng: XorShift64Star) -> Octonion:
    """u^2 / N(u) for a random rational u in Q: exactly of norm 1."""
    u = _random_quaternion(Q, rng)
    return (u * u) / norm(u)


def _random_field_element(L: Subalgebra, rng: XorShift64Star) -> Octonion:
    while True:
        x = L.ctx.zero()
        for v in L.basis:
            x = x + rng.rational() * v
        if not x.is_zero():
            return x


@dataclass(frozen=True)
class RpReport:
    p: Tuple
    trials: int
    seed: int
    commuting: int
    non_commuting: int

    @property
    def both_outcomes(self) -> bool:
        return self.commuting > 0 and self.non_commuting > 0

    @property
    def ok(self) -> bool:
        return self.both_outcomes or self.trials < 50


def verify_rp_centralizer(
    p: QuaternionPoint,
    trials: int = DEFAULT_VERIFY_TRIALS,
    seed: int = 0,
    b: Octonion = None,
) -> RpReport:
    """
    Check Z_G(R_p) = {R_p1 I_c1 : p1 c1 in k(p)} on random (p1, c1).

    Half of the trials (by a coin from the generator) take c1 = p1^-1 l with
    l in k(p), so both outcomes occur; the rest take c1 at random in Q.

    Raises:
        NormNotOne: if N(p) != 1
        Disagreement: on the first trial where commutation and membership differ
    """
    Q = p.host
    ctx = Q.ctx
    b = b if b is not None else standing_choices(ctx).b
    if not ctx.backend.is_zero(norm(p.value) - 1):
        raise NormNotOne(f"N(p) = {norm(p.value)}, expected 1")
    L = generate_subalgebra([p.value])
    if L.dim != 2:
        raise ValueError("p must not be a scalar multiple of 1")
    t = make_Rp(Q, b, p)
    rng = XorShift64Star(seed)
    commuting = 0
    for trial in range(trials):
        p1 = random_unit_quaternion(Q, rng)
        if rng.randint(0, 1):
            c1 = inverse(p1) * _random_field_element(L, rng)
        else:
            c1 = _random_quaternion(Q, rng)
        g = compose(
            make_Rp(Q, b, QuaternionPoint(p1, Q)),
            make_inner_ext(Q, b, QuaternionPoint(c1, Q)),
        )
        member = in_subalgebra(p1 * c1, L)
        commute = commutes(g, t)
        if member != commute:
            raise Disagreement(
                f"trial {trial}: commutes={commute} but p1 c1 in L is {member}",
                trial=trial,
                p1=p1.coords,
                c1=c1.coords,
            )
        commuting += commute
    logger.debug("R_p centralizer: %d of %d trials commute", commuting, trials)
    return RpReport(p.value.coords, trials, seed, commuting, trials - commuting)


@dataclass(frozen=True)
class InvolutionReport:
    trials: int
    seed: int
    fixed_dim: int
    involution: bool
    rp_commute: int
    inner_commute: int
    product_commute: int
    rho_commutes: bool
    measured_dim: int
    full_dim: int

    @property
    def ok(self) -> bool:
        return (
            self.fixed_dim == 4
            and self.involution
            and self.rp_commute == self.trials
            and self.inner_commute == self.trials
            and self.product_commute == self.trials
            and self.rho_commutes
            and self.measured_dim == 4
            and self.full_dim == 6
        )


def verify_involution_centralizer(
    trials: int = DEFAULT_INVOLUTION_TRIALS, seed: int = 0, ctx: AlgebraContext = None
) -> InvolutionReport:
    """
    Check Z_G(t) = G(C, Q) for the involution t = R_-1 over Q.

    Sampled R_p1 and lifted inner automorphisms all commute with t, rho
    commutes with the diag(1, -1, -1) representative, and the centralizer has
    dimension 4 among derivations vanishing on L (6 in all of Der(C)).

    Raises:
        Disagreement: on the first sampled element that fails to commute
    """
    ctx = ctx or AlgebraContext.compact(EXACT)
    choice = standing_choices(ctx)
    Q, b = choice.Q, choice.b
    t = involution_of(Q, b)
    rng = XorShift64Star(seed)
    counts = {"R_p1": 0, "inner extension": 0, "product": 0}
    for trial in range(trials):
        r = make_Rp(Q, b, QuaternionPoint(random_unit_quaternion(Q, rng), Q))
        i = make_inner_ext(Q, b, QuaternionPoint(_random_quaternion(Q, rng), Q))
        for name, g in (("R_p1", r), ("inner extension", i), ("product", r @ i)):
            if not commutes(g, t):
                raise Disagreement(
                    f"trial {trial}: {name} does not commute with R_-1", trial=trial
                )
            counts[name] += 1
    logger.debug("involution centralizer counts %s", counts)
    space = default_space()
    rho_commutes = commutes(space.rho(), representative("U2Ext", space=space))
    return InvolutionReport(
        trials,
        seed,
        fixed_subalgebra(t).dim,
        is_involution(t),
        counts["R_p1"],
        counts["inner extension"],
        counts["product"],
        rho_commutes,
        centralizer_dimension(t, within=choice.L),
        centralizer_dimension(t),
    )


@dataclass(frozen=True)
class SampleReport:
    trials: int
    seed: int
    histogram: Dict[str, int] = field(default_factory=dict)
    ambiguous: int = 0
    low_fixed_dim: int = 0
    mismatched_dim: int = 0

    @property
    def strongly_regular_fraction(self) -> float:
        return self.histogram.get("StronglyRegular", 0) / max(1, self.trials)

    @property
    def ok(self) -> bool:
        return (
            self.strongly_regular_fraction >= GENERIC_FRACTION
            and self.low_fixed_dim == 0
            and self.mismatched_dim == 0
        )


def sample_report(
    trials: int = DEFAULT_SAMPLE_TRIALS, seed: int = 0, tol: float = SPECTRUM_TOL
) -> SampleReport:
    """
    Classify ``trials`` sampled elements; sample i uses derive_seed(seed, i).

    Ambiguous spectra are counted, not raised.
    """
    histogram = {tag: 0 for tag in TABLE_ORDER}
    ambiguous = low_fixed = mismatched = 0
    for i in range(trials):
        t = sample_automorphism(derive_seed(seed, i))
        try:
            report = classify(t, tol, with_witness=False)
        except AmbiguousSpectrum:
            ambiguous += 1
            continue
        histogram[report.type.tag] += 1
        low_fixed += report.fixed_dim < 2
        mismatched += report.measured_dim != report.type.expected_dim
    return SampleReport(trials, seed, histogram, ambiguous, low_fixed, mismatched)
