"""
JSON forms of g2kit values and reports.

Every report carries ``schema_version``. Scalars are written as numbers on the
float backend and as "p/q" strings on the exact backend; complex values are
[re, im] pairs. Output is deterministic: keys are sorted and floats are
written with Python's shortest round-trip repr, so identical runs produce
byte-identical files.
"""

__all__ = [
    "dumps",
    "write_report",
    "read_json",
    "plain",
    "scalar_to_json",
    "octonion_to_json",
    "octonion_from_json",
    "context_to_json",
    "context_from_json",
    "aut_to_json",
    "aut_from_json",
    "su3_to_json",
    "su3_from_json",
    "element_from_json",
    "iso_to_json",
    "iso_from_json",
    "classification_to_json",
    "table_to_json",
    "axioms_to_json",
    "derivations_to_json",
    "sample_to_json",
    "rp_to_json",
    "involution_to_json",
    "centralizer_to_json",
    "error_to_json",
]

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from g2kit.automorphism import AutMatrix, certify
from g2kit.constants import DER_DIMENSION, SCHEMA_VERSION
from g2kit.derivations import Derivation
from g2kit.hermitian import (
    HermitianSpace,
    SU3Matrix,
    default_space,
    su3_matrix,
    su3_to_aut,
)
from g2kit.numeric import ComplexScalar, backend_named, solve
from g2kit.octonion import (
    AlgebraContext,
    AxiomReport,
    Octonion,
    subalgebra_from_span,
)
from g2kit.orbits import (
    ClassificationReport,
    InvolutionReport,
    RpReport,
    SampleReport,
    TableReport,
)
from g2kit.skolem_noether import SubalgebraIso


def scalar_to_json(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, ComplexScalar):
        return [str(value.re), str(value.im)]
    if isinstance(value, (np.integer, int)) and not isinstance(value, bool):
        return int(value)
    return float(value)


def plain(value: Any):
    """Convert nested values (fractions, numpy, octonions, ...) to JSON types."""
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, Octonion):
        return octonion_to_json(value)
    if isinstance(value, AutMatrix):
        return aut_to_json(value)
    if isinstance(value, AlgebraContext):
        return context_to_json(value)
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return scalar_to_json(value)


def dumps(obj: Dict) -> str:
    return json.dumps(plain(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_report(path, obj: Dict) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_json(path) -> Dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def context_to_json(ctx: AlgebraContext) -> Dict:
    return {
        "params": [scalar_to_json(c) for c in ctx.params],
        "backend": ctx.backend.name,
    }


def context_from_json(data: Optional[Dict], backend: str = None) -> AlgebraContext:
    """
    Read a context; missing fields fall back to the compact preset.

    Args:
        data (dict): {"params": [c1, c2, c3], "backend": "exact"|"float"} or None
        backend (str): overrides the backend named in ``data``
    """
    data = data or {}
    name = backend or data.get("backend", "float")
    params = data.get("params", [-1, -1, -1])
    return AlgebraContext(tuple(params), backend_named(name))


def octonion_to_json(x: Octonion) -> list:
    return [scalar_to_json(c) for c in x.coords]


def octonion_from_json(data, ctx: AlgebraContext) -> Octonion:
    if len(data) != 8:
        raise ValueError(f"an octonion needs 8 coordinates, got {len(data)}")
    return Octonion(ctx, list(data))


def aut_to_json(t: AutMatrix) -> Dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "context": context_to_json(t.ctx),
        "matrix": [[scalar_to_json(v) for v in row] for row in t.m.tolist()],
        "certified": bool(t.certified),
    }


def aut_from_json(data: Dict, backend: str = None) -> AutMatrix:
    """
    Read an automorphism and certify it.

    Raises:
        NotAutomorphism: if the matrix is not an automorphism
    """
    if "matrix" not in data:
        raise ValueError("automorphism JSON needs a 'matrix' field")
    ctx = context_from_json(data.get("context"), backend)
    return certify(data["matrix"], ctx)


def su3_to_json(A: SU3Matrix) -> list:
    return [[scalar_to_json(z) for z in row] for row in A.A.tolist()]


def su3_from_json(data, space: HermitianSpace) -> SU3Matrix:
    if len(data) != 3 or any(len(row) != 3 for row in data):
        raise ValueError("an SU(3) matrix needs 3 rows of 3 [re, im] entries")
    return su3_matrix(space, data)


def element_from_json(data: Dict, backend: str = None) -> AutMatrix:
    """
    Read an element of G given as an 8x8 "matrix", or as an "su3" matrix
    acting on L-perp of the default space (L = span{1, e1}).

    Raises:
        NotAutomorphism: if the 8x8 matrix is not an automorphism
        NotSpecialUnitary: if the 3x3 matrix is not in SU(3)
    """
    if "matrix" in data or "su3" not in data:
        return aut_from_json(data, backend)
    space = default_space(context_from_json(data.get("context"), backend))
    return su3_to_aut(space, su3_from_json(data["su3"], space))


def iso_to_json(iso: SubalgebraIso) -> Dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "context": context_to_json(iso.source.ctx),
        "source_basis": [octonion_to_json(d) for d in iso.source.basis],
        "target_basis": [octonion_to_json(d) for d in iso.target.basis],
        "map": [[scalar_to_json(v) for v in row] for row in iso.matrix()],
    }


def iso_from_json(data: Dict, backend: str = None) -> SubalgebraIso:
    """
    Read {"source_basis", "target_basis", "map"}; map[i][j] is the coefficient
    of target_basis[i] in the image of source_basis[j].

    Raises:
        InvalidIso: if the described map is not an isomorphism
    """
    ctx = context_from_json(data.get("context"), backend)
    sources = [octonion_from_json(v, ctx) for v in data["source_basis"]]
    targets = [octonion_from_json(v, ctx) for v in data["target_basis"]]
    k = len(sources)
    coef = ctx.backend.array(data["map"])
    if coef.shape != (k, len(targets)) or len(targets) != k:
        raise ValueError(f"map must be {k} x {k}, got shape {coef.shape}")
    images = []
    for j in range(k):
        x = ctx.zero()
        for i in range(k):
            x = x + ctx.backend.scalar(coef[i, j]) * targets[i]
        images.append(x)
    source = subalgebra_from_span(ctx, sources)
    target = subalgebra_from_span(ctx, targets)
    # Images of the orthogonalized source basis, by solving in the given basis.
    S = np.column_stack([s.array() for s in sources])
    gram = S.T.dot(S)
    mapped = []
    for d in source.basis:
        c = solve(gram, S.T.dot(d.array()))
        x = ctx.zero()
        for cj, img in zip(c, images):
            x = x + ctx.backend.scalar(cj) * img
        mapped.append(x)
    return SubalgebraIso(source, target, tuple(mapped))


def _spectrum_to_json(spectrum) -> list:
    return [[float(z.real), float(z.imag)] for z in spectrum]


def classification_to_json(report: ClassificationReport) -> Dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": report.type.tag,
        "spectrum": _spectrum_to_json(report.spectrum),
        "fixed_dim": report.fixed_dim,
        "measured_dim": report.measured_dim,
        "full_dim": report.full_dim,
        "expected_dim": report.type.expected_dim,
        "expected_components": report.type.expected_components,
        "witness": aut_to_json(report.witness)["matrix"] if report.witness else None,
        "ok": report.ok,
    }


def table_to_json(report: TableReport) -> Dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "theta": report.theta,
        "phi": report.phi,
        "rows": [
            {
                "position": r.position,
                "representative": r.expected.representative,
                "centralizer": r.expected.centralizer,
                "spectrum": _spectrum_to_json(r.spectrum),
                "expected_type": r.expected.tag,
                "classified_type": r.classified,
                "measured_dim": r.measured_dim,
                "full_dim": r.full_dim,
                "expected_dim": r.expected.expected_dim,
                "expected_components": r.expected.expected_components,
                "witness": r.witness,
                "ok": r.ok,
            }
            for r in report.rows
        ],
        "dimensions": report.dimensions,
        "ok": report.ok,
    }


def error_to_json(error: Exception) -> Dict:
    """First counterexample of a failed check, as a report."""
    return {
        "schema_version": SCHEMA_VERSION,
        "ok": False,
        "error": type(error).__name__,
        "message": str(error),
        "details": plain(getattr(error, "details", {})),
    }


def axioms_to_json(report: AxiomReport) -> Dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "context": context_to_json(report.ctx),
        "trials": report.trials,
        "seed": report.seed,
        "laws": list(report.laws),
        "checks": report.checks,
        "ok": True,
    }


def derivations_to_json(ctx: AlgebraContext, basis: List[Derivation]) -> Dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "context": context_to_json(ctx),
        "dimension": len(basis),
        "basis": [
            [[scalar_to_json(v) for v in row] for row in d.d.tolist()] for d in basis
        ],
        "ok": len(basis) == DER_DIMENSION,
    }


def sample_to_json(report: SampleReport) -> Dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "trials": report.trials,
        "seed": report.seed,
        "histogram": dict(report.histogram),
        "ambiguous": report.ambiguous,
        "low_fixed_dim": report.low_fixed_dim,
        "mismatched_dim": report.mismatched_dim,
        "strongly_regular_fraction": report.strongly_regular_fraction,
        "ok": report.ok,
    }


def rp_to_json(report: RpReport) -> Dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "p": [scalar_to_json(c) for c in report.p],
        "trials": report.trials,
        "seed": report.seed,
        "commuting": report.commuting,
        "non_commuting": report.non_commuting,
        "both_outcomes": report.both_outcomes,
        "ok": report.ok,
    }


def involution_to_json(report: InvolutionReport) -> Dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "trials": report.trials,
        "seed": report.seed,
        "fixed_dim": report.fixed_dim,
        "involution": report.involution,
        "rp_commute": report.rp_commute,
        "inner_commute": report.inner_commute,
        "product_commute": report.product_commute,
        "rho_commutes": report.rho_commutes,
        "measured_dim": report.measured_dim,
        "full_dim": report.full_dim,
        "ok": report.ok,
    }


def centralizer_to_json(report: ClassificationReport) -> Dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": report.type.tag,
        "measured_dim": report.measured_dim,
        "full_dim": report.full_dim,
        "expected_dim": report.type.expected_dim,
        "expected_components": report.type.expected_components,
        "centralizer": report.type.centralizer,
        "ok": report.measured_dim == report.type.expected_dim,
    }
