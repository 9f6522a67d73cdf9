"""g2kit package."""

__version__ = "0.1.0"

# Command-line entry point
from g2kit.cli import main, run

# Automorphisms and their families
from g2kit.automorphism import (
    AutMatrix,
    QuaternionPoint,
    certify,
    commutes,
    compose,
    fixed_subalgebra,
    inverse,
    make_inner_ext,
    make_rho,
    make_Rp,
)

# Lie algebra of G2
from g2kit.derivations import (
    centralizer_dimension,
    derivation_basis,
    exponentiate,
    sample_automorphism,
)
from g2kit.errors import G2KitError

# The SU(3) bridge
from g2kit.hermitian import aut_to_su3, build_hermitian_space, h_eval, su3_to_aut
from g2kit.numeric import EXACT, FLOAT, eig3_unit, nullspace

# Algebra engine
from g2kit.octonion import (
    AlgebraContext,
    Octonion,
    Subalgebra,
    bilinear,
    cd_multiply,
    conjugate,
    double_subalgebra,
    generate_subalgebra,
    norm,
    orthogonal_complement,
    trace,
)

# Orbit types
from g2kit.orbits import (
    classify,
    representative,
    table_report,
    verify_involution_centralizer,
    verify_rp_centralizer,
)
from g2kit.skolem_noether import conjugating_element, extend_isomorphism

# Define what's available when using "from g2kit import *"
__all__ = [
    # CLI
    "main",
    "run",
    # Algebra
    "AlgebraContext",
    "Octonion",
    "Subalgebra",
    "EXACT",
    "FLOAT",
    "cd_multiply",
    "norm",
    "conjugate",
    "bilinear",
    "trace",
    "generate_subalgebra",
    "orthogonal_complement",
    "double_subalgebra",
    "nullspace",
    "eig3_unit",
    # Automorphisms
    "AutMatrix",
    "QuaternionPoint",
    "certify",
    "fixed_subalgebra",
    "make_Rp",
    "make_inner_ext",
    "make_rho",
    "compose",
    "inverse",
    "commutes",
    # Derivations
    "derivation_basis",
    "centralizer_dimension",
    "exponentiate",
    "sample_automorphism",
    # SU(3)
    "build_hermitian_space",
    "h_eval",
    "aut_to_su3",
    "su3_to_aut",
    # Orbits
    "classify",
    "representative",
    "table_report",
    "verify_rp_centralizer",
    "verify_involution_centralizer",
    # Skolem-Noether
    "extend_isomorphism",
    "conjugating_element",
    # Errors
    "G2KitError",
]
