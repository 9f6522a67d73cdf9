"""
Command-line interface for the g2kit package.

This module exposes the verification suites and the classifier as
subcommands of ``g2kit``:
- axioms: composition-algebra laws on random triples
- derivations: the Leibniz nullspace and its dimension
- classify / centralizer: orbit type and centralizer dimension of an element
- table: the six orbit types with measured centralizer dimensions
- sample: classification histogram of pseudo-random elements
- extend-iso: Skolem-Noether extension of a subalgebra isomorphism
- verify rp|involution: the centralizer lemmas for elements fixing Q
- representative: the table representative of an orbit type

Reports are JSON. Without ``--out`` the report goes to stdout; with it the
report is written to the file and a one-line summary is printed. Exit status
is 0 when every check passes, 1 on a failed check (the first counterexample
is the report) and 2 on a usage error.
"""

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence, Tuple

from dotenv import load_dotenv

from g2kit.automorphism import QuaternionPoint, standing_choices
from g2kit.constants import (
    DEFAULT_AXIOM_TRIALS,
    DEFAULT_INVOLUTION_TRIALS,
    DEFAULT_PHI,
    DEFAULT_RP_POINT,
    DEFAULT_SAMPLE_TRIALS,
    DEFAULT_SEED,
    DEFAULT_THETA,
    DEFAULT_VERIFY_TRIALS,
    SPECTRUM_TOL,
    TOLERANCE_ENV_VAR,
)
from g2kit.derivations import derivation_basis
from g2kit.errors import G2KitError
from g2kit.formats import (
    aut_to_json,
    axioms_to_json,
    centralizer_to_json,
    classification_to_json,
    derivations_to_json,
    dumps,
    element_from_json,
    error_to_json,
    involution_to_json,
    iso_from_json,
    iso_to_json,
    read_json,
    rp_to_json,
    sample_to_json,
    su3_to_json,
    table_to_json,
    write_report,
)
from g2kit.numeric import backend_named
from g2kit.octonion import AlgebraContext, verify_axioms
from g2kit.orbits import (
    TABLE_ORDER,
    classify,
    render_table,
    representative,
    representative_matrix,
    sample_report,
    table_report,
    verify_involution_centralizer,
    verify_rp_centralizer,
)
from g2kit.skolem_noether import extend_isomorphism

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad flags, environment or input files (exit status 2)."""


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs, resolved from flags and environment."""

    command: str
    backend: Optional[str] = None
    seed: int = DEFAULT_SEED
    trials: Optional[int] = None
    input: Optional[Path] = None
    out: Optional[Path] = None
    theta: float = DEFAULT_THETA
    phi: float = DEFAULT_PHI
    p: Tuple[str, ...] = DEFAULT_RP_POINT
    tol: float = SPECTRUM_TOL
    suite: Optional[str] = None
    orbit_type: Optional[str] = None
    verbose: bool = False

    def context(self) -> AlgebraContext:
        return AlgebraContext.compact(backend_named(self.backend or "float"))

    def trials_or(self, default: int) -> int:
        return self.trials if self.trials is not None else default


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a count >= 1, got {value}")
    return value


def seed_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer seed")
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def tolerance_from_env(environ: Dict[str, str]) -> float:
    """
    Spectrum tolerance, overridden by the G2KIT_TOLERANCE variable.

    Raises:
        UsageError: if the variable is set but not a positive number
    """
    raw = environ.get(TOLERANCE_ENV_VAR)
    if raw is None or raw.strip() == "":
        return SPECTRUM_TOL
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"{TOLERANCE_ENV_VAR}={raw!r} is not a number")
    if not value > 0:
        raise UsageError(f"{TOLERANCE_ENV_VAR} must be positive, got {raw!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--backend",
        choices=["exact", "float"],
        default=None,
        help="Scalar backend (default: float, or the backend of the input file)",
    )
    common.add_argument(
        "--seed",
        type=seed_int,
        default=DEFAULT_SEED,
        help=f"Seed of the xorshift64* generator (default: {DEFAULT_SEED})",
    )
    common.add_argument(
        "-n", "--trials", type=positive_int, default=None, help="Number of trials"
    )
    common.add_argument("--out", type=Path, default=None, help="Write the report here")
    common.add_argument(
        "--theta",
        type=float,
        default=DEFAULT_THETA,
        help="Angle theta of the table representatives (default: 2pi/5)",
    )
    common.add_argument(
        "--phi",
        type=float,
        default=DEFAULT_PHI,
        help="Angle phi of the strongly regular representative (default: 2pi/7)",
    )
    common.add_argument(
        "--verbose", action="store_true", help="Log debug output to stderr"
    )

    parser = argparse.ArgumentParser(
        prog="g2kit",
        description="Compact G2 as automorphisms of the real octonions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    axioms = sub.add_parser(
        "axioms", parents=[common], help="Check the composition-algebra laws"
    )
    axioms.add_argument(
        "--exact", action="store_true", help="Use exact rational arithmetic"
    )
    sub.add_parser(
        "derivations", parents=[common], help="Compute a basis of Der(C)"
    )
    for name, text in (
        ("classify", "Classify an automorphism read from JSON"),
        ("centralizer", "Measure the centralizer dimension of an automorphism"),
        ("extend-iso", "Extend a subalgebra isomorphism read from JSON"),
    ):
        cmd = sub.add_parser(name, parents=[common], help=text)
        cmd.add_argument("input", type=Path, help="Path to the input JSON")
    sub.add_parser("table", parents=[common], help="Reproduce the orbit-type table")
    sub.add_parser(
        "sample", parents=[common], help="Classify pseudo-random automorphisms"
    )
    verify = sub.add_parser(
        "verify", parents=[common], help="Run a centralizer lemma suite"
    )
    verify.add_argument("suite", choices=["rp", "involution"])
    verify.add_argument(
        "--p",
        default=",".join(DEFAULT_RP_POINT),
        help="Coordinates of p on 1, e1, e2, e3 (default: 3/5,4/5)",
    )
    rep = sub.add_parser(
        "representative", parents=[common], help="Emit a table representative"
    )
    rep.add_argument("orbit_type", choices=list(TABLE_ORDER))
    return parser


def make_config(args: argparse.Namespace, environ: Dict[str, str]) -> RunConfig:
    backend = args.backend
    if args.command == "axioms" and args.exact:
        if backend == "float":
            raise UsageError("--exact contradicts --backend float")
        backend = "exact"
    raw_p = getattr(args, "p", None) or ",".join(DEFAULT_RP_POINT)
    p = tuple(c.strip() for c in raw_p.split(","))
    if not 1 <= len(p) <= 4:
        raise UsageError(f"--p takes 1 to 4 coordinates, got {len(p)}")
    return RunConfig(
        command=args.command,
        backend=backend,
        seed=args.seed,
        trials=args.trials,
        input=getattr(args, "input", None),
        out=args.out,
        theta=args.theta,
        phi=args.phi,
        p=p,
        tol=tolerance_from_env(environ),
        suite=getattr(args, "suite", None),
        orbit_type=getattr(args, "orbit_type", None),
        verbose=args.verbose,
    )


def load_input(path: Path) -> Dict:
    try:
        return read_json(path)
    except FileNotFoundError:
        raise UsageError(f"file '{path}' not found")
    except ValueError as e:
        raise UsageError(f"file '{path}' is not valid JSON: {e}")


def cmd_axioms(config: RunConfig) -> Tuple[Dict, str]:
    ctx = config.context()
    report = verify_axioms(ctx, config.trials_or(DEFAULT_AXIOM_TRIALS), config.seed)
    summary = (
        f"{len(report.laws)} laws hold on {report.trials} random triples "
        f"({ctx.backend.name} backend)"
    )
    return axioms_to_json(report), summary


def cmd_derivations(config: RunConfig) -> Tuple[Dict, str]:
    ctx = config.context()
    basis = derivation_basis(ctx)
    return derivations_to_json(ctx, basis), f"dim Der(C) = {len(basis)}"


def cmd_classify(config: RunConfig) -> Tuple[Dict, str]:
    t = element_from_json(load_input(config.input), config.backend)
    report = classify(t, tol=config.tol)
    summary = (
        f"{report.type.tag}: centralizer {report.type.centralizer}, "
        f"measured dimension {report.measured_dim}"
    )
    return classification_to_json(report), summary


def cmd_centralizer(config: RunConfig) -> Tuple[Dict, str]:
    t = element_from_json(load_input(config.input), config.backend)
    report = classify(t, tol=config.tol, with_witness=False)
    summary = (
        f"measured dimension {report.measured_dim}, "
        f"expected {report.type.expected_dim} ({report.type.tag}), "
        f"full {report.full_dim}"
    )
    return centralizer_to_json(report), summary


def cmd_extend_iso(config: RunConfig) -> Tuple[Dict, str]:
    iso = iso_from_json(load_input(config.input), config.backend)
    t = extend_isomorphism(iso)
    data = dict(aut_to_json(t), iso=iso_to_json(iso), ok=bool(t.certified))
    return data, f"extended a {iso.source.dim}-dimensional isomorphism to C"


def cmd_table(config: RunConfig) -> Tuple[Dict, str]:
    report = table_report(config.theta, config.phi, config.tol)
    return table_to_json(report), render_table(report)


def cmd_sample(config: RunConfig) -> Tuple[Dict, str]:
    report = sample_report(
        config.trials_or(DEFAULT_SAMPLE_TRIALS), config.seed, config.tol
    )
    counts = ", ".join(f"{k}={v}" for k, v in report.histogram.items() if v)
    summary = (
        f"{report.trials} samples: {counts}; "
        f"strongly regular fraction {report.strongly_regular_fraction:.3f}"
    )
    return sample_to_json(report), summary


def parse_point(config: RunConfig) -> QuaternionPoint:
    ctx = config.context()
    Q = standing_choices(ctx).Q
    try:
        coords = [ctx.backend.scalar(c) for c in config.p]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --p {','.join(config.p)}")
    x = ctx.zero()
    for c, q in zip(coords, ctx.units()[:4]):
        x = x + c * q
    return QuaternionPoint(x, Q)


def cmd_verify(config: RunConfig) -> Tuple[Dict, str]:
    if config.suite == "rp":
        p = parse_point(config)
        report = verify_rp_centralizer(
            p, config.trials_or(DEFAULT_VERIFY_TRIALS), config.seed
        )
        summary = (
            f"R_p centralizer: {report.commuting} commuting and "
            f"{report.non_commuting} non-commuting trials agree with p1 c1 in k(p)"
        )
        return rp_to_json(report), summary
    report = verify_involution_centralizer(
        config.trials_or(DEFAULT_INVOLUTION_TRIALS), config.seed, config.context()
    )
    summary = (
        f"involution centralizer: fixed dimension {report.fixed_dim}, "
        f"measured dimension {report.measured_dim} (full {report.full_dim})"
    )
    return involution_to_json(report), summary


def cmd_representative(config: RunConfig) -> Tuple[Dict, str]:
    A = representative_matrix(config.orbit_type, config.theta, config.phi)
    t = representative(config.orbit_type, config.theta, config.phi)
    data = dict(aut_to_json(t), su3=su3_to_json(A))
    return data, f"representative of {config.orbit_type}"


COMMANDS: Dict[str, Callable[[RunConfig], Tuple[Dict, str]]] = {
    "axioms": cmd_axioms,
    "derivations": cmd_derivations,
    "classify": cmd_classify,
    "centralizer": cmd_centralizer,
    "extend-iso": cmd_extend_iso,
    "table": cmd_table,
    "sample": cmd_sample,
    "verify": cmd_verify,
    "representative": cmd_representative,
}


def emit(config: RunConfig, report: Dict, summary: str) -> None:
    if config.out is not None:
        write_report(config.out, report)
        print(summary)
    elif config.command == "table":
        print(summary)
    else:
        sys.stdout.write(dumps(report))


def run(argv: Optional[Sequence[str]] = None, environ=None) -> int:
    """
    Run one subcommand.

    Args:
        argv (list): arguments without the program name (default: sys.argv[1:])
        environ (dict): environment to read G2KIT_TOLERANCE from (default:
            os.environ after loading a .env file)

    Returns:
        int: 0 if every check passed, 1 on a failed check, 2 on a usage error
    """
    if environ is None:
        load_dotenv()
        environ = os.environ
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG, format="%(name)s %(levelname)s %(message)s"
        )
    try:
        config = make_config(args, environ)
        logger.debug("running %s", config)
        report, summary = COMMANDS[config.command](config)
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except G2KitError as e:
        print(f"Check failed: {e}", file=sys.stderr)
        emit(config, error_to_json(e), f"Check failed: {type(e).__name__}")
        return EXIT_CHECK_FAILED
    except (KeyError, TypeError, ValueError) as e:
        print(f"Error: malformed input: {e}", file=sys.stderr)
        return EXIT_USAGE
    emit(config, report, summary)
    return EXIT_OK if report.get("ok", True) else EXIT_CHECK_FAILED


def main():
    """Entry point for the command-line interface."""
    sys.exit(run())


if __name__ == "__main__":
    main()
