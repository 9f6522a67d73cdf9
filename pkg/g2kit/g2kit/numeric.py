"""
Scalar backends and small dense linear algebra.

Two backends are supported and never mixed inside one computation:

- ``EXACT``: arbitrary precision rationals (``fractions.Fraction``) stored in
  numpy ``object`` arrays; all comparisons are exact.
- ``FLOAT``: IEEE doubles in ``float64`` / ``complex128`` arrays; comparisons
  use the tolerance hierarchy of ``g2kit.constants``.

The module also provides the only eigensolver the package needs: the spectrum
of a 3x3 special unitary matrix, by Cardano's formula.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Literal, Sequence, Tuple

import numpy as np

from g2kit.constants import (
    CLUSTER_RADIUS,
    EQUALITY_TOL,
    NEWTON_STEPS,
    RESIDUAL_TOL,
)
from g2kit.errors import SolverFailure, UnsupportedBackend

__all__ = [
    "Backend",
    "ComplexScalar",
    "EXACT",
    "FLOAT",
    "backend_of",
    "backend_named",
    "rref",
    "nullspace",
    "rank",
    "solve",
    "inverse",
    "det3",
    "charpoly3",
    "eig3_unit",
    "companion_roots",
    "conj_array",
    "is_zero_array",
    "max_abs",
    "to_complex_array",
]

logger = logging.getLogger(__name__)

BackendName = Literal["exact", "float"]

# Relative singular value cutoff for float nullspaces.
SVD_RANK_TOL = 1e-10


def rational_sqrt(value: Fraction):
    """Return the exact square root of a non-negative rational, or None."""
    value = Fraction(value)
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class ComplexScalar:
    """
    Exact element re + im*i of L = k(i), with re and im rational.

    The float backend uses Python ``complex`` instead; both expose
    ``conjugate()`` so generic code can treat them alike.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexScalar is immutable")

    @staticmethod
    def _lift(other):
        if isinstance(other, ComplexScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ComplexScalar(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ComplexScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ComplexScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ComplexScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        d = other.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero in L")
        return self * other.conjugate() * ComplexScalar(1 / d, 0)

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im)

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def conjugate(self):
        return ComplexScalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"ComplexScalar({self.re}, {self.im})"


@dataclass(frozen=True)
class Backend:
    """Scalar backend tag with the conversions and comparisons it implies."""

    name: BackendName

    @property
    def exact(self) -> bool:
        return self.name == "exact"

    def scalar(self, value):
        if self.exact:
            if isinstance(value, str):
                return Fraction(value.strip())
            return Fraction(value)
        if isinstance(value, str):
            return float(Fraction(value.strip()))
        return float(value)

    def complex(self, re, im=0):
        if self.exact:
            return ComplexScalar(self.scalar(re), self.scalar(im))
        return complex(self.scalar(re), self.scalar(im))

    def array(self, data) -> np.ndarray:
        raw = np.array(data, dtype=object)
        converted = np.frompyfunc(self.scalar, 1, 1)(raw)
        if self.exact:
            return np.asarray(converted, dtype=object)
        return np.asarray(converted, dtype=float)

    def zeros(self, shape) -> np.ndarray:
        if self.exact:
            return np.full(shape, Fraction(0), dtype=object)
        return np.zeros(shape)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.scalar(1)
        return out

    def is_zero(self, value, tol: float = EQUALITY_TOL) -> bool:
        if self.exact:
            return value == 0
        return abs(value) <= tol

    def sqrt(self, value):
        if self.exact:
            root = rational_sqrt(value)
            if root is None:
                raise UnsupportedBackend(
                    f"{value} has no rational square root", value=str(value)
                )
            return root
        return math.sqrt(value)


EXACT = Backend("exact")
FLOAT = Backend("float")


def backend_of(array: np.ndarray) -> Backend:
    return EXACT if np.asarray(array).dtype == object else FLOAT


def backend_named(name: str) -> Backend:
    if name == "exact":
        return EXACT
    if name == "float":
        return FLOAT
    raise ValueError(f"unknown backend {name!r}; expected 'exact' or 'float'")


def max_abs(array: np.ndarray) -> float:
    arr = np.asarray(array)
    if arr.size == 0:
        return 0.0
    if arr.dtype == object:
        return max(abs(complex(z)) for z in arr.flat)
    return float(np.max(np.abs(arr)))


def is_zero_array(array: np.ndarray, tol: float = EQUALITY_TOL) -> bool:
    arr = np.asarray(array)
    if arr.dtype == object:
        return all(z == 0 for z in arr.flat)
    return max_abs(arr) <= tol


def conj_array(array: np.ndarray) -> np.ndarray:
    arr = np.asarray(array)
    if arr.dtype == object:
        return np.asarray(
            np.frompyfunc(lambda z: z.conjugate(), 1, 1)(arr), dtype=object
        )
    return np.conj(arr)


def to_complex_array(array: np.ndarray) -> np.ndarray:
    arr = np.asarray(array)
    if arr.dtype == object:
        return np.array([[complex(z) for z in row] for row in arr], dtype=complex)
    return arr.astype(complex)


def _rref_exact(M: np.ndarray) -> Tuple[List[List], List[int]]:
    rows = [list(r) for r in M]
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    pivots = []
    piv_r = 0
    for piv_c in range(n_cols):
        pick = None
        for r in range(piv_r, n_rows):
            if rows[r][piv_c] != 0:
                pick = r
                break
        if pick is None:
            continue
        rows[piv_r], rows[pick] = rows[pick], rows[piv_r]
        pivot_row = rows[piv_r]
        fp = pivot_row[piv_c]
        if fp != 1:
            pivot_row = [x / fp for x in pivot_row]
            rows[piv_r] = pivot_row
        support = [c for c in range(piv_c, n_cols) if pivot_row[c] != 0]
        for r in range(n_rows):
            if r == piv_r:
                continue
            fr = rows[r][piv_c]
            if fr == 0:
                continue
            row = rows[r]
            for c in support:
                row[c] = row[c] - fr * pivot_row[c]
        pivots.append(piv_c)
        piv_r += 1
        if piv_r == n_rows:
            break
    return rows, pivots


def _rref_float(M: np.ndarray, tol: float) -> Tuple[np.ndarray, List[int]]:
    R = np.array(M, dtype=complex if np.iscomplexobj(M) else float)
    n_rows, n_cols = R.shape
    threshold = tol * max(1.0, max_abs(R))
    pivots = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        col = np.abs(R[piv_r:, piv_c])
        pick = int(np.argmax(col)) + piv_r
        if abs(R[pick, piv_c]) <= threshold:
            R[piv_r:, piv_c] = 0
            continue
        R[[piv_r, pick]] = R[[pick, piv_r]]
        R[piv_r] = R[piv_r] / R[piv_r, piv_c]
        for r in range(n_rows):
            if r != piv_r and R[r, piv_c] != 0:
                R[r] = R[r] - R[r, piv_c] * R[piv_r]
        pivots.append(piv_c)
        piv_r += 1
    return R, pivots


def rref(M: np.ndarray, tol: float = RESIDUAL_TOL):
    """
    Reduced row echelon form.

    Args:
        M: 2D array, ``object`` dtype for exact input.
        tol: relative pivot threshold (float backend only).

    Returns:
        tuple: (reduced matrix, list of pivot columns)
    """
    M = np.asarray(M)
    if M.ndim != 2:
        raise ValueError(f"rref expects a 2D array, got shape {M.shape}")
    if M.dtype == object:
        rows, pivots = _rref_exact(M)
        return np.array(rows, dtype=object).reshape(M.shape), pivots
    return _rref_float(M, tol)


def nullspace(M: np.ndarray, tol: float = SVD_RANK_TOL) -> List[np.ndarray]:
    """
    Basis of the kernel of ``M``.

    Exact input is reduced by Gauss-Jordan elimination. Float input (real or
    complex) is ranked by SVD and the kernel basis is then brought to reduced
    row echelon form, so equal subspaces always produce the same basis.
    """
    M = np.asarray(M)
    n_cols = M.shape[1]
    if M.dtype == object:
        R, pivots = rref(M)
        free = [c for c in range(n_cols) if c not in pivots]
        basis = []
        for f in free:
            v = np.full(n_cols, Fraction(0), dtype=object)
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -R[i, f]
            basis.append(v)
        logger.debug("exact nullspace: %d x %d, nullity %d", *M.shape, len(basis))
        return basis

    if M.shape[0] == 0:
        kernel = np.eye(n_cols, dtype=M.dtype)
    else:
        _, s, vh = np.linalg.svd(M)
        threshold = tol * max(1.0, float(s[0]) if s.size else 0.0)
        r = int(np.sum(s > threshold))
        kernel = vh[r:].conj()
    if kernel.shape[0] == 0:
        return []
    R, _ = _rref_float(kernel, RESIDUAL_TOL)
    basis = [R[i].copy() for i in range(kernel.shape[0])]
    logger.debug("float nullspace: %d x %d, nullity %d", *M.shape, len(basis))
    return basis


def rank(M: np.ndarray, tol: float = SVD_RANK_TOL) -> int:
    M = np.asarray(M)
    return M.shape[1] - len(nullspace(M, tol))


def solve(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve the square system A x = b."""
    A = np.asarray(A)
    b = np.asarray(b)
    if A.dtype == object:
        aug = np.concatenate([A, b.reshape(A.shape[0], -1)], axis=1)
        R, pivots = rref(aug)
        if pivots[: A.shape[1]] != list(range(A.shape[1])):
            raise SolverFailure("singular linear system")
        x = R[: A.shape[1], A.shape[1] :]
        return x.reshape(b.shape)
    try:
        return np.linalg.solve(A, b)
    except np.linalg.LinAlgError as e:
        raise SolverFailure(f"singular linear system: {e}") from e


def inverse(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M)
    n = M.shape[0]
    ident = EXACT.identity(n) if M.dtype == object else np.eye(n, dtype=M.dtype)
    return solve(M, ident)


def det3(M: np.ndarray):
    """Determinant of a 3x3 matrix by cofactor expansion (any backend)."""
    (a, b, c), (d, e, f), (g, h, i) = M[0], M[1], M[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def charpoly3(A: np.ndarray) -> Tuple[complex, complex, complex]:
    """Return (trace, sum of principal 2x2 minors, det) of a 3x3 matrix."""
    tr = A[0, 0] + A[1, 1] + A[2, 2]
    minors = (
        A[0, 0] * A[1, 1]
        - A[0, 1] * A[1, 0]
        + A[0, 0] * A[2, 2]
        - A[0, 2] * A[2, 0]
        + A[1, 1] * A[2, 2]
        - A[1, 2] * A[2, 1]
    )
    return tr, minors, det3(A)


def _cube_root(z: complex) -> complex:
    if z == 0:
        return 0j
    return abs(z) ** (1.0 / 3.0) * cmath.exp(1j * cmath.phase(z) / 3.0)


def _cardano(b: complex, c: complex, d: complex) -> List[complex]:
    """Roots of x^3 + b x^2 + c x + d."""
    shift = b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    disc = cmath.sqrt(q * q / 4.0 + p**3 / 27.0)
    u1, u2 = -q / 2.0 + disc, -q / 2.0 - disc
    C = _cube_root(u1 if abs(u1) >= abs(u2) else u2)
    if C == 0:
        return [-shift] * 3
    omega = cmath.exp(2j * math.pi / 3.0)
    roots = []
    for k in range(3):
        ck = C * omega**k
        roots.append(ck - p / (3.0 * ck) - shift)
    return roots


def _polish(x: complex, coeffs: Sequence[complex]) -> complex:
    def f(z):
        return ((z + coeffs[1]) * z + coeffs[2]) * z + coeffs[3]

    def df(z):
        return (3 * z + 2 * coeffs[1]) * z + coeffs[2]

    fx = f(x)
    for _ in range(NEWTON_STEPS):
        slope = df(x)
        if slope == 0 or fx == 0:
            break
        candidate = x - fx / slope
        fc = f(candidate)
        if abs(fc) >= abs(fx):
            break
        x, fx = candidate, fc
        if abs(fx) <= 1e-15:
            break
    if abs(fx) > 1e-6:
        raise SolverFailure(
            f"root refinement did not converge (residual {abs(fx):.3e})",
            root=x,
            residual=abs(fx),
        )
    return x


def _refine_clusters(A: np.ndarray, roots: List[complex]) -> List[complex]:
    # A is normal, so the singular values of A - zI are the distances from z
    # to the eigenvalues; that decides whether a tight cluster is one value.
    n = len(roots)
    clusters = []
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        group = [i]
        for j in range(i + 1, n):
            if j not in seen and abs(roots[i] - roots[j]) < CLUSTER_RADIUS:
                group.append(j)
        seen.update(group)
        if len(group) > 1:
            clusters.append(group)
    ident = np.eye(3, dtype=complex)
    for group in clusters:
        center = sum(roots[g] for g in group) / len(group)
        _, _, vh = np.linalg.svd(A - center * ident)
        v = vh[-1].conj()
        rayleigh = complex(np.vdot(v, A @ v))
        s = np.linalg.svd(A - rayleigh * ident, compute_uv=False)
        multiplicity = int(np.sum(s <= EQUALITY_TOL))
        if multiplicity >= len(group):
            logger.debug("merged %d roots at %s", len(group), rayleigh)
            for g in group:
                roots[g] = rayleigh
    return roots


def eig3_unit(A: np.ndarray) -> Tuple[complex, complex, complex]:
    """
    Eigenvalues of a 3x3 complex matrix meant to be special unitary.

    Roots of det(XI - A) by Cardano's formula, each polished by one Newton step
    on the characteristic polynomial. Roots that land within
    ``CLUSTER_RADIUS`` of each other are re-examined on the matrix itself so
    repeated eigenvalues come out exactly repeated.

    Raises:
        SolverFailure: if Newton refinement leaves a large residual.
    """
    a = to_complex_array(A)
    if a.shape != (3, 3):
        raise ValueError(f"eig3_unit expects a 3x3 matrix, got {a.shape}")
    tr, minors, det = charpoly3(a)
    coeffs = (1.0, -tr, minors, -det)
    roots = [_polish(r, coeffs) for r in _cardano(-tr, minors, -det)]
    roots = _refine_clusters(a, roots)
    return tuple(complex(r) for r in roots)


def companion_roots(coeffs: Sequence[complex]) -> np.ndarray:
    """
    Roots of a monic polynomial from the eigenvalues of its companion matrix.

    Used as an independent oracle for ``eig3_unit``.
    """
    coeffs = [complex(c) for c in coeffs]
    if coeffs[0] != 1:
        coeffs = [c / coeffs[0] for c in coeffs]
    n = len(coeffs) - 1
    comp = np.zeros((n, n), dtype=complex)
    comp[0, :] = [-c for c in coeffs[1:]]
    for i in range(1, n):
        comp[i, i - 1] = 1.0
    return np.linalg.eigvals(comp)
