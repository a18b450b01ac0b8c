"""Verdicts: ratio-bound compliance and extremality certification.

For a matrix whose numerical range lies in the sector of half-angle alpha,
the norm never exceeds sqrt(1 + sin(alpha)^2) times the numerical radius.
`ratio_check` verifies the bound, `canonical_family_test` decides
membership in the two-parameter touching family, and `certify_extremal`
decides whether a matrix attains the optimal ratio, recovering the
block structure that extremal matrices must carry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from . import tolerances as tol
from .errors import DegenerateError, MatrixShapeError, ParameterError
from .matcore import (
    as_square_matrix,
    cartesian_decompose,
    invariants_close,
    operator_norm,
    similarity_invariants_2x2,
    top_right_singular_vectors,
    unitary_completion,
)
from .extremal import canonical_b
from .numrange import (
    HALF_PI,
    min_sector_angle,
    numerical_radius,
    sector_contains,
    validate_sector_angle,
)


def tau(alpha) -> float:
    """Optimal norm-to-radius ratio sqrt(1 + sin(alpha)^2) for the sector."""
    alpha = validate_sector_angle(alpha)
    return math.sqrt(1.0 + math.sin(alpha) ** 2)


class RatioCheck(NamedTuple):
    """Outcome of the norm-to-radius bound check."""

    alpha_min: float | None
    ratio: float
    bound: float
    ok: bool


def ratio_check(t) -> RatioCheck:
    """Check ||T||/w(T) against the sharp bound for the tightest sector.

    When no sector contains W(T) the generic bound ||T|| <= 2 w(T) applies
    and ``bound`` is 2.
    """
    t = as_square_matrix(t)
    norm = operator_norm(t)
    if norm == 0.0:
        raise DegenerateError("ratio of the zero matrix is undefined")
    alpha_min = min_sector_angle(t)
    bound = 2.0 if alpha_min is None else tau(alpha_min)
    ratio = norm / numerical_radius(t)
    return RatioCheck(alpha_min, ratio, bound,
                      ratio <= bound + tol.RATIO_BOUND_SLACK)


class RecoveredForm(NamedTuple):
    """Parameters (r, theta) of the triangular normal form of a family member."""

    r: float
    theta: float


def _eigenvalues_2x2(a: np.ndarray) -> tuple[complex, complex]:
    half = (a[0, 0] + a[1, 1]) / 2.0
    disc = np.sqrt(complex(half * half - (a[0, 0] * a[1, 1]
                                          - a[0, 1] * a[1, 0])))
    return complex(half - disc), complex(half + disc)


def canonical_family_test(a, alpha) -> RecoveredForm | None:
    """Membership of A (or A*) in the touching family for the sector.

    Members have positive real determinant and, after determinant
    normalization, are unitarily similar to
    [[r e^{i theta}, 2c], [0, e^{-i theta}/r]] with r >= 1,
    theta in [0, alpha], c = sqrt(sin(alpha)^2 - sin(theta)^2); their
    numerical range lies in the sector and touches both boundary rays at
    nonzero points.  For alpha < pi/2 this is decided by the Hermitian part
    being positive definite with the eigenvalues of H^{-1/2} G H^{-1/2}
    equal to +-tan(alpha); at alpha = pi/2 (where H is singular) by the
    complete 2x2 unitary-similarity invariants.

    Returns the recovered (r, theta), or None if A is not a member.
    """
    a = as_square_matrix(a)
    if a.shape != (2, 2):
        raise MatrixShapeError(f"expected a 2x2 matrix, got {a.shape}")
    alpha = validate_sector_angle(alpha)
    atol = tol.FAMILY_ATOL
    det = complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    if det.real <= 0.0 or abs(det.imag) > atol * max(1.0, abs(det)):
        return None
    a0 = a / math.sqrt(det.real)
    scale = float(np.linalg.norm(a0, 2))
    if scale == 0.0:
        return None
    h, g = cartesian_decompose(a0)
    eig_h = np.linalg.eigvalsh(h)
    if alpha < HALF_PI - 1e-12:
        if eig_h[0] <= tol.PSD_RTOL * scale:
            return None
        w, v = np.linalg.eigh(h)
        inv_root = (v / np.sqrt(w)) @ v.conj().T
        prod = inv_root @ g @ inv_root
        ew = np.linalg.eigvalsh((prod + prod.conj().T) / 2.0)
        target = math.tan(alpha)
        if abs(ew[0] + target) > atol or abs(ew[-1] - target) > atol:
            return None
        return _recover_form(a0, alpha)
    # Half-plane sector: H is positive semidefinite but singular on the
    # family, so fall back to the complete invariant triple.
    if eig_h[0] < -tol.PSD_RTOL * scale:
        return None
    form = _recover_form(a0, alpha)
    if form is None:
        return None
    c_expected = math.sqrt(max(
        math.sin(alpha) ** 2 - math.sin(form.theta) ** 2, 0.0))
    fro2 = float(np.sum(np.abs(a0) ** 2))
    c_sq = (fro2 - form.r ** 2 - 1.0 / form.r ** 2) / 4.0
    c_found = math.sqrt(max(c_sq, 0.0))
    if abs(c_found - c_expected) > atol:
        return None
    return form


def _recover_form(a0: np.ndarray, alpha: float) -> RecoveredForm | None:
    """(r, theta) from the eigenvalues of the normalized matrix."""
    lam1, lam2 = _eigenvalues_2x2(a0)
    lam = lam1 if abs(lam1) >= abs(lam2) else lam2
    r = abs(lam)
    theta = abs(math.atan2(lam.imag, lam.real))
    if theta > alpha + tol.FAMILY_ATOL:
        return None
    return RecoveredForm(max(r, 1.0), min(theta, alpha))


def compression_2x2(t, x) -> np.ndarray:
    """Compression of T onto the span of {x, Tx}.

    The span is orthonormalized in that order; entry (i, j) of the result
    is <T e_j', e_i'>.  The numerical range of the compression is contained
    in W(T).  Raises when Tx is parallel to x (the span has dimension 1).
    """
    t = as_square_matrix(t)
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    if x.shape[0] != t.shape[0]:
        raise MatrixShapeError(
            f"vector length {x.shape[0]} does not match matrix of "
            f"dimension {t.shape[0]}")
    nx = float(np.linalg.norm(x))
    if abs(nx - 1.0) > 1e-8:
        raise ParameterError(f"x must be a unit vector, got norm {nx}")
    y = t @ x
    overlap = np.vdot(x, y)
    y_perp = y - overlap * x
    ny = float(np.linalg.norm(y_perp))
    if ny <= 1e-12 * max(1.0, float(np.linalg.norm(y))):
        raise DegenerateError(
            "Tx is parallel to x (x is an eigenvector); the span is "
            "one-dimensional")
    basis = np.column_stack([x, y_perp / ny])
    return basis.conj().T @ t @ basis


class Verdict(str, Enum):
    EXTREMAL = "extremal"
    NOT_EXTREMAL = "not_extremal"
    NOT_IN_SECTOR = "not_in_sector"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class CertificationReport:
    """Result of extremality certification.

    ``ratio`` is ||T||/w(T) and ``tau`` the sector's optimal ratio.  When
    the pipeline reaches the structural stage, ``attaining_vector`` is the
    norm-attaining unit vector used, ``compression`` the 2x2 compression
    onto span{x, Tx}, ``block_offdiag_norm`` the largest off-diagonal block
    norm in the induced splitting (absent at alpha = pi/2, where extremal
    matrices need not split), and ``tail_radius`` the numerical radius of
    the complementary block.
    """

    verdict: Verdict
    alpha: float
    ratio: float
    tau: float
    attaining_vector: np.ndarray | None = None
    compression: np.ndarray | None = None
    block_offdiag_norm: float | None = None
    tail_radius: float | None = None


def certify_extremal(t, alpha, tol_cert: float | None = None) -> CertificationReport:
    """Decide whether T attains the optimal ratio for the sector.

    Pipeline: (1) sector containment; (2) ratio against the optimal value;
    (3) norm-attaining unit vector from the top right-singular subspace
    (every basis vector is tried when the top singular value is
    degenerate); (4) the compression onto span{x, Tx} must carry the
    unitary-similarity invariants of the normalized rotation block;
    (5) for alpha < pi/2 the off-diagonal blocks of T/||T|| in the induced
    splitting must vanish; (6) the complementary block's numerical radius
    must not exceed 1/tau.  Step (5) is skipped at alpha = pi/2: the 3x3
    and chain families show extremal matrices there need carry no
    direct-sum structure.
    """
    t = as_square_matrix(t)
    alpha = validate_sector_angle(alpha)
    if alpha <= 0.0:
        raise ParameterError("certification needs alpha in (0, pi/2]")
    if tol_cert is None:
        tol_cert = tol.default_certify_tol()
    tol_cert = float(tol_cert)
    if tol_cert <= 0.0:
        raise ParameterError(f"tolerance must be positive, got {tol_cert}")
    norm = operator_norm(t)
    if norm == 0.0:
        raise DegenerateError("cannot certify the zero matrix")
    tau_a = tau(alpha)
    ratio = norm / numerical_radius(t)
    if not sector_contains(t, alpha):
        return CertificationReport(Verdict.NOT_IN_SECTOR, alpha, ratio, tau_a)
    if abs(ratio - tau_a) > tol_cert:
        return CertificationReport(Verdict.NOT_EXTREMAL, alpha, ratio, tau_a)
    block = canonical_b(alpha)
    reference = similarity_invariants_2x2(block.matrix / block.norm)
    t_norm = t / norm
    _, candidates = top_right_singular_vectors(t)
    report = None
    for x in candidates:
        report = _certify_with_vector(t_norm, x, alpha, ratio, tau_a,
                                      tol_cert, reference)
        if report.verdict is Verdict.EXTREMAL:
            return report
    if report is None:
        raise DegenerateError("no norm-attaining vector found")
    return report


def _certify_with_vector(t_norm: np.ndarray, x: np.ndarray, alpha: float,
                         ratio: float, tau_a: float, tol_cert: float,
                         reference) -> CertificationReport:
    n = t_norm.shape[0]
    y = t_norm @ x
    y_perp = y - np.vdot(x, y) * x
    ny = float(np.linalg.norm(y_perp))
    if ny <= 1e-12 * max(1.0, float(np.linalg.norm(y))):
        return CertificationReport(Verdict.DEGENERATE, alpha, ratio, tau_a,
                                   attaining_vector=x)
    basis = np.column_stack([x, y_perp / ny])
    compression = basis.conj().T @ t_norm @ basis
    if not invariants_close(similarity_invariants_2x2(compression),
                            reference, tol_cert):
        return CertificationReport(Verdict.NOT_EXTREMAL, alpha, ratio, tau_a,
                                   attaining_vector=x,
                                   compression=compression)
    if n == 2:
        # The compression is all of T/||T||: the invariant match already
        # decides extremality.
        return CertificationReport(Verdict.EXTREMAL, alpha, ratio, tau_a,
                                   attaining_vector=x,
                                   compression=compression,
                                   block_offdiag_norm=0.0, tail_radius=0.0)
    full = unitary_completion(basis)
    blocks = full.conj().T @ t_norm @ full
    offdiag = max(float(np.linalg.norm(blocks[:2, 2:], 2)),
                  float(np.linalg.norm(blocks[2:, :2], 2)))
    tail = numerical_radius(blocks[2:, 2:])
    at_half_plane = alpha >= HALF_PI - 1e-12
    ok = tail <= 1.0 / tau_a + tol_cert
    if not at_half_plane:
        ok = ok and offdiag <= tol_cert
    return CertificationReport(
        Verdict.EXTREMAL if ok else Verdict.NOT_EXTREMAL,
        alpha, ratio, tau_a,
        attaining_vector=x,
        compression=compression,
        block_offdiag_norm=None if at_half_plane else offdiag,
        tail_radius=tail)
