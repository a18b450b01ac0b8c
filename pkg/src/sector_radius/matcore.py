"""Dense complex linear algebra kernels.

Everything downstream works with plain ``numpy.ndarray`` matrices
(``complex128``, square).  This module provides validation, the Cartesian
(Hermitian/skew) decomposition, Hermitian eigensystems with deterministic
eigenvector phases, operator norms, the commutant dimension used for
irreducibility tests, and the complete unitary-similarity invariants for
2x2 matrices.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import tolerances as tol
from .errors import MatrixShapeError


def as_square_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a square complex128 array with finite entries."""
    arr = np.array(a, dtype=np.complex128, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise MatrixShapeError(
            f"{name} must be a square matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise MatrixShapeError(f"{name} must have finite entries")
    return arr


def matrix_scale(t: np.ndarray) -> float:
    """Scale used for relative tolerances: max(1, Frobenius norm)."""
    return max(1.0, float(np.linalg.norm(t)))


class CartesianPair(NamedTuple):
    """Hermitian pair (H, G) with T = H + iG."""

    h: np.ndarray
    g: np.ndarray


def cartesian_decompose(t) -> CartesianPair:
    """Split T into its Hermitian part H = (T+T*)/2 and G = i(T*-T)/2."""
    t = as_square_matrix(t)
    th = t.conj().T
    h = (t + th) / 2.0
    g = 1j * (th - t) / 2.0
    return CartesianPair(h, g)


class HermitianSpectrum(NamedTuple):
    """Ascending eigenvalues and the matching orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _phase_normalize(v: np.ndarray) -> np.ndarray:
    """Rotate each column so its first non-negligible entry is real >= 0."""
    v = v.copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size:
            pivot = col[nz[0]]
            col *= np.conj(pivot) / abs(pivot)
    return v


def hermitian_spectrum(m) -> HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix.

    The input must be Hermitian within ``HERMITIAN_RTOL`` relative to its
    scale.  Eigenvalues come back ascending; each eigenvector has its first
    nonzero component phase-normalized to be real nonnegative, which makes
    the output reproducible across runs.
    """
    m = as_square_matrix(m)
    scale = matrix_scale(m)
    if np.linalg.norm(m - m.conj().T) > tol.HERMITIAN_RTOL * scale:
        raise MatrixShapeError("matrix is not Hermitian within tolerance")
    sym = (m + m.conj().T) / 2.0
    w, v = np.linalg.eigh(sym)
    return HermitianSpectrum(w, _phase_normalize(v))


def operator_norm(t) -> float:
    """Largest singular value of T."""
    t = as_square_matrix(t)
    return float(np.linalg.norm(t, 2))


def top_right_singular_vectors(t, rel_gap: float = 1e-10):
    """Largest singular value and the right singular vectors attaining it.

    Returns ``(sigma_max, vectors)`` where ``vectors`` spans the top
    singular subspace (all singular values within ``rel_gap * sigma_max``
    of the largest).  Vectors are phase-normalized.
    """
    t = as_square_matrix(t)
    _, s, vh = np.linalg.svd(t)
    smax = float(s[0])
    if smax == 0.0:
        return 0.0, []
    count = int(np.sum(smax - s <= rel_gap * smax))
    vecs = _phase_normalize(vh[:count].conj().T)
    return smax, [vecs[:, k] for k in range(count)]


def commutant_dimension(t) -> int:
    """Dimension of {X : XH = HX and XG = GX} for T = H + iG.

    The value is 1 exactly when T is unitarily irreducible.  The joint
    commutation equations are stacked into one linear operator on vec(X)
    and the dimension is its nullity; singular values below
    ``RANK_RTOL * sigma_max`` count as zero.
    """
    t = as_square_matrix(t)
    n = t.shape[0]
    h, g = cartesian_decompose(t)
    eye = np.eye(n)
    rows = [
        np.kron(eye, h) - np.kron(h.T, eye),
        np.kron(eye, g) - np.kron(g.T, eye),
    ]
    stacked = np.vstack(rows)
    sv = np.linalg.svd(stacked, compute_uv=False)
    smax = sv[0] if sv.size else 0.0
    if smax == 0.0:
        rank = 0
    else:
        rank = int(np.sum(sv > tol.RANK_RTOL * smax))
    return n * n - rank


class SimilarityInvariants2x2(NamedTuple):
    """Complete unitary-similarity invariants of a 2x2 matrix."""

    trace: complex
    determinant: complex
    frobenius_sq: float


def similarity_invariants_2x2(a) -> SimilarityInvariants2x2:
    """(tr A, det A, tr(A*A)) for a 2x2 matrix.

    Two 2x2 matrices are unitarily similar exactly when all three agree,
    so the triple decides unitary similarity.
    """
    a = as_square_matrix(a)
    if a.shape != (2, 2):
        raise MatrixShapeError(f"expected a 2x2 matrix, got {a.shape}")
    trace = complex(a[0, 0] + a[1, 1])
    det = complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    fro = float(np.sum(np.abs(a) ** 2))
    return SimilarityInvariants2x2(trace, det, fro)


def invariants_close(x: SimilarityInvariants2x2, y: SimilarityInvariants2x2,
                     atol: float) -> bool:
    return (abs(x.trace - y.trace) <= atol
            and abs(x.determinant - y.determinant) <= atol
            and abs(x.frobenius_sq - y.frobenius_sq) <= atol)


def unitary_completion(cols: np.ndarray) -> np.ndarray:
    """Extend orthonormal columns to a full unitary matrix, deterministically.

    The complement is the span of the eigenvectors of the orthogonal
    projector I - QQ* with eigenvalue 1.
    """
    cols = np.asarray(cols, dtype=np.complex128)
    n, k = cols.shape
    if k >= n:
        return cols
    proj = np.eye(n) - cols @ cols.conj().T
    w, v = np.linalg.eigh((proj + proj.conj().T) / 2.0)
    rest = _phase_normalize(v[:, w > 0.5])
    return np.hstack([cols, rest])
