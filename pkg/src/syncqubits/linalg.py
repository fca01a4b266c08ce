"""Dense complex linear algebra shared by the model modules.

Everything operates on plain numpy arrays (promoted to complex128) and
returns fresh arrays; inputs are never mutated.  The matrices involved are
tiny (at most 16x16), so robust dense LAPACK routines are used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-10
NULL_SPACE_TOL = 1e-10


class NotHermitian(ValueError):
    """Raised when a matrix fails its Hermitian symmetry check."""


class DimMismatch(ValueError):
    """Raised when operand dimensions are incompatible."""


@dataclass(frozen=True)
class SpectrumReport:
    """Hermitian eigendecomposition.

    ``eigenvalues`` are real and ascending; column i of ``eigenvectors`` is
    the orthonormal eigenvector paired with eigenvalue i.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.size == 0:
        raise DimMismatch(f"expected a nonempty 2-d matrix, got shape {a.shape}")
    return a


def _require_square(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {a.shape}")


def hermiticity_error(m) -> float:
    """Largest entrywise deviation of a square matrix from its adjoint."""
    a = _as_matrix(m)
    _require_square(a)
    return float(np.abs(a - a.conj().T).max())


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; row (i1, i2) of the result maps to i1 * rows(b) + i2."""
    return np.kron(_as_matrix(a), _as_matrix(b))


def commutator(a, b) -> np.ndarray:
    """a @ b - b @ a for square matrices of equal size."""
    am = _as_matrix(a)
    bm = _as_matrix(b)
    _require_square(am)
    if am.shape != bm.shape:
        raise DimMismatch(f"shape mismatch: {am.shape} vs {bm.shape}")
    return am @ bm - bm @ am


def hermitian_eigensystem(m, tol: float = HERMITIAN_TOL) -> SpectrumReport:
    """Eigendecomposition of a Hermitian matrix.

    Raises NotHermitian when the symmetry error exceeds ``tol``.  The
    reconstruction V diag(w) V+ matches the input to machine precision for
    the matrix sizes this package deals in.
    """
    a = _as_matrix(m)
    _require_square(a)
    err = float(np.abs(a - a.conj().T).max())
    if err > tol:
        raise NotHermitian(f"symmetry error {err:.3e} exceeds tolerance {tol:.3e}")
    w, v = np.linalg.eigh(a)
    return SpectrumReport(eigenvalues=w, eigenvectors=v)


def null_space(m, tol: float = NULL_SPACE_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the kernel of a square matrix, via SVD.

    A singular direction counts as null when its singular value is at most
    ``tol`` times the largest one, so the test is insensitive to overall
    scale; the zero matrix returns a basis of the whole space.
    """
    a = _as_matrix(m)
    _require_square(a)
    if tol <= 0:
        raise ValueError("tol must be positive")
    _, s, vh = np.linalg.svd(a)
    cutoff = tol * float(s[0])
    return [vh[i].conj() for i in range(a.shape[0]) if s[i] <= cutoff]


def _orthonormal_columns(vectors) -> np.ndarray:
    if isinstance(vectors, (list, tuple)):
        a = np.column_stack([np.asarray(v, dtype=complex).ravel() for v in vectors])
    else:
        a = _as_matrix(vectors)
    q, _ = np.linalg.qr(a)
    return q


def principal_angles(u, v) -> np.ndarray:
    """Principal angles between the column spans of ``u`` and ``v``.

    Accepts 2-d arrays (columns span) or sequences of vectors, which must be
    linearly independent; both spans must have equal dimension.  Uses the
    sine-based formulation, which keeps full precision for the near-zero
    angles this package asserts on.  Angles come back ascending, in
    [0, pi/2].
    """
    qu = _orthonormal_columns(u)
    qv = _orthonormal_columns(v)
    if qu.shape[0] != qv.shape[0]:
        raise DimMismatch(f"ambient dimensions differ: {qu.shape[0]} vs {qv.shape[0]}")
    if qu.shape[1] != qv.shape[1]:
        raise DimMismatch(f"subspace dimensions differ: {qu.shape[1]} vs {qv.shape[1]}")
    resid = qv - qu @ (qu.conj().T @ qv)
    sines = np.clip(np.linalg.svd(resid, compute_uv=False), 0.0, 1.0)
    return np.sort(np.arcsin(sines))
