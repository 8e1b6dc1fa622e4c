"""Dense complex linear algebra for non-Hermitian eigenproblems.

Provides the full (two-sided) eigendecomposition with a biorthonormal
left/right eigenvector system, the Hermitian positive-definite square root,
and the small validation/norm helpers the rest of the package builds on.

Conventions. Right eigenvectors psi_n are the columns of ``right``; left
eigenvectors phi_n are the columns of ``left`` and satisfy
phi_m^dag psi_n = delta_mn, so that sum_n lambda_n psi_n phi_n^dag
reconstructs the matrix.  The left system is obtained from the inverse of
the right eigenvector matrix, never from a second eigensolve, so the two
systems never need eigenvalue re-matching.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSystem, EigFailure, NotPositiveDefinite

# Condition number of the right-eigenvector matrix beyond which a matrix is
# treated as numerically defective.
KAPPA_MAX = 1e8

# Eigenvalues closer than CLUSTER_TOL*(1+|lambda|) are treated as one
# degenerate cluster when building the biorthonormal system.
CLUSTER_TOL = 1e-8


def as_square_matrix(M) -> np.ndarray:
    """Validate and return M as a square complex128 array with finite entries."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise ValueError("matrix has non-finite entries")
    return A


def spectral_norm(A) -> float:
    """Largest singular value; the operator norm used for all residuals."""
    A = np.asarray(A, dtype=complex)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def herm_residual(A) -> float:
    """Relative deviation from self-adjointness, ||A - A^dag|| / ||A||."""
    A = np.asarray(A, dtype=complex)
    nrm = spectral_norm(A)
    if nrm == 0.0:
        return 0.0
    return spectral_norm(A - A.conj().T) / nrm


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with a biorthonormalized right/left eigenvector system.

    diag_score is the condition number of the raw right-eigenvector matrix
    (before any within-cluster orthonormalization); it stays huge for
    defective matrices and is the diagnostic classify() cuts on.
    """

    dim: int
    eigenvalues: np.ndarray   # shape (dim,)
    right: np.ndarray         # columns psi_n
    left: np.ndarray          # columns phi_n, phi_m^dag psi_n = delta_mn
    diag_score: float
    tol_used: float

    def gram_deviation(self) -> float:
        """max |phi_m^dag psi_n - delta_mn|, the biorthonormality defect."""
        G = self.left.conj().T @ self.right
        return float(np.max(np.abs(G - np.eye(self.dim))))

    def reconstruct(self) -> np.ndarray:
        """sum_n lambda_n psi_n phi_n^dag; equals the original matrix when
        diag_score is moderate."""
        return (self.right * self.eigenvalues) @ self.left.conj().T


def _cluster_indices(eigenvalues: np.ndarray, tol: float) -> list[list[int]]:
    """Group eigenvalue indices whose values coincide within tol*(1+|lambda|).

    Closeness is not transitive, so take the transitive closure (union-find);
    cluster membership must not depend on eigenvalue ordering.
    """
    n = len(eigenvalues)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            gap = abs(eigenvalues[i] - eigenvalues[j])
            if gap <= tol * (1.0 + abs(eigenvalues[i])):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    clusters: dict[int, list[int]] = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(i)
    return list(clusters.values())


def biorthonormalize(right: np.ndarray, left: np.ndarray, tol: float = 1e-10):
    """Rescale the left system so that left^dag . right = identity.

    Only the left factor is adjusted (left' = left . G^{-dag} with
    G = left^dag right), so both column spans are unchanged.  Iterates the
    correction until the Gram defect stops improving; one pass already gives
    a defect of order machine epsilon times the conditioning of G.

    Raises DegenerateSystem when G is singular beyond tolerance, which
    signals a defective or mis-paired system.
    """
    right = as_square_matrix(right)
    left = as_square_matrix(left)
    if right.shape != left.shape:
        raise ValueError("left/right shape mismatch")
    n = right.shape[0]
    eye = np.eye(n)

    best = left
    best_dev = float(np.max(np.abs(best.conj().T @ right - eye)))
    for _ in range(3):
        if best_dev <= 10 * np.finfo(float).eps * n:
            break
        G = best.conj().T @ right
        sv = np.linalg.svd(G, compute_uv=False)
        if sv[-1] <= 1e-12 * sv[0]:
            raise DegenerateSystem(
                f"left^dag.right is singular within tolerance (sigma_min/sigma_max = {sv[-1] / sv[0]:.3e})"
            )
        candidate = best @ np.linalg.inv(G).conj().T
        dev = float(np.max(np.abs(candidate.conj().T @ right - eye)))
        if dev >= best_dev:
            break
        best, best_dev = candidate, dev
    return right, best


def eig_full(M, cluster_tol: float = CLUSTER_TOL) -> Spectrum:
    """Two-sided eigendecomposition of a general complex matrix.

    Right vectors come from the dense eigensolver; degenerate clusters are
    orthonormalized among themselves (stabilizes everything built from
    near-degenerate systems, e.g. +k/-k lattice modes); the left system is
    the conjugated inverse of the right matrix, polished by
    ``biorthonormalize``.  diag_score is the condition number of the *raw*
    eigenvector matrix so defective inputs keep their tell-tale blow-up.
    """
    M = as_square_matrix(M)
    n = M.shape[0]
    try:
        w, V = np.linalg.eig(M)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare LAPACK failure
        raise EigFailure(str(exc)) from exc

    diag_score = float(np.linalg.cond(V, 2))
    if not np.isfinite(diag_score):
        diag_score = np.inf

    for cluster in _cluster_indices(w, cluster_tol):
        if len(cluster) > 1:
            Q, _ = np.linalg.qr(V[:, cluster])
            V[:, cluster] = Q

    try:
        W = np.linalg.inv(V)
    except np.linalg.LinAlgError:
        W = np.linalg.pinv(V)
        diag_score = np.inf
    left = W.conj().T

    if diag_score <= 1e12:
        _, left = biorthonormalize(V, left)
    return Spectrum(dim=n, eigenvalues=w, right=V, left=left,
                    diag_score=diag_score, tol_used=cluster_tol)


def herm_sqrt(P, tol: float = 1e-10) -> np.ndarray:
    """Positive-definite square root of a Hermitian positive-definite matrix.

    Standard spectral functional calculus: eigendecompose, take sqrt of the
    (strictly positive) eigenvalues.  Raises NotPositiveDefinite when the
    smallest eigenvalue is at or below tolerance, which flags a failed
    positive-metric construction upstream.
    """
    P = as_square_matrix(P)
    if herm_residual(P) > tol:
        raise NotPositiveDefinite(
            f"matrix is not self-adjoint within {tol:g} (residual {herm_residual(P):.3e})"
        )
    evals, U = np.linalg.eigh(0.5 * (P + P.conj().T))
    if evals[0] <= tol * max(1.0, evals[-1]):
        raise NotPositiveDefinite(
            f"minimum eigenvalue {evals[0]:.3e} is not positive"
        )
    Q = (U * np.sqrt(evals)) @ U.conj().T
    return 0.5 * (Q + Q.conj().T)
