"""Metric operators for non-Hermitian matrices.

Implements the finite-dimensional theory: a matrix H is pseudo-Hermitian
when some invertible self-adjoint eta satisfies H^dag = eta H eta^{-1};
it is quasi-Hermitian when eta can be chosen positive-definite, which for
diagonalizable matrices happens exactly when the spectrum is real.  The
constructions here all run through the biorthonormal left system
{phi_n}: eta_+ = sum phi_n phi_n^dag, general eta = signed/paired sums of
the same projectors, and the antilinear symmetry tau maps conjugated
eigenvectors onto their pairing partners.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateSystem,
    NoPositiveMetric,
    NotAMetric,
    NotCommuting,
    NotInvertible,
    NotPositiveDefinite,
    UnpairedEigenvalue,
)
from .linalg import (
    KAPPA_MAX,
    Spectrum,
    as_square_matrix,
    eig_full,
    herm_residual,
    herm_sqrt,
    spectral_norm,
)

# lambda is treated as real iff |Im lambda| <= REALITY_TOL*(1+|lambda|).
REALITY_TOL = 1e-9

INTERTWINE_TOL = 1e-8


class OperatorClass(str, enum.Enum):
    HERMITIAN = "Hermitian"
    QUASI_HERMITIAN = "QuasiHermitian"
    PSEUDO_HERMITIAN_ONLY = "PseudoHermitianOnly"
    NOT_PSEUDO_HERMITIAN = "NotPseudoHermitian"
    NON_DIAGONALIZABLE = "NonDiagonalizable"


@dataclass(frozen=True)
class Classification:
    kind: OperatorClass
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PairingMap:
    """Partition of eigenvalue indices into real ones and conjugate pairs.

    pairs hold (n, nbar) with Im lambda_n > 0 and lambda_nbar ~ conj(lambda_n).
    """

    real_indices: tuple
    pairs: tuple
    tol: float

    @property
    def all_real(self) -> bool:
        return len(self.pairs) == 0

    def partner(self, n: int) -> int:
        """Index carrying the conjugate of eigenvalue n (n itself when real)."""
        if n in self.real_indices:
            return n
        for a, b in self.pairs:
            if n == a:
                return b
            if n == b:
                return a
        raise KeyError(f"index {n} not covered by the pairing map")


@dataclass(frozen=True)
class MetricOperator:
    """Invertible self-adjoint eta with cached signature and diagnostics."""

    matrix: np.ndarray
    signature: tuple            # (n_plus, n_minus)
    selfadjoint_residual: float
    min_abs_eigenvalue: float

    @classmethod
    def from_matrix(cls, eta, selfadjoint_tol: float = 1e-10,
                    invertibility_tol: float = 1e-12) -> "MetricOperator":
        eta = as_square_matrix(eta)
        residual = herm_residual(eta)
        if residual > selfadjoint_tol:
            raise NotAMetric(f"not self-adjoint: residual {residual:.3e}")
        evals = np.linalg.eigvalsh(0.5 * (eta + eta.conj().T))
        scale = np.max(np.abs(evals))
        if scale == 0.0 or np.min(np.abs(evals)) <= invertibility_tol * scale:
            raise NotInvertible(
                f"metric has an eigenvalue within {invertibility_tol:g} of zero"
            )
        n_plus = int(np.sum(evals > 0))
        n_minus = int(np.sum(evals < 0))
        return cls(matrix=eta, signature=(n_plus, n_minus),
                   selfadjoint_residual=residual,
                   min_abs_eigenvalue=float(np.min(np.abs(evals))))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def positive_definite(self) -> bool:
        return self.signature[1] == 0

    @property
    def indefinite(self) -> bool:
        return self.signature[0] > 0 and self.signature[1] > 0


def _metric_matrix(eta) -> np.ndarray:
    """Accept MetricOperator or a plain array wherever a metric is consumed."""
    if isinstance(eta, MetricOperator):
        return eta.matrix
    return as_square_matrix(eta)


def pair_spectrum(S: Spectrum, tol: float = REALITY_TOL) -> PairingMap:
    """Split a spectrum into real eigenvalues and conjugate pairs.

    Eigenvalues with |Im| <= tol*(1+|lambda|) count as real; the rest are
    matched greedily to the nearest conjugate within the same scaled
    tolerance.  Failure to match raises UnpairedEigenvalue rather than
    forcing a pairing: an unpaired complex eigenvalue certifies that no
    metric operator exists.
    """
    w = S.eigenvalues
    real_indices = []
    upper = []   # Im > 0
    lower = []   # Im < 0
    for n, lam in enumerate(w):
        if abs(lam.imag) <= tol * (1.0 + abs(lam)):
            real_indices.append(n)
        elif lam.imag > 0:
            upper.append(n)
        else:
            lower.append(n)

    pairs = []
    remaining = list(lower)
    # Largest imaginary parts first: they have the least tolerance slack.
    for n in sorted(upper, key=lambda i: -abs(w[i].imag)):
        if not remaining:
            raise UnpairedEigenvalue(w[n])
        target = np.conj(w[n])
        best = min(remaining, key=lambda j: abs(w[j] - target))
        if abs(w[best] - target) > tol * (1.0 + abs(w[n])):
            raise UnpairedEigenvalue(w[n])
        remaining.remove(best)
        pairs.append((n, best))
    if remaining:
        raise UnpairedEigenvalue(w[remaining[0]])
    return PairingMap(real_indices=tuple(real_indices), pairs=tuple(pairs), tol=tol)


def classify(H, tol: float = REALITY_TOL, kappa_max: float = KAPPA_MAX) -> Classification:
    """Place H in the chain Hermitian < quasi-Hermitian < pseudo-Hermitian.

    NonDiagonalizable when the eigenvector conditioning exceeds kappa_max
    (numerically defective; no spectral statement is attempted), Hermitian
    by direct residual, QuasiHermitian for a real spectrum, PseudoHermitianOnly
    when the spectrum is closed under conjugation with at least one genuine
    pair, NotPseudoHermitian otherwise.
    """
    H = as_square_matrix(H)
    S = eig_full(H)
    diagnostics = {
        "diag_score": S.diag_score,
        "hermiticity_residual": herm_residual(H),
    }
    if S.diag_score > kappa_max:
        return Classification(OperatorClass.NON_DIAGONALIZABLE, diagnostics)
    if diagnostics["hermiticity_residual"] <= tol:
        return Classification(OperatorClass.HERMITIAN, diagnostics)
    try:
        pairing = pair_spectrum(S, tol)
    except UnpairedEigenvalue as exc:
        diagnostics["unpaired_eigenvalue"] = exc.eigenvalue
        return Classification(OperatorClass.NOT_PSEUDO_HERMITIAN, diagnostics)
    diagnostics["n_real"] = len(pairing.real_indices)
    diagnostics["n_pairs"] = len(pairing.pairs)
    if pairing.all_real:
        return Classification(OperatorClass.QUASI_HERMITIAN, diagnostics)
    return Classification(OperatorClass.PSEUDO_HERMITIAN_ONLY, diagnostics)


def build_positive_metric(S: Spectrum, tol: float = REALITY_TOL) -> MetricOperator:
    """Positive metric eta_+ = sum_n phi_n phi_n^dag from the left system.

    Exists iff the spectrum is real (after pairing within tol); raises
    NoPositiveMetric when any conjugate pair is present.  The result is
    self-adjoint positive-definite and intertwines H with H^dag.
    """
    pairing = pair_spectrum(S, tol)
    if not pairing.all_real:
        raise NoPositiveMetric(
            f"spectrum has {len(pairing.pairs)} complex pair(s); no positive metric exists"
        )
    eta = S.left @ S.left.conj().T
    eta = 0.5 * (eta + eta.conj().T)
    metric = MetricOperator.from_matrix(eta)
    if not metric.positive_definite:
        raise NotPositiveDefinite("constructed metric is not positive-definite")
    return metric


def build_general_metric(S: Spectrum, pairing: PairingMap, signs=None) -> MetricOperator:
    """Canonical member of the metric family for a paired spectrum.

    eta = sum_{n real} s_n phi_n phi_n^dag
        + sum_{(n,nbar)} (phi_n phi_nbar^dag + phi_nbar phi_n^dag),

    one sign s_n = +/-1 per real eigenvalue (all +1 by default, which
    coincides with the positive metric when the spectrum is real).  Pair
    blocks carry no free phase; the rest of the metric family is reachable
    through transform_metric.  By Sylvester's law the signature equals
    (#positive signs + #pairs, #negative signs + #pairs).
    """
    if signs is None:
        signs = [1] * len(pairing.real_indices)
    if len(signs) != len(pairing.real_indices):
        raise ValueError("need exactly one sign per real eigenvalue")
    if any(s not in (-1, 1) for s in signs):
        raise ValueError("signs must be +1 or -1")

    phi = S.left
    eta = np.zeros((S.dim, S.dim), dtype=complex)
    for s, n in zip(signs, pairing.real_indices):
        eta += s * np.outer(phi[:, n], phi[:, n].conj())
    for n, nbar in pairing.pairs:
        eta += np.outer(phi[:, n], phi[:, nbar].conj())
        eta += np.outer(phi[:, nbar], phi[:, n].conj())
    eta = 0.5 * (eta + eta.conj().T)
    try:
        return MetricOperator.from_matrix(eta)
    except NotInvertible as exc:
        raise DegenerateSystem(f"constructed metric is singular: {exc}") from exc


def verify_intertwining(H, eta) -> float:
    """Relative residual ||H^dag eta - eta H|| / (||H|| ||eta||).

    Zero (up to roundoff) certifies eta as a metric operator for H;
    membership is declared at <= 1e-8.
    """
    H = as_square_matrix(H)
    E = _metric_matrix(eta)
    denom = spectral_norm(H) * spectral_norm(E)
    if denom == 0.0:
        return 0.0
    return spectral_norm(H.conj().T @ E - E @ H) / denom


def metric_signature(eta, invertibility_tol: float = 1e-12):
    """Counts (n_plus, n_minus) of positive/negative metric eigenvalues.

    The metric is indefinite iff both counts are nonzero.  Raises
    NotInvertible if an eigenvalue sits within tolerance of zero.
    """
    if isinstance(eta, MetricOperator):
        return eta.signature
    return MetricOperator.from_matrix(eta, invertibility_tol=invertibility_tol).signature


def eta_inner(eta, psi, chi) -> complex:
    """Metric inner product <psi, eta chi>, conjugate-linear in psi.

    Positive-definite exactly when eta is; for indefinite eta nonzero
    vectors of zero or negative self-norm exist.
    """
    E = _metric_matrix(eta)
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    chi = np.asarray(chi, dtype=complex).reshape(-1)
    return complex(np.vdot(psi, E @ chi))


def hermitize(H, eta_plus) -> tuple[np.ndarray, np.ndarray]:
    """Similarity map to a Hermitian matrix: rho = eta_+^{1/2}, h = rho H rho^{-1}.

    Requires eta_plus positive-definite and intertwining for H (checked);
    h is Hermitian up to conditioning roundoff and isospectral with H.
    Returns (rho, h).
    """
    H = as_square_matrix(H)
    E = _metric_matrix(eta_plus)
    residual = verify_intertwining(H, E)
    if residual > INTERTWINE_TOL:
        raise NotAMetric(
            f"eta does not intertwine H (residual {residual:.3e} > {INTERTWINE_TOL:g})"
        )
    rho = herm_sqrt(E)
    h = rho @ H @ np.linalg.inv(rho)
    return rho, h


def antilinear_symmetry(S: Spectrum, pairing: PairingMap) -> np.ndarray:
    """Matrix tau of an invertible antilinear map commuting with H.

    The antilinear operator is x -> tau conj(x); commutation with H reads
    H tau = tau conj(H) as matrices.  Construction: tau sends conj(phi_n)
    coordinates onto the eigenvector of the partner eigenvalue,

        tau = sum_{n real} psi_n phi_n^T
            + sum_{(n,nbar)} (psi_n phi_nbar^T + psi_nbar phi_n^T),

    which satisfies the commutation relation on a full basis by the pairing
    property and is invertible because it is (right vectors) x permutation x
    (left vectors)^T.
    """
    psi, phi = S.right, S.left
    tau = np.zeros((S.dim, S.dim), dtype=complex)
    for n in pairing.real_indices:
        tau += np.outer(psi[:, n], phi[:, n])
    for n, nbar in pairing.pairs:
        tau += np.outer(psi[:, n], phi[:, nbar])
        tau += np.outer(psi[:, nbar], phi[:, n])
    return tau


def antilinear_residual(H, tau) -> float:
    """Relative residual ||H tau - tau conj(H)|| / (||H|| ||tau||)."""
    H = as_square_matrix(H)
    tau = as_square_matrix(tau)
    denom = spectral_norm(H) * spectral_norm(tau)
    if denom == 0.0:
        return 0.0
    return spectral_norm(H @ tau - tau @ H.conj()) / denom


def transform_metric(eta, A, H, commute_tol: float = INTERTWINE_TOL) -> MetricOperator:
    """Move along the metric family: eta' = A^dag eta A for A commuting with H.

    Checks that A is invertible and commutes with H within tolerance; the
    congruence preserves the signature, so positive metrics stay positive.
    """
    H = as_square_matrix(H)
    A = as_square_matrix(A)
    E = _metric_matrix(eta)
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[-1] <= 1e-12 * sv[0]:
        raise NotInvertible("transformation A is singular within tolerance")
    denom = spectral_norm(A) * spectral_norm(H)
    if denom > 0:
        comm = spectral_norm(A @ H - H @ A) / denom
        if comm > commute_tol:
            raise NotCommuting(f"[A, H] residual {comm:.3e} exceeds {commute_tol:g}")
    return MetricOperator.from_matrix(A.conj().T @ E @ A)
