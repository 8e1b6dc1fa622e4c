"""Free Klein-Gordon field on a periodic 1D lattice, spectral form.

The field ``[d_t^2 + D] psi = 0`` with D = -d_x^2 + m^2 (c = hbar = 1) is
stored per Fourier mode as positive/negative-frequency amplitudes, so time
evolution is an exact phase rotation and every inner product can be checked
against its mode-sum form.  The two-component (Feshbach-Villars) reduction

    phi = (psi + (i/m) d_t psi)/2,   chi = (psi - (i/m) d_t psi)/2

turns the field equation into i d_t Psi = H Psi with
H = (sigma3 + i sigma2) p^2/(2m) + m sigma3, which is Hermitian with
respect to the indefinite sigma3 block metric and has spectrum
+/- omega_k, omega_k = sqrt(k^2 + m^2).

Conventions: mode amplitudes reconstruct the position-space field as
psi(x, t) = L^{-1/2} sum_k (a_k e^{-i omega_k t} + b_k e^{+i omega_k t})
e^{ikx}; discrete integrals carry the quadrature weight dx = L/N.  With
this normalization the positive-definite inner product reduces exactly to
(1/mu) sum_k omega_k (conj(a1) a2 + conj(b1) b2) and the Klein-Gordon one
to 2 sum_k omega_k (conj(a1) a2 - conj(b1) b2).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import GridMismatch, InvalidGrid, TimeMismatch


@dataclass(frozen=True)
class FourierGrid:
    """Periodic lattice of N sites on [0, L) with mass m and dispersion table."""

    N: int
    L: float
    m: float
    k: np.ndarray      # momenta 2*pi*j/L in FFT ordering
    omega: np.ndarray  # sqrt(k^2 + m^2), >= m

    @property
    def k_values(self) -> np.ndarray:
        return self.k

    @property
    def dx(self) -> float:
        return self.L / self.N

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.N) * self.dx

    def compatible(self, other: "FourierGrid") -> bool:
        return self.N == other.N and self.L == other.L and self.m == other.m


def make_grid(N: int, L: float, m: float) -> FourierGrid:
    """Build the lattice and its dispersion table omega_k = sqrt(k^2 + m^2)."""
    if int(N) != N or N < 2:
        raise InvalidGrid(f"need at least 2 sites, got N={N}")
    if not (L > 0):
        raise InvalidGrid(f"period must be positive, got L={L}")
    if not (m > 0):
        raise InvalidGrid(f"mass must be positive, got m={m} (massless excluded)")
    N = int(N)
    k = 2 * np.pi * np.fft.fftfreq(N, d=L / N)
    return FourierGrid(N=N, L=float(L), m=float(m), k=k, omega=np.sqrt(k**2 + m**2))


@dataclass(frozen=True)
class KGState:
    """Klein-Gordon field as per-mode frequency amplitudes at time t.

    a_k multiplies e^{-i omega_k t} (positive frequency), b_k multiplies
    e^{+i omega_k t} (negative frequency); both arrays have length grid.N.
    """

    grid: FourierGrid
    a: np.ndarray
    b: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        if self.a.shape != (self.grid.N,) or self.b.shape != (self.grid.N,):
            raise ValueError("amplitude arrays must have length N")


def random_state(grid: FourierGrid, seed=None, rng=None) -> KGState:
    """State with standard complex Gaussian amplitudes (for sampling checks)."""
    if rng is None:
        rng = np.random.default_rng(seed)
    a = rng.standard_normal(grid.N) + 1j * rng.standard_normal(grid.N)
    b = rng.standard_normal(grid.N) + 1j * rng.standard_normal(grid.N)
    return KGState(grid=grid, a=a, b=b, t=0.0)


def _check_same_frame(s1: KGState, s2: KGState):
    if not s1.grid.compatible(s2.grid):
        raise GridMismatch("states live on different grids")
    if abs(s1.t - s2.t) > 1e-12 * (1.0 + max(abs(s1.t), abs(s2.t))):
        raise TimeMismatch(f"states at different times {s1.t} vs {s2.t}")


def _mode_values(state: KGState):
    """Instantaneous mode coefficients (A_k, dA_k/dt) at the state's time."""
    w = state.grid.omega
    ep = np.exp(-1j * w * state.t)
    em = np.exp(+1j * w * state.t)
    A = state.a * ep + state.b * em
    Adot = -1j * w * (state.a * ep - state.b * em)
    return A, Adot


def position_fields(state: KGState):
    """Samples (psi(x), d_t psi(x)) on the lattice at the state's time."""
    A, Adot = _mode_values(state)
    scale = state.grid.N / np.sqrt(state.grid.L)
    return np.fft.ifft(A) * scale, np.fft.ifft(Adot) * scale


def d_power(grid: FourierGrid, s: float, field: np.ndarray) -> np.ndarray:
    """Apply D^s = (-d_x^2 + m^2)^s to per-mode coefficients.

    Diagonal functional calculus: mode k is multiplied by (k^2 + m^2)^s,
    well-defined for any real s since m > 0.
    """
    field = np.asarray(field, dtype=complex)
    if field.shape != (grid.N,):
        raise ValueError(f"field must have length {grid.N}")
    return (grid.k**2 + grid.m**2) ** s * field


def fv_hamiltonian(grid: FourierGrid) -> np.ndarray:
    """Two-component Hamiltonian (2N x 2N) in the Fourier basis.

    H = (sigma3 + i sigma2) x p^2/(2m) + m (sigma3 x 1) with p^2 = diag(k^2);
    block layout [[T + m, T], [-T, -T - m]] with T = diag(k^2/(2m)).
    sigma3 x 1 intertwines H with its adjoint exactly, and the eigenvalues
    come in +/- omega_k pairs.
    """
    T = np.diag(grid.k**2 / (2 * grid.m)).astype(complex)
    I = np.eye(grid.N, dtype=complex)
    m = grid.m
    top = np.hstack([T + m * I, T])
    bot = np.hstack([-T, -T - m * I])
    return np.vstack([top, bot])


def sigma3_metric(grid: FourierGrid) -> np.ndarray:
    """The indefinite block metric sigma3 x identity on the two-component space."""
    I = np.eye(grid.N)
    return np.block([[I, np.zeros_like(I)], [np.zeros_like(I), -I]]).astype(complex)


def fv_components(state: KGState) -> np.ndarray:
    """Two-component Fourier coefficients (phi_k, chi_k) of the state.

    Satisfies i d_t Psi = fv_hamiltonian(grid) Psi along the exact evolution.
    """
    A, Adot = _mode_values(state)
    phi = 0.5 * (A + 1j * Adot / state.grid.m)
    chi = 0.5 * (A - 1j * Adot / state.grid.m)
    return np.concatenate([phi, chi])


def evolve(state: KGState, dt: float) -> KGState:
    """Exact evolution: amplitudes are constants of motion, only t advances.

    The reconstruction phases e^{-/+ i omega_k t} carry the dynamics, so
    evolve(dt1) then evolve(dt2) equals evolve(dt1 + dt2) exactly.
    """
    return replace(state, t=state.t + dt)


def pd_inner(psi1: KGState, psi2: KGState, mu: float | None = None) -> complex:
    """Positive-definite inner product of two fields at equal time.

    Discrete form of (1/2 mu) * integral of
    [psi1^* D^{1/2} psi2 + d_t psi1^* D^{-1/2} d_t psi2] with dx = L/N;
    mu > 0 only sets the overall scale and defaults to the mass.  Equals
    (1/mu) sum_k omega_k (conj(a1) a2 + conj(b1) b2), hence conserved and
    positive-definite on nonzero states.
    """
    _check_same_frame(psi1, psi2)
    grid = psi1.grid
    if mu is None:
        mu = grid.m
    if not (mu > 0):
        raise ValueError("mu must be positive")
    f1, g1 = position_fields(psi1)
    f2, g2 = position_fields(psi2)
    half = np.fft.ifft(d_power(grid, 0.5, np.fft.fft(f2)))
    minus_half = np.fft.ifft(d_power(grid, -0.5, np.fft.fft(g2)))
    total = np.sum(np.conj(f1) * half) + np.sum(np.conj(g1) * minus_half)
    return complex(total * grid.dx / (2 * mu))


def kg_inner(psi1: KGState, psi2: KGState) -> complex:
    """Conserved indefinite (Klein-Gordon) inner product at equal time.

    i * integral of [psi1^* d_t psi2 - (d_t psi1)^* psi2] with dx = L/N;
    the sesquilinear form Hermitian for the sigma3 block metric.  Equals
    2 sum_k omega_k (conj(a1) a2 - conj(b1) b2): positive on pure
    positive-frequency states, negative on pure negative-frequency ones,
    and zero on the mixed null vectors that witness indefiniteness.
    """
    _check_same_frame(psi1, psi2)
    grid = psi1.grid
    f1, g1 = position_fields(psi1)
    f2, g2 = position_fields(psi2)
    total = np.sum(np.conj(f1) * g2) - np.sum(np.conj(g1) * f2)
    return complex(1j * grid.dx * total)


def sector_decompose(state: KGState) -> tuple[KGState, KGState]:
    """Split into (positive-frequency part, negative-frequency part).

    The parts sum to the state, pd_inner is additive across them, and
    kg_inner is >= 0 on the positive part and <= 0 on the negative part.
    """
    zero = np.zeros_like(state.a)
    positive = replace(state, a=state.a.copy(), b=zero)
    negative = replace(state, a=zero.copy(), b=state.b.copy())
    return positive, negative


def kg_state_to_json(state: KGState) -> dict:
    """Serializable form: {N, L, m, t, a_re[], a_im[], b_re[], b_im[]}."""
    return {
        "N": state.grid.N,
        "L": state.grid.L,
        "m": state.grid.m,
        "t": state.t,
        "a_re": state.a.real.tolist(),
        "a_im": state.a.imag.tolist(),
        "b_re": state.b.real.tolist(),
        "b_im": state.b.imag.tolist(),
    }


def kg_state_from_json(data: dict) -> KGState:
    """Inverse of kg_state_to_json."""
    grid = make_grid(data["N"], data["L"], data["m"])
    a = np.asarray(data["a_re"], dtype=float) + 1j * np.asarray(data["a_im"], dtype=float)
    b = np.asarray(data["b_re"], dtype=float) + 1j * np.asarray(data["b_im"], dtype=float)
    return KGState(grid=grid, a=a, b=b, t=float(data["t"]))
