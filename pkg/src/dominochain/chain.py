"""Analytic engine for the stimulated spin-flip wave in a driven Ising chain.

Everything here lives in the flipped-prefix basis: Psi_k is the product
state of an N-spin chain whose first k spins point down and whose remaining
spins point up (k = 0..N).  Under the secular part of a weak resonant
transverse drive, only the interior spin adjacent to the up/down boundary is
resonant, so the Hamiltonian acts within span{Psi_0..Psi_N}:

    H Psi_0 = H Psi_N = 0
    H Psi_1 = (w1/2) Psi_2
    H Psi_k = (w1/2) (Psi_{k-1} + Psi_{k+1})     for 2 <= k <= N-2
    H Psi_{N-1} = (w1/2) Psi_{N-2}

The k = 1..N-1 block is a symmetric tridiagonal Toeplitz matrix with zero
diagonal and off-diagonal w1/2, so the spectrum is closed-form:

    lam_p = -w1 * cos(p*pi/N),                            p = 1..N-1
    phi_p[k] = (-1)**(k-1) * sqrt(2/N) * sin(p*k*pi/N),   k = 1..N-1

Propagation is spectral (exact up to round-off), and the polarization
observables seeded from Psi_1 reduce to explicit double mode sums whose
oscillation frequencies are the eigenvalue differences lam_r - lam_p.
All public time arguments are the dimensionless tau = w1 * t.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "NORM_TOL",
    "ChainSpec",
    "DominoAmplitudes",
    "SubspaceEigenSystem",
    "psi_state",
    "superposition_state",
    "secular_action",
    "subspace_hamiltonian",
    "eigen_system",
    "propagate",
    "propagate_grid",
    "observables",
    "closed_form_total",
    "closed_form_totals",
    "closed_form_site",
    "closed_form_snapshot",
]

# Input states must be normalized this tightly; nothing is renormalized
# silently, a violation is always an error.
NORM_TOL = 1e-9


@dataclass(frozen=True)
class ChainSpec:
    """Chain length and drive/coupling constants shared by every engine.

    ``omega1`` is the drive amplitude (defaults to 1 so times are the
    dimensionless tau), ``j_coupling`` the Ising constant consumed only by
    the full-Hilbert-space engines, and ``omega0_meta`` an optional record
    of the resonance frequency, carried as documentation only.
    """

    n_sites: int
    omega1: float = 1.0
    j_coupling: float = 10.0
    omega0_meta: float | None = None

    def __post_init__(self) -> None:
        if self.n_sites < 3:
            raise ValueError(
                f"need at least 3 spins for a nontrivial interior, got {self.n_sites}"
            )
        if not self.omega1 > 0:
            raise ValueError(f"drive amplitude omega1 must be > 0, got {self.omega1}")
        if not np.isfinite(self.j_coupling):
            raise ValueError("j_coupling must be finite")


@dataclass
class DominoAmplitudes:
    """Complex amplitudes over the flipped-prefix basis, c[k] on Psi_k."""

    c: np.ndarray

    def __post_init__(self) -> None:
        self.c = np.ascontiguousarray(self.c, dtype=np.complex128)
        if self.c.ndim != 1 or self.c.size < 4:
            raise ValueError("amplitude vector must be 1-D with N+1 >= 4 entries")
        _check_norm(self.c)

    @property
    def n_sites(self) -> int:
        return self.c.size - 1


@dataclass(frozen=True)
class SubspaceEigenSystem:
    """Closed-form eigenpairs of the k = 1..N-1 tridiagonal block.

    ``vectors[:, p-1]`` is the unit eigenvector for ``lambdas[p-1]``; both
    are real and the columns are orthonormal by construction.
    """

    lambdas: np.ndarray
    vectors: np.ndarray


def _check_norm(c: np.ndarray) -> None:
    total = float(np.sum(np.abs(c) ** 2))
    if abs(total - 1.0) > NORM_TOL:
        raise ValueError(f"state norm**2 deviates from 1 by {abs(total - 1.0):.3e}")


def _check_state(state: DominoAmplitudes, spec: ChainSpec) -> None:
    if state.n_sites != spec.n_sites:
        raise ValueError(
            f"state is for {state.n_sites} spins, spec for {spec.n_sites}"
        )
    _check_norm(state.c)


def psi_state(spec: ChainSpec, k: int) -> DominoAmplitudes:
    """The basis state Psi_k (first k spins flipped) as an amplitude vector."""
    if not 0 <= k <= spec.n_sites:
        raise ValueError(f"basis index must be in 0..{spec.n_sites}, got {k}")
    c = np.zeros(spec.n_sites + 1, dtype=np.complex128)
    c[k] = 1.0
    return DominoAmplitudes(c)


def superposition_state(spec: ChainSpec, a: complex, b: complex) -> DominoAmplitudes:
    """a*Psi_0 + b*Psi_1, the triggered-measurement initial condition."""
    c = np.zeros(spec.n_sites + 1, dtype=np.complex128)
    c[0] = a
    c[1] = b
    return DominoAmplitudes(c)


def secular_action(k: int, spec: ChainSpec) -> list[tuple[int, float]]:
    """Expansion of H_secular Psi_k over the flipped-prefix basis.

    Returns (basis index, coefficient) pairs; empty for the two frozen
    states k = 0 and k = N.
    """
    n, half = spec.n_sites, 0.5 * spec.omega1
    if not 0 <= k <= n:
        raise ValueError(f"basis index must be in 0..{n}, got {k}")
    if k == 0 or k == n:
        return []
    if k == 1:
        return [(2, half)]
    if k == n - 1:
        return [(n - 2, half)]
    return [(k - 1, half), (k + 1, half)]


def subspace_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """The (N-1)x(N-1) block on span{Psi_1..Psi_{N-1}} as a dense array."""
    m = spec.n_sites - 1
    h = np.zeros((m, m))
    off = 0.5 * spec.omega1
    idx = np.arange(m - 1)
    h[idx, idx + 1] = off
    h[idx + 1, idx] = off
    return h


@lru_cache(maxsize=None)
def _mode_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Dimensionless spectral data for chain length n: (cos(p*pi/n), vectors)."""
    m = n - 1
    p = np.arange(1, m + 1)
    theta = p * (np.pi / n)
    cosines = np.cos(theta)
    k = np.arange(1, m + 1)
    signs = np.where(k % 2 == 1, 1.0, -1.0)
    vectors = signs[:, None] * (np.sqrt(2.0 / n) * np.sin(np.outer(k, theta)))
    cosines.flags.writeable = False
    vectors.flags.writeable = False
    return cosines, vectors


def eigen_system(spec: ChainSpec) -> SubspaceEigenSystem:
    """Analytic eigenpairs of the tridiagonal block; nothing is diagonalized."""
    cosines, vectors = _mode_tables(spec.n_sites)
    return SubspaceEigenSystem(lambdas=-spec.omega1 * cosines, vectors=vectors)


def propagate(state: DominoAmplitudes, tau: float, spec: ChainSpec) -> DominoAmplitudes:
    """Advance a subspace state by dimensionless time tau, spectrally.

    c_0 and c_N ride through untouched (they sit on eigenvalue 0); the
    interior block picks up the mode phases exp(i*cos(p*pi/N)*tau).  There
    is no time stepping, so any tau (including negative, which is evolution
    under the sign-flipped Hamiltonian) is exact to round-off.
    """
    _check_state(state, spec)
    cosines, vectors = _mode_tables(spec.n_sites)
    c = state.c.copy()
    modes = vectors.T @ c[1:-1]
    modes *= np.exp(1j * tau * cosines)
    c[1:-1] = vectors @ modes
    return DominoAmplitudes(c)


def propagate_grid(
    state: DominoAmplitudes, taus: np.ndarray, spec: ChainSpec
) -> np.ndarray:
    """Amplitudes at many times at once; row i is the state at taus[i]."""
    _check_state(state, spec)
    taus = np.asarray(taus, dtype=float)
    cosines, vectors = _mode_tables(spec.n_sites)
    modes = vectors.T @ state.c[1:-1]
    phases = np.exp(1j * np.outer(taus, cosines))
    out = np.empty((taus.size, spec.n_sites + 1), dtype=np.complex128)
    out[:, 0] = state.c[0]
    out[:, -1] = state.c[-1]
    out[:, 1:-1] = (phases * modes) @ vectors.T
    return out


def observables(
    state: DominoAmplitudes, spec: ChainSpec
) -> tuple[np.ndarray, float]:
    """Per-site polarizations p_m (m = 1..N) and the total P.

    Psi_k contributes +1 to every site beyond the flipped prefix and -1
    inside it, so p_m and P = sum_m p_m are weighted sums of |c_k|**2.
    """
    _check_state(state, spec)
    prob = np.abs(state.c) ** 2
    return _polarizations(prob, spec.n_sites)


def _polarizations(prob: np.ndarray, n: int) -> tuple[np.ndarray, float]:
    k = np.arange(n + 1)
    total = float(prob @ (n - 2.0 * k))
    cum = np.cumsum(prob)
    per_site = 2.0 * cum[:-1] - cum[-1]
    return per_site, total


# --- closed-form observables (Psi_1 seed) -----------------------------------
#
# With c_k(t) = sum_p phi_p[k] phi_p[1] exp(-i lam_p t), the populations
# |c_k|**2 expand into cos((lam_r - lam_p) t) terms, and
#
#   P(tau)  = (4/N**2) sum_{k,p,r} (N-2k) s_pk s_p1 s_rk s_r1 cos(dc_pr*tau)
#   p_m(tau)= (4/N**2) (sum_{k<m} - sum_{k>=m}) ...same summand...
#
# where s_pk = sin(p*k*pi/N) and dc_pr = cos(p*pi/N) - cos(r*pi/N) is the
# eigenvalue difference (lam_r - lam_p)/w1.  These sums are evaluated
# literally, as an arithmetic path independent of the spectral propagator.


@lru_cache(maxsize=None)
def _closed_form_tables(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(total-weight matrix, per-site weight tensor, frequency matrix) for length n."""
    m = n - 1
    p = np.arange(1, m + 1)
    k = np.arange(1, m + 1)
    sines = np.sin(np.outer(p, k) * (np.pi / n))  # s_pk
    mode_weight = sines[:, 0]  # s_p1
    coeff = np.outer(mode_weight, mode_weight)
    total_w = ((n - 2.0 * k) * sines) @ sines.T * coeff
    site_sign = np.where(k[None, :] < np.arange(1, n + 1)[:, None], 1.0, -1.0)
    site_w = np.einsum("mk,pk,rk->mpr", site_sign, sines, sines, optimize=True)
    site_w *= coeff
    cosines = np.cos(p * (np.pi / n))
    freq = cosines[:, None] - cosines[None, :]
    for arr in (total_w, site_w, freq):
        arr.flags.writeable = False
    return total_w, site_w, freq


def closed_form_total(tau: float, spec: ChainSpec) -> float:
    """Total polarization at tau for the Psi_1-seeded wave, by the mode sum."""
    total_w, _, freq = _closed_form_tables(spec.n_sites)
    n = spec.n_sites
    return 4.0 / n**2 * float(np.sum(total_w * np.cos(freq * tau)))


def closed_form_totals(taus: np.ndarray, spec: ChainSpec) -> np.ndarray:
    """closed_form_total evaluated on a whole time grid."""
    total_w, _, freq = _closed_form_tables(spec.n_sites)
    n = spec.n_sites
    taus = np.asarray(taus, dtype=float)
    out = np.empty(taus.size)
    for i, tau in enumerate(taus.ravel()):
        out[i] = np.sum(total_w * np.cos(freq * tau))
    return 4.0 / n**2 * out.reshape(taus.shape)


def closed_form_site(m: int, tau: float, spec: ChainSpec) -> float:
    """Polarization of site m (1-based) at tau for the Psi_1-seeded wave."""
    n = spec.n_sites
    if not 1 <= m <= n:
        raise ValueError(f"site index must be in 1..{n}, got {m}")
    _, site_w, freq = _closed_form_tables(n)
    return 4.0 / n**2 * float(np.sum(site_w[m - 1] * np.cos(freq * tau)))


def closed_form_snapshot(tau: float, spec: ChainSpec) -> np.ndarray:
    """All N per-site polarizations at tau, from the same mode sums."""
    _, site_w, freq = _closed_form_tables(spec.n_sites)
    n = spec.n_sites
    return 4.0 / n**2 * np.einsum("mpr,pr->m", site_w, np.cos(freq * tau))
