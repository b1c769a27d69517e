"""Full 2^N Hilbert-space engines used to cross-check the analytic subspace.

Bit convention: spin i (1-based) lives on bit i-1, so spin 1 is the least
significant bit; bit value 1 means the spin points down (sigma^z = -1).
The flipped-prefix state Psi_k is then the basis index with the lowest k
bits set.

Three operators are built:

  * the resonant three-spin effective Hamiltonian
        H_sec = (w1/4) sum_{i=2..N-1} sx_i (1 - sz_{i-1} sz_{i+1}),
    which flips an interior spin only when its neighbours disagree;
  * the rotating-frame transverse-field Ising Hamiltonian
        H_rot = (w1/2) sum_i sx_i + (J/4) sum_i sz_i sz_{i+1};
  * the interaction-picture drive exp(-i H_zz t) H_x exp(i H_zz t), either
    by direct conjugation (H_zz is diagonal, so entries just pick up phase
    factors) or from its expanded trigonometric form, whose time average
    over one period T = 4*pi/J is H_sec.

Evolution is spectral (dense eigendecomposition, cached per operator) up
to 10 spins and switches to scipy's sparse matrix-exponential action above
that, capped at ``DEFAULT_CAP`` spins unless overridden.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import expm_multiply

from .chain import NORM_TOL, ChainSpec, DominoAmplitudes

__all__ = [
    "DEFAULT_CAP",
    "DENSE_EIG_MAX_SITES",
    "DenseState",
    "SpinOperator",
    "psi_basis_state",
    "dense_from_subspace",
    "build_secular_full",
    "build_rotframe",
    "interaction_picture_h",
    "secular_average_check",
    "evolve_dense",
    "evolve_dense_grid",
    "dense_observables",
    "cnot_cascade",
    "dephase_outcomes",
]

DEFAULT_CAP = 14
DENSE_EIG_MAX_SITES = 10


@dataclass
class DenseState:
    """Normalized wavefunction over all 2^N computational basis states."""

    amps: np.ndarray
    n_sites: int

    def __post_init__(self) -> None:
        self.amps = np.ascontiguousarray(self.amps, dtype=np.complex128)
        if self.amps.shape != (2**self.n_sites,):
            raise ValueError(
                f"expected {2**self.n_sites} amplitudes for {self.n_sites} spins, "
                f"got shape {self.amps.shape}"
            )
        nrm2 = float(np.sum(np.abs(self.amps) ** 2))
        if abs(nrm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state norm**2 deviates from 1 by {abs(nrm2 - 1.0):.3e}")


@dataclass
class SpinOperator:
    """Sparse operator on the 2^N space, with a cached eigendecomposition."""

    matrix: sparse.csr_matrix
    n_sites: int
    hermitian: bool = True
    _eig: tuple[np.ndarray, np.ndarray] | None = field(
        default=None, repr=False, compare=False
    )

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense (eigenvalues, eigenvectors), computed once and reused."""
        if self._eig is None:
            if not self.hermitian:
                raise ValueError("eigensystem cache only supports Hermitian operators")
            w, v = np.linalg.eigh(self.matrix.toarray())
            self._eig = (w, v)
        return self._eig


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ValueError(f"{n} spins exceeds the exact-engine cap of {cap}")


def _check_j(spec: ChainSpec) -> None:
    if not spec.j_coupling > 0:
        raise ValueError(f"Ising constant J must be > 0, got {spec.j_coupling}")


def _z_diag(n: int, bit: int) -> np.ndarray:
    """sigma^z eigenvalues (+-1) of the given bit over all basis states."""
    s = np.arange(2**n)
    return 1.0 - 2.0 * ((s >> bit) & 1)


def _flip_entries(
    n: int, bit: int, z_bits: tuple[int, ...] = (), y: bool = False
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """COO entries of (prod_z sigma^z) * (sigma^y or sigma^x) at ``bit``.

    Columns run over all basis states s, rows are s with ``bit`` flipped;
    data carries the z-product (and the i*sz factor that turns sx into sy).
    """
    dim = 2**n
    cols = np.arange(dim)
    rows = cols ^ (1 << bit)
    data = np.ones(dim, dtype=np.complex128)
    for zb in z_bits:
        data *= _z_diag(n, zb)
    if y:
        data *= 1j * _z_diag(n, bit)
    return rows, cols, data


def _assemble(pieces, n: int, hermitian: bool = True) -> SpinOperator:
    dim = 2**n
    rows = np.concatenate([p[0] for p in pieces])
    cols = np.concatenate([p[1] for p in pieces])
    data = np.concatenate([p[2] for p in pieces])
    mat = sparse.csr_matrix((data, (rows, cols)), shape=(dim, dim))
    return SpinOperator(matrix=mat, n_sites=n, hermitian=hermitian)


def psi_basis_state(spec: ChainSpec, k: int, cap: int = DEFAULT_CAP) -> DenseState:
    """Psi_k as a full-space basis vector (lowest k bits set)."""
    n = spec.n_sites
    _check_cap(n, cap)
    if not 0 <= k <= n:
        raise ValueError(f"basis index must be in 0..{n}, got {k}")
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[(1 << k) - 1] = 1.0
    return DenseState(amps=amps, n_sites=n)


def dense_from_subspace(
    state: DominoAmplitudes, spec: ChainSpec, cap: int = DEFAULT_CAP
) -> DenseState:
    """Embed flipped-prefix amplitudes into the full 2^N space."""
    n = spec.n_sites
    _check_cap(n, cap)
    if state.n_sites != n:
        raise ValueError(f"state is for {state.n_sites} spins, spec for {n}")
    amps = np.zeros(2**n, dtype=np.complex128)
    prefix_idx = (1 << np.arange(n + 1)) - 1
    amps[prefix_idx] = state.c
    return DenseState(amps=amps, n_sites=n)


def build_secular_full(spec: ChainSpec, cap: int = DEFAULT_CAP) -> SpinOperator:
    """The effective resonant Hamiltonian on the full space.

    For each interior spin the flip matrix element is w1/2 when the two
    neighbours disagree and 0 when they agree, which reproduces
    (w1/4) sx_i (1 - sz_{i-1} sz_{i+1}) entry by entry.  The all-up and
    all-down states are annihilated.
    """
    n = spec.n_sites
    _check_cap(n, cap)
    dim = 2**n
    s = np.arange(dim)
    pieces = []
    for bit in range(1, n - 1):
        resonant = ((s >> (bit - 1)) & 1) != ((s >> (bit + 1)) & 1)
        cols = s[resonant]
        rows = cols ^ (1 << bit)
        data = np.full(cols.size, 0.5 * spec.omega1, dtype=np.complex128)
        pieces.append((rows, cols, data))
    return _assemble(pieces, n)


def build_rotframe(spec: ChainSpec, cap: int = DEFAULT_CAP) -> SpinOperator:
    """Transverse drive plus Ising coupling in the frame of the drive."""
    n = spec.n_sites
    _check_cap(n, cap)
    _check_j(spec)
    pieces = [_flip_entries(n, bit) for bit in range(n)]
    pieces = [(r, c, 0.5 * spec.omega1 * d) for r, c, d in pieces]
    diag = _zz_diagonal(spec)
    idx = np.arange(2**n)
    pieces.append((idx, idx, diag.astype(np.complex128)))
    return _assemble(pieces, n)


def _zz_diagonal(spec: ChainSpec) -> np.ndarray:
    """Diagonal of (J/4) sum_i sz_i sz_{i+1}."""
    n = spec.n_sites
    diag = np.zeros(2**n)
    for bit in range(n - 1):
        diag += _z_diag(n, bit) * _z_diag(n, bit + 1)
    return 0.25 * spec.j_coupling * diag


def interaction_picture_h(
    spec: ChainSpec,
    t: float,
    method: str = "conjugation",
    cap: int = DEFAULT_CAP,
) -> SpinOperator:
    """The drive term rotated by the Ising coupling, at absolute time t.

    ``method="conjugation"`` phases each entry of H_x with the diagonal
    coupling energies (definitionally correct); ``method="expanded"``
    assembles the equivalent sum of x/y Pauli strings with cos/sin(Jt)
    coefficients in the interior and cos/sin(Jt/2) at the two chain ends.
    Both constructions agree entrywise to round-off.
    """
    n = spec.n_sites
    _check_cap(n, cap)
    _check_j(spec)
    if method == "conjugation":
        energy = _zz_diagonal(spec)
        pieces = []
        for bit in range(n):
            rows, cols, data = _flip_entries(n, bit)
            phase = np.exp(-1j * (energy[rows] - energy[cols]) * t)
            pieces.append((rows, cols, 0.5 * spec.omega1 * data * phase))
        return _assemble(pieces, n)
    if method == "expanded":
        return _interaction_picture_expanded(spec, t)
    raise ValueError(f"unknown construction method {method!r}")


def _interaction_picture_expanded(spec: ChainSpec, t: float) -> SpinOperator:
    n = spec.n_sites
    w1, j = spec.omega1, spec.j_coupling
    cos_j, sin_j = np.cos(j * t), np.sin(j * t)
    cos_h, sin_h = np.cos(0.5 * j * t), np.sin(0.5 * j * t)
    pieces = []

    def add(coeff: float, rows, cols, data) -> None:
        pieces.append((rows, cols, coeff * data))

    for bit in range(1, n - 1):  # interior spins, both neighbours present
        x_plain = _flip_entries(n, bit)
        x_dressed = _flip_entries(n, bit, z_bits=(bit - 1, bit + 1))
        y_left = _flip_entries(n, bit, z_bits=(bit - 1,), y=True)
        y_right = _flip_entries(n, bit, z_bits=(bit + 1,), y=True)
        add(0.25 * w1, *x_plain)
        add(-0.25 * w1, *x_dressed)
        add(0.25 * w1 * cos_j, *x_plain)
        add(0.25 * w1 * cos_j, *x_dressed)
        add(0.25 * w1 * sin_j, *y_left)
        add(0.25 * w1 * sin_j, *y_right)
    # end spins see a single bond, hence the half-frequency terms
    add(0.5 * w1 * cos_h, *_flip_entries(n, 0))
    add(0.5 * w1 * sin_h, *_flip_entries(n, 0, z_bits=(1,), y=True))
    add(0.5 * w1 * cos_h, *_flip_entries(n, n - 1))
    add(0.5 * w1 * sin_h, *_flip_entries(n, n - 1, z_bits=(n - 2,), y=True))
    return _assemble(pieces, n)


def secular_average_check(
    spec: ChainSpec, n_nodes: int, cap: int = DEFAULT_CAP
) -> float:
    """Max-entry distance between the period-averaged drive and H_sec.

    Composite Simpson with ``n_nodes`` (even, >= 4) subintervals over one
    full period T = 4*pi/J of the interaction-picture Hamiltonian.  The
    integrand is band-limited trigonometry, so the error drops to round-off
    once the rule stops aliasing the two frequencies present.
    """
    n = spec.n_sites
    _check_cap(n, cap)
    _check_j(spec)
    if n_nodes < 4 or n_nodes % 2 != 0:
        raise ValueError(f"Simpson subinterval count must be even and >= 4, got {n_nodes}")
    period = 4.0 * np.pi / spec.j_coupling
    h = period / n_nodes
    weights = np.full(n_nodes + 1, 2.0)
    weights[1::2] = 4.0
    weights[0] = weights[-1] = 1.0
    weights *= h / 3.0

    energy = _zz_diagonal(spec)
    rows, cols, base = [], [], []
    for bit in range(n):
        r, c, d = _flip_entries(n, bit)
        rows.append(r)
        cols.append(c)
        base.append(0.5 * spec.omega1 * d)
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    base = np.concatenate(base)
    gap = energy[rows] - energy[cols]

    acc = np.zeros_like(base)
    for node in range(n_nodes + 1):
        acc += weights[node] * np.exp(-1j * gap * (node * h))
    avg_data = base * acc / period
    dim = 2**n
    avg = sparse.csr_matrix((avg_data, (rows, cols)), shape=(dim, dim))
    diff = (avg - build_secular_full(spec, cap=cap).matrix).tocoo()
    return float(np.max(np.abs(diff.data))) if diff.nnz else 0.0


def evolve_dense(state: DenseState, h: SpinOperator, t: float) -> DenseState:
    """exp(-i H t) applied to the state; exact spectral route when small."""
    _check_evolution_args(state, h)
    if state.n_sites <= DENSE_EIG_MAX_SITES:
        w, v = h.eigensystem()
        amps = v @ (np.exp(-1j * w * t) * (v.conj().T @ state.amps))
    else:
        amps = expm_multiply(-1j * t * h.matrix, state.amps)
    return DenseState(amps=amps, n_sites=state.n_sites)


def evolve_dense_grid(
    state: DenseState, h: SpinOperator, times: np.ndarray
) -> np.ndarray:
    """States at many times; row i is the amplitude vector at times[i]."""
    _check_evolution_args(state, h)
    times = np.asarray(times, dtype=float)
    if state.n_sites <= DENSE_EIG_MAX_SITES:
        w, v = h.eigensystem()
        modes = v.conj().T @ state.amps
        return (np.exp(-1j * np.outer(times, w)) * modes) @ v.T
    out = np.empty((times.size, state.amps.size), dtype=np.complex128)
    for i, t in enumerate(times):
        out[i] = expm_multiply(-1j * float(t) * h.matrix, state.amps)
    return out


def _check_evolution_args(state: DenseState, h: SpinOperator) -> None:
    if h.matrix.shape[0] != state.amps.size:
        raise ValueError(
            f"operator dimension {h.matrix.shape[0]} does not match "
            f"state dimension {state.amps.size}"
        )
    if not h.hermitian:
        raise ValueError("evolution requires an operator flagged Hermitian")


def dense_observables(state: DenseState, spec: ChainSpec) -> tuple[np.ndarray, float]:
    """Per-site <sigma^z> by bit-masked probability sums, and their total."""
    n = state.n_sites
    if spec.n_sites != n:
        raise ValueError(f"state is for {n} spins, spec for {spec.n_sites}")
    prob = np.abs(state.amps) ** 2
    per_site = np.empty(n)
    for bit in range(n):
        per_site[bit] = prob @ _z_diag(n, bit)
    return per_site, float(per_site.sum())


def cnot_cascade(
    a: complex, b: complex, spec: ChainSpec, cap: int = DEFAULT_CAP
) -> DenseState:
    """Copy (a|0> + b|1>) on spin 1 down the chain with nearest-neighbour CNOTs.

    Gates fire in the order CNOT_{1,2}, CNOT_{2,3}, ..., CNOT_{N-1,N}; each
    is a pure basis permutation, so the output a|0...0> + b|1...1> is exact.
    """
    n = spec.n_sites
    _check_cap(n, cap)
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > NORM_TOL:
        raise ValueError("|a|**2 + |b|**2 must be 1")
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = a
    amps[1] = b  # spin 1 down
    s = np.arange(2**n)
    for control_bit in range(n - 1):
        target_mask = 1 << (control_bit + 1)
        sel = s[((s >> control_bit) & 1) == 1]
        new = amps.copy()
        new[sel ^ target_mask] = amps[sel]
        amps = new
    return DenseState(amps=amps, n_sites=n)


def dephase_outcomes(state: DenseState) -> tuple[float, float, float]:
    """Weights of the all-up and all-down readings, plus everything else."""
    prob = np.abs(state.amps) ** 2
    p_up = float(prob[0])
    p_down = float(prob[-1])
    return p_up, p_down, float(np.sum(prob[1:-1]))
