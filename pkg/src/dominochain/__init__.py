"""Simulation toolkit for the stimulated spin-flip wave in a driven Ising chain.

A weak resonant transverse drive on a 1D Ising chain turns a single flipped
end spin into a travelling wave of flips, a linear-dynamics amplifier that
converts one spin flip into a macroscopic polarization change.  The package
provides an analytic engine on the flipped-prefix subspace, closed-form
observable sums, full 2^N exact-diagonalization oracles for cross-checks, a
tridiagonal Toeplitz spectral toolkit, wave metrics, and a CLI.
"""

__version__ = "0.1.0"

from .chain import (
    ChainSpec,
    DominoAmplitudes,
    SubspaceEigenSystem,
    closed_form_site,
    closed_form_snapshot,
    closed_form_total,
    closed_form_totals,
    eigen_system,
    observables,
    propagate,
    propagate_grid,
    psi_state,
    secular_action,
    subspace_hamiltonian,
    superposition_state,
)
from .exact import (
    DEFAULT_CAP,
    DenseState,
    SpinOperator,
    build_rotframe,
    build_secular_full,
    cnot_cascade,
    dense_from_subspace,
    dense_observables,
    dephase_outcomes,
    evolve_dense,
    evolve_dense_grid,
    interaction_picture_h,
    psi_basis_state,
    secular_average_check,
)
from .metrics import (
    ENGINES,
    PeakReport,
    PolarizationSeries,
    cross_engine_deviation,
    linearity_r2,
    peak_metrics,
    per_site_series,
    series,
    wavefront_and_width,
)
from .tridiag import TridiagSpec, analytic_spectrum, det_recursion, verify_eigenpair
