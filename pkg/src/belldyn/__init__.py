"""Dephasing dynamics of classical and quantum correlations of two-qubit Bell-diagonal states.

The package simulates a two-photon polarization state dephased by
birefringent retardation, one arm filtered to a continuous Gaussian spectrum
and the other to a discrete multi-peaked one, and tracks the relative-entropy
correlation measures (total, classical, quantum, entanglement) along the
evolution: the sudden classical-to-quantum decoherence transition, the
non-Markovian revival, and polarization-exchange echoes. A brute-force
minimizer validates the closed forms, and a simulated tomography pipeline
reproduces statistical scatter and error bars.
"""

from .correlations import (
    CorrelationSet,
    bell_diagonal_state,
    bell_eigenvalues_from_kappas,
    classical_correlation_bell,
    closest_classical_bell,
    correlations_from_kappas,
    correlations_from_spectrum,
    kappa_correlation,
    quantum_correlation_bell,
    ree_bell,
    total_mutual_information_bell,
)
from .dephasing import (
    LAMBDA0,
    SPEED_OF_LIGHT,
    DephasingPoint,
    GaussianComponent,
    MultiGaussian,
    SampledSpectrum,
    SingleGaussian,
    SweepConfig,
    SweepPoint,
    angular_frequency,
    effective_retardation,
    evolve_state,
    find_crossing,
    kappa_gaussian,
    kappa_multi_gaussian,
    kappa_numeric,
    sigma_from_fwhm,
    sweep,
)
from .oracle import (
    GridSpec,
    SimplexGridSpec,
    closest_product_state,
    oracle_classical_correlation,
    oracle_quantum_correlation,
    oracle_ree_bell,
)
from .qstate import (
    dephase_in_product_basis,
    eigenvalues_sorted,
    partial_trace,
    relative_entropy,
    validate_bell_spectrum,
    validate_state,
    von_neumann_entropy,
)
from .tomography import (
    ProjectorSetting,
    TomographyRecord,
    error_bars,
    reconstruct,
    record_to_csv,
    simulate_counts,
    standard_basis_set,
)

__version__ = "0.1.0"

__all__ = [
    "CorrelationSet",
    "DephasingPoint",
    "GaussianComponent",
    "GridSpec",
    "LAMBDA0",
    "MultiGaussian",
    "ProjectorSetting",
    "SampledSpectrum",
    "SimplexGridSpec",
    "SingleGaussian",
    "SPEED_OF_LIGHT",
    "SweepConfig",
    "SweepPoint",
    "TomographyRecord",
    "angular_frequency",
    "bell_diagonal_state",
    "bell_eigenvalues_from_kappas",
    "classical_correlation_bell",
    "closest_classical_bell",
    "closest_product_state",
    "correlations_from_kappas",
    "correlations_from_spectrum",
    "dephase_in_product_basis",
    "effective_retardation",
    "eigenvalues_sorted",
    "error_bars",
    "evolve_state",
    "find_crossing",
    "kappa_correlation",
    "kappa_gaussian",
    "kappa_multi_gaussian",
    "kappa_numeric",
    "oracle_classical_correlation",
    "oracle_quantum_correlation",
    "oracle_ree_bell",
    "partial_trace",
    "quantum_correlation_bell",
    "reconstruct",
    "record_to_csv",
    "ree_bell",
    "relative_entropy",
    "sigma_from_fwhm",
    "simulate_counts",
    "standard_basis_set",
    "sweep",
    "total_mutual_information_bell",
    "validate_bell_spectrum",
    "validate_state",
    "von_neumann_entropy",
]
