"""Casimir energies of 1+1-dimensional lattice ring fields.

Exact mode sums with continuum-matching subtraction constants, Pauli
decompositions of the qubit Hamiltonians, a statevector VQE with partitioned
per-mode runs, and an eta-deformed Wilson (chiral) fermion sector with
Dirac-sea evaluation and Jordan-Wigner mapping.
"""

__version__ = "0.1.0"

from .chiral import (
    ChiralSystem,
    DispersionPoint,
    bulk_density,
    calibrate_scale_constant,
    chiral_casimir,
    continuum_casimir_target,
    dirac_sea_energy,
    dispersion,
    dispersion_table,
    jordan_wigner_hamiltonian,
    kinetic_block,
    reference_system,
    single_particle_matrix,
    wilson_block,
)
from .hamiltonian import CapacityError, HamiltonianSpec
from .lattice import (
    Boundary,
    CasimirReport,
    ModeFamily,
    Statistics,
    casimir_exact,
    continuum_density,
    coupling_matrix,
    large_n_series,
    mode_frequency,
    mode_hamiltonian,
    mode_sum_energy,
    ring_hamiltonian,
    subtraction_constant,
)
from .operators import (
    boson_lower,
    fermion_lower,
    hermitian_eigen,
    kron_chain,
)
from .pauli import (
    PauliFormatError,
    PauliSum,
    decompose,
    decompose_diagonal,
    expectation,
    parse,
    reconstruct,
    serialize,
    term_count,
)
from .vqe import (
    Optimizer,
    VqeConfig,
    VqeResult,
    ansatz_state,
    ansatz_state_phased,
    minimize,
    partitioned_run,
    run_vqe,
)

__all__ = [
    "__version__",
    "Boundary",
    "CapacityError",
    "CasimirReport",
    "ChiralSystem",
    "DispersionPoint",
    "HamiltonianSpec",
    "ModeFamily",
    "Optimizer",
    "PauliFormatError",
    "PauliSum",
    "Statistics",
    "VqeConfig",
    "VqeResult",
    "ansatz_state",
    "ansatz_state_phased",
    "boson_lower",
    "bulk_density",
    "calibrate_scale_constant",
    "casimir_exact",
    "chiral_casimir",
    "continuum_casimir_target",
    "continuum_density",
    "coupling_matrix",
    "decompose",
    "decompose_diagonal",
    "dirac_sea_energy",
    "dispersion",
    "dispersion_table",
    "expectation",
    "fermion_lower",
    "hermitian_eigen",
    "jordan_wigner_hamiltonian",
    "kinetic_block",
    "kron_chain",
    "large_n_series",
    "minimize",
    "mode_frequency",
    "mode_hamiltonian",
    "mode_sum_energy",
    "parse",
    "partitioned_run",
    "reconstruct",
    "reference_system",
    "ring_hamiltonian",
    "run_vqe",
    "serialize",
    "single_particle_matrix",
    "subtraction_constant",
    "term_count",
    "wilson_block",
]
