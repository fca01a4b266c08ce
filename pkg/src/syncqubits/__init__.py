"""Synchronization of two dissipatively coupled qubits.

A three-variable classical flow that relaxes two coupled oscillators to a
common phase, the two-qubit Lindblad equation it descends from, the full
family of stationary density matrices, and the entanglement every one of
them carries.
"""

from .classical import (
    QuasiThermoFunctions,
    StepTooLarge,
    Trajectory,
    classical_field,
    default_quasithermo,
    dissipative_field,
    integrate,
    quasithermo_field,
    schwinger_map,
)
from .entanglement import (
    BadSubsystem,
    PTSpectrumReport,
    SweepRow,
    cubic_roots,
    partial_transpose,
    ppt_analyze,
    sweep,
)
from .linalg import (
    DimMismatch,
    NotHermitian,
    SpectrumReport,
    commutator,
    hermitian_eigensystem,
    null_space,
    principal_angles,
    tensor_product,
)
from .quantum import (
    InvalidParams,
    KernelBasis,
    OperatorSet,
    PositivityLost,
    StationaryFit,
    StationaryParams,
    build_operators,
    ehrenfest_lx,
    evolve,
    kernel_basis,
    lindblad_rhs,
    liouvillian_matrix,
    project_to_stationary,
    stationary_state,
)
from .verify import CheckResult, run_all

__version__ = "0.1.0"

__all__ = [
    "BadSubsystem",
    "CheckResult",
    "DimMismatch",
    "InvalidParams",
    "KernelBasis",
    "NotHermitian",
    "OperatorSet",
    "PTSpectrumReport",
    "PositivityLost",
    "QuasiThermoFunctions",
    "SpectrumReport",
    "StationaryFit",
    "StationaryParams",
    "StepTooLarge",
    "SweepRow",
    "Trajectory",
    "build_operators",
    "classical_field",
    "commutator",
    "cubic_roots",
    "default_quasithermo",
    "dissipative_field",
    "ehrenfest_lx",
    "evolve",
    "hermitian_eigensystem",
    "integrate",
    "kernel_basis",
    "lindblad_rhs",
    "liouvillian_matrix",
    "null_space",
    "partial_transpose",
    "ppt_analyze",
    "principal_angles",
    "project_to_stationary",
    "quasithermo_field",
    "run_all",
    "schwinger_map",
    "stationary_state",
    "sweep",
    "tensor_product",
]
