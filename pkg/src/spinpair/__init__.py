"""Thermal entanglement of a two-qubit anisotropic XYZ spin pair.

Concurrence of the Gibbs state for two exchange-coupled qubits in a
nonuniform z-axis magnetic field: closed forms cross-checked by numeric
oracles, zero-temperature phase structure, critical fields and
temperatures, revival detection, and reproducible parameter sweeps.
"""

from .model import (
    EigenPair,
    EigenSystem,
    EnergyScales,
    InvalidParameterError,
    ModelParams,
    NumericFailureError,
    build_hamiltonian,
    eigensystem_closed,
    eigensystem_numeric,
    energy_scales,
    jacobi_eigh,
)
from .thermal import (
    GibbsXState,
    InternalInconsistencyError,
    InvalidStateError,
    Temperature,
    gibbs_closed,
    gibbs_oracle,
    ground_state_density,
    partition_function,
)
from .entanglement import (
    LambdaSpectrum,
    concurrence,
    concurrence_xstate_max,
    lambda_pairs_closed,
    lambdas_closed,
    lambdas_from_elements,
    thermal_concurrence,
)
from .criticality import (
    PhaseVerdict,
    RevivalReport,
    UndefinedConditionError,
    concurrence_T0,
    critical_b,
    critical_temperature,
    critical_temperature_detail,
    detect_revival,
    larger_revival_condition,
)
from .sweep import (
    FIGURE_NAMES,
    AxisSpec,
    InvalidSpecError,
    SweepGrid,
    figure_preset,
    run_sweep,
    write_grid,
)
from .verify import SuiteResult, VerificationError, bisect_critical_field, run_verification

__version__ = "0.1.0"

__all__ = [
    "AxisSpec",
    "EigenPair",
    "EigenSystem",
    "EnergyScales",
    "FIGURE_NAMES",
    "GibbsXState",
    "InternalInconsistencyError",
    "InvalidParameterError",
    "InvalidSpecError",
    "InvalidStateError",
    "LambdaSpectrum",
    "ModelParams",
    "NumericFailureError",
    "PhaseVerdict",
    "RevivalReport",
    "SuiteResult",
    "SweepGrid",
    "Temperature",
    "UndefinedConditionError",
    "VerificationError",
    "bisect_critical_field",
    "build_hamiltonian",
    "concurrence",
    "concurrence_T0",
    "concurrence_xstate_max",
    "critical_b",
    "critical_temperature",
    "critical_temperature_detail",
    "detect_revival",
    "eigensystem_closed",
    "eigensystem_numeric",
    "energy_scales",
    "figure_preset",
    "gibbs_closed",
    "gibbs_oracle",
    "ground_state_density",
    "jacobi_eigh",
    "lambda_pairs_closed",
    "lambdas_closed",
    "lambdas_from_elements",
    "larger_revival_condition",
    "partition_function",
    "run_sweep",
    "run_verification",
    "thermal_concurrence",
    "write_grid",
    "__version__",
]
