"""Local quantum uncertainty and local quantum Fisher information of
qubit-qutrit axially symmetric states, in closed form and by brute force."""

__version__ = "0.1.0"

from .asymptotics import HighTCoefficients, high_t_coefficients, xxx_f0, xxx_zero_t_limit
from .closed_form import (
    CorrelationBranches,
    WMDiagonal,
    correlations,
    lqfi,
    lqfi_branches,
    lqu,
    lqu_branches,
    wm_diagonal_raw,
)
from .estimators import CorrelationTransformer, GibbsStateTransformer
from .exceptions import (
    AxialQCError,
    InvalidSpectrum,
    InvalidState,
    NonpositiveTemperature,
    NotDensityMatrix,
    NotHermitian,
    SinkError,
)
from .state import ASDensityMatrix, ASSpectrum, ValidationReport, random_state, spectrum, to_dense, validate
from .sweep import SweepRecord, SweepSpec, TransitionEvent, detect_transitions, emit_csv, sweep
from .thermal import (
    HamiltonianParams,
    energy_levels,
    gibbs_oracle,
    gibbs_spectrum,
    gibbs_state,
    hamiltonian_matrix,
    thermal_correlations,
)
