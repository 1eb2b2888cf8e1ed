"""Ground states of the two-qubit quantum Rabi model.

Two engines cover the ground-state problem: a variational polaron ansatz
(superpositions of displaced, width-renormalized Gaussian packets under a
parity constraint) and a truncated-Fock-space exact diagonalization used
as the reference.  Observables, potential curves, and the multipolaron to
bipolaron crossover diagnostics are computed from either representation.
"""

from .ansatz import (
    PolaronAnsatz,
    component,
    energy,
    energy_gradient,
    from_document,
    merge_duplicate_packets,
    norm_sq,
    normalize,
)
from .ed import FockHamiltonian, GroundState, build, converged_ground, ground_state
from .errors import (
    ConvergenceError,
    DegenerateAnsatzError,
    NumericError,
    ParameterError,
    Rabi2Error,
    TruncationError,
)
from .gaussian import (
    GaussianPacket,
    displaced_h,
    hermite_functions,
    mel_x,
    mel_x2,
    mel_p2,
    overlap,
    project_to_fock,
)
from .model import DerivedScales, ModelParams, derive
from .observables import (
    FIELD_NAMES,
    ObservableSet,
    crossover_point,
    from_ansatz,
    from_fock,
    potential_curves,
)
from .optimizer import OptimConfig, OptimResult, default_starts, minimize

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DegenerateAnsatzError",
    "DerivedScales",
    "FIELD_NAMES",
    "FockHamiltonian",
    "GaussianPacket",
    "GroundState",
    "ModelParams",
    "NumericError",
    "ObservableSet",
    "OptimConfig",
    "OptimResult",
    "ParameterError",
    "PolaronAnsatz",
    "Rabi2Error",
    "TruncationError",
    "build",
    "component",
    "converged_ground",
    "crossover_point",
    "default_starts",
    "derive",
    "displaced_h",
    "energy",
    "energy_gradient",
    "from_ansatz",
    "from_document",
    "from_fock",
    "ground_state",
    "hermite_functions",
    "mel_p2",
    "mel_x",
    "mel_x2",
    "merge_duplicate_packets",
    "minimize",
    "norm_sq",
    "normalize",
    "overlap",
    "potential_curves",
    "project_to_fock",
]
