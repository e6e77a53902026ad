"""Numerical laboratory for a seven-level particle in a finite square well."""

from .encodings import (
    QUBIT_QUTRIT,
    THREE_QUBIT,
    EncodingMap,
    SweepRecord,
    closed_form_reduction,
    conditional_mutual_information,
    embed_7_to_8,
    mutual_information,
    qutrit_qubit_split,
    reduced_state,
)
from .errors import (
    AncillaOccupied,
    BadBitString,
    BadLevels,
    DimensionMismatch,
    NoBoundStates,
    NotDensityMatrix,
    NotHermitian,
    QuditLabError,
    ZeroDipole,
)
from .linalg import Spectrum, dagger, eig_hermitian, matmul, max_abs_diff, partial_trace, trace, von_neumann_entropy
from .pulses import (
    Pulse,
    PulseSchedule,
    evolve_pulse,
    gate_library,
    measure_parity_observable,
    oracle,
    position_density_readout,
    rotation,
    run_parity_algorithm,
)
from .thermal import GibbsSpec, gibbs_state, information_sweep
from .well import BoundState, WellSpec, dipole_matrix, solve_bound_states, wavefunction

__version__ = "0.1.0"
