"""Quantum discord, relative-entropy discord and Hilbert-Schmidt discord of
Bell-diagonal two-qubit states under independent non-Markovian dephasing."""

__version__ = "0.1.0"

from .bellstate import (
    BellDiagonalState,
    BellSpectrum,
    BlochDecomposition,
    bloch_decomposition,
    from_density_matrix,
    is_physical,
    spectrum,
    to_density_matrix,
)
from .channel import DephasingChannel, decoherence_function, evolve, evolve_density, kraus_operators
from .correlations import (
    ClosestClassicalState,
    MeasureSet,
    binary_entropy,
    classical_correlation,
    hs_discord_bell,
    hs_discord_general,
    measure_all,
    mutual_information,
    nearest_zero_discord_state,
    quantum_discord,
    relative_entropy_discord,
)
from .critical import CriticalPoint, bandwidth_sweep, critical_time, discord_piecewise, hs_piecewise, lambert_w0
from .errors import ConvergenceError, NotBellDiagonalError, PreconditionError, UnphysicalStateError
