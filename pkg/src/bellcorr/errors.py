"""Exception types raised by bellcorr."""


class UnphysicalStateError(ValueError):
    """A Bell-diagonal triple lies outside the tetrahedron of physical states."""


class NotBellDiagonalError(ValueError):
    """A density matrix has local Bloch vectors or off-diagonal correlations."""


class PreconditionError(ValueError):
    """A closed-form expression was called outside its region of validity."""


class ConvergenceError(RuntimeError):
    """An iterative routine (Lambert W, Jacobi) failed to converge."""
