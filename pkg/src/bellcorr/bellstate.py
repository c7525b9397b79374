"""Bell-diagonal two-qubit states and the general two-qubit Bloch decomposition.

Basis ordering is |00>, |01>, |10>, |11> throughout. Bell vectors are labelled

    |chi_ab> = (|0,b> + (-1)**a |1,1^b>) / sqrt(2),    a, b in {0, 1}

so that |chi_00> = (|00> + |11>)/sqrt(2) and |chi_11> = (|01> - |10>)/sqrt(2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotBellDiagonalError, UnphysicalStateError
from .linalg import I2, PAULIS, eigvalsh

TOL_PHYS = 1e-12
TOL_BELL = 1e-10
TOL_DENSITY = 1e-12
TOL_DENSITY_EIG = 1e-10

# (a, b) labels in storage order of BellSpectrum.values
BELL_LABELS = ((0, 0), (0, 1), (1, 0), (1, 1))


def _bell_vector(a, b):
    v = np.zeros(4, dtype=complex)
    v[b] = 1.0                      # |0, b>
    v[2 + (1 - b)] = (-1) ** a      # |1, 1^b>
    return v / math.sqrt(2.0)


BELL_BASIS = np.column_stack([_bell_vector(a, b) for a, b in BELL_LABELS])
SIGMA_SIGMA = tuple(np.kron(s, s) for s in PAULIS)


@dataclass(frozen=True)
class BellDiagonalState:
    """rho = (1 + sum_j c_j sigma_j x sigma_j) / 4.

    Constructing a triple only checks that each coefficient lies in
    [-1, 1]; use :func:`is_physical` for the tetrahedron test.
    """

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or abs(value) > 1.0 + TOL_PHYS:
                raise ValueError(f"{name}={value!r} is outside [-1, 1]")
            object.__setattr__(self, name, value)

    @property
    def c(self):
        return (self.c1, self.c2, self.c3)

    def __iter__(self):
        return iter(self.c)


@dataclass(frozen=True)
class BellSpectrum:
    """The four Bell-basis eigenvalues, stored in (00, 01, 10, 11) order."""

    values: tuple

    def __getitem__(self, ab):
        a, b = ab
        return self.values[2 * a + b]

    @property
    def order(self):
        """Indices into ``values`` sorted by decreasing eigenvalue.

        Ties keep the (a, b) index order.
        """
        return tuple(sorted(range(4), key=lambda k: -self.values[k]))

    @property
    def sorted(self):
        """Eigenvalues lambda_1 >= lambda_2 >= lambda_3 >= lambda_4."""
        return tuple(self.values[k] for k in self.order)

    @property
    def Lambda(self):
        """Sum of the two largest eigenvalues."""
        s = self.sorted
        return s[0] + s[1]


@dataclass(frozen=True)
class BlochDecomposition:
    """rho = (1x1 + alpha.sigma x 1 + 1 x beta.sigma + sum M_jk sigma_j x sigma_k) / 4."""

    alpha: np.ndarray
    beta: np.ndarray
    M: np.ndarray

    @property
    def delta_max(self):
        """Largest eigenvalue of alpha alpha^T + M M^T."""
        k = np.outer(self.alpha, self.alpha) + self.M @ self.M.T
        return float(eigvalsh(k)[-1])

    def to_matrix(self):
        rho = np.kron(I2, I2).astype(complex)
        for j, sj in enumerate(PAULIS):
            rho += self.alpha[j] * np.kron(sj, I2)
            rho += self.beta[j] * np.kron(I2, sj)
            for k, sk in enumerate(PAULIS):
                rho += self.M[j, k] * np.kron(sj, sk)
        return rho / 4.0


def spectrum(state):
    """Bell-basis eigenvalues lambda_ab of a Bell-diagonal triple."""
    c1, c2, c3 = state.c
    vals = tuple(
        (1.0 + (-1) ** a * c1 - (-1) ** (a + b) * c2 + (-1) ** b * c3) / 4.0
        for a, b in BELL_LABELS
    )
    return BellSpectrum(vals)


def triple_from_spectrum(values):
    """Invert the eigenvalue map: (lambda_00, lambda_01, lambda_10, lambda_11) -> (c1, c2, c3)."""
    l00, l01, l10, l11 = values
    return BellDiagonalState(
        l00 + l01 - l10 - l11,
        -(l00 - l01 - l10 + l11),
        l00 - l01 + l10 - l11,
    )


def is_physical(state, tol=TOL_PHYS):
    return min(spectrum(state).values) >= -tol


def check_physical(state, tol=TOL_PHYS):
    """Raise UnphysicalStateError naming the most negative eigenvalue."""
    vals = spectrum(state).values
    k = int(np.argmin(vals))
    if vals[k] < -tol:
        a, b = BELL_LABELS[k]
        raise UnphysicalStateError(
            f"state {state.c} is unphysical: lambda_{a}{b} = {vals[k]:.12g} < 0"
        )
    return state


def to_density_matrix(state):
    """4x4 matrix (1 + sum_j c_j sigma_j x sigma_j) / 4."""
    check_physical(state)
    rho = np.eye(4, dtype=complex)
    for cj, ss in zip(state.c, SIGMA_SIGMA):
        rho = rho + cj * ss
    return rho / 4.0


def validate_density_matrix(rho):
    """Return rho as a complex 4x4 array, or raise ValueError."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=TOL_DENSITY, rtol=0):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > TOL_DENSITY:
        raise ValueError(f"density matrix trace {np.trace(rho).real:.15g} != 1")
    w = eigvalsh(rho)
    if w[0] < -TOL_DENSITY_EIG:
        raise ValueError(f"density matrix has negative eigenvalue {w[0]:.3g}")
    return rho


def bloch_decomposition(rho):
    rho = np.asarray(rho, dtype=complex)
    alpha = np.array([np.trace(rho @ np.kron(s, I2)).real for s in PAULIS])
    beta = np.array([np.trace(rho @ np.kron(I2, s)).real for s in PAULIS])
    M = np.array([[np.trace(rho @ np.kron(sj, sk)).real for sk in PAULIS] for sj in PAULIS])
    return BlochDecomposition(alpha, beta, M)


def from_density_matrix(rho, tol=TOL_BELL):
    """Recover (c1, c2, c3) from a Bell-diagonal density matrix."""
    bloch = bloch_decomposition(rho)
    off = bloch.M - np.diag(np.diag(bloch.M))
    worst = max(np.max(np.abs(bloch.alpha)), np.max(np.abs(bloch.beta)), np.max(np.abs(off)))
    if worst > tol:
        raise NotBellDiagonalError(
            f"matrix is not Bell-diagonal (largest Bloch/off-diagonal entry {worst:.3g})"
        )
    c = np.clip(np.diag(bloch.M), -1.0, 1.0)
    return BellDiagonalState(*c)


def sample_physical(rng, n):
    """Draw n physical triples uniformly from the tetrahedron (cube + rejection)."""
    out = []
    while len(out) < n:
        c = rng.uniform(-1.0, 1.0, size=3)
        state = BellDiagonalState(*c)
        if is_physical(state):
            out.append(state)
    return out
