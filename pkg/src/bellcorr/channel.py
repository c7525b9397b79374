"""Independent non-Markovian dephasing on each qubit.

Both qubits see the same single-qubit Kraus pair

    kappa_0(t) = diag(omega(t), 1),   kappa_1(t) = diag(sqrt(1 - omega(t)**2), 0)

with omega(t) = exp(-f(t)) and f(t) = Gamma * (t + (exp(-gamma t) - 1)/gamma) / 2.
In the Markovian limit (gamma -> infinity) f(t) = Gamma t / 2 exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .bellstate import BellDiagonalState, check_physical

SMALL_GAMMA_T = 1e-4


@dataclass(frozen=True)
class DephasingChannel:
    Gamma: float
    gamma: float = math.inf
    markovian: bool = False

    def __post_init__(self):
        if not self.Gamma > 0 or not math.isfinite(self.Gamma):
            raise ValueError(f"Gamma must be positive and finite, got {self.Gamma!r}")
        if self.markovian:
            object.__setattr__(self, "gamma", math.inf)
        elif not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise ValueError(
                f"gamma must be positive and finite (use markovian=True for the limit), got {self.gamma!r}"
            )

    @classmethod
    def markovian_limit(cls, Gamma=1.0):
        return cls(Gamma, markovian=True)

    @classmethod
    def scaled(cls, ratio=None, markovian=False):
        """Channel with Gamma = 1 so that t is measured in units of 1/Gamma."""
        if markovian:
            return cls.markovian_limit(1.0)
        return cls(1.0, float(ratio))


def _memory_integral(gamma, t):
    """t + (exp(-gamma t) - 1)/gamma without cancellation for small gamma t."""
    x = gamma * t
    if x < SMALL_GAMMA_T:
        # (x - 1 + e^-x)/gamma = (x^2/2 - x^3/6 + x^4/24 - x^5/120)/gamma
        return t * x * (0.5 - x * (1.0 / 6.0 - x * (1.0 / 24.0 - x / 120.0)))
    return (x + math.expm1(-x)) / gamma


def decay_exponent(ch, t):
    """f(t), so that omega(t) = exp(-f(t))."""
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t!r}")
    if ch.markovian:
        return ch.Gamma * t / 2.0
    return ch.Gamma * _memory_integral(ch.gamma, t) / 2.0


def decoherence_function(ch, t):
    """omega(t) in (0, 1]."""
    return math.exp(-decay_exponent(ch, t))


def single_qubit_kraus(ch, t):
    w = decoherence_function(ch, t)
    k0 = np.diag([w, 1.0])
    k1 = np.diag([math.sqrt(max(0.0, 1.0 - w * w)), 0.0])
    return k0, k1


def kraus_operators(ch, t):
    """The four two-qubit Kraus operators kappa_a x kappa_b, ordered (00, 01, 10, 11)."""
    ks = single_qubit_kraus(ch, t)
    return [np.kron(ks[a], ks[b]) for a, b in product((0, 1), repeat=2)]


def evolve(state0, ch, t):
    """Closed-form evolution (c1 w^2, c2 w^2, c3)."""
    check_physical(state0)
    w2 = decoherence_function(ch, t) ** 2
    return BellDiagonalState(state0.c1 * w2, state0.c2 * w2, state0.c3)


def evolve_density(rho0, ch, t):
    rho0 = np.asarray(rho0, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for k in kraus_operators(ch, t):
        out += k @ rho0 @ k.conj().T
    return out
