"""Correlation measures for Bell-diagonal states.

All quantities are in bits. Ties between equal |c_j| are broken towards
the lowest index j; this changes only the witness states, never a value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bellstate import (
    BELL_LABELS,
    BellDiagonalState,
    bloch_decomposition,
    check_physical,
    spectrum,
    triple_from_spectrum,
)
from .linalg import xlog2x

BINARY_ENTROPY_SLACK = 1e-12


@dataclass(frozen=True)
class MeasureSet:
    D: float
    Q_R: float
    Q_S: float
    C: float
    I: float

    def as_dict(self):
        return {"D": self.D, "Q_R": self.Q_R, "Q_S": self.Q_S, "C": self.C, "I": self.I}


@dataclass(frozen=True)
class ClosestClassicalState:
    """Relative-entropy minimiser: weight Lambda/2 on each of the two
    dominant Bell projectors and (1 - Lambda)/2 on each of the others."""

    Lambda: float
    pairing: tuple
    state: BellDiagonalState


def binary_entropy(p):
    if not (-BINARY_ENTROPY_SLACK <= p <= 1.0 + BINARY_ENTROPY_SLACK):
        raise ValueError(f"binary entropy argument {p!r} is outside [0, 1]")
    p = min(max(float(p), 0.0), 1.0)
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def _argmax_abs(c):
    # first index wins on ties
    mags = [abs(x) for x in c]
    return mags.index(max(mags))


def _sum_xlogx(state):
    return float(np.sum(xlog2x(spectrum(state).values)))


def classical_correlation(state):
    check_physical(state)
    m = abs(state.c[_argmax_abs(state.c)])
    return 1.0 - binary_entropy((1.0 + m) / 2.0)


def mutual_information(state):
    check_physical(state)
    return 2.0 + _sum_xlogx(state)


def quantum_discord(state):
    return mutual_information(state) - classical_correlation(state)


def closest_classical_state(state):
    check_physical(state)
    spec = spectrum(state)
    top = spec.order[:2]
    Lam = spec.values[top[0]] + spec.values[top[1]]
    weights = [
        Lam / 2.0 if k in top else (1.0 - Lam) / 2.0 for k in range(4)
    ]
    pairing = tuple(BELL_LABELS[k] for k in sorted(top))
    return ClosestClassicalState(Lam, pairing, triple_from_spectrum(weights))


def relative_entropy_discord(state):
    """Return (Q_R, closest classical state)."""
    closest = closest_classical_state(state)
    value = _sum_xlogx(state) + binary_entropy(closest.Lambda) + 1.0
    return value, closest


def hs_discord_general(rho):
    """Hilbert-Schmidt geometric discord of an arbitrary two-qubit state."""
    bloch = bloch_decomposition(rho)
    a2 = float(bloch.alpha @ bloch.alpha)
    m2 = float(np.sum(bloch.M ** 2))
    return (a2 + m2 - bloch.delta_max) / 4.0


def hs_discord_bell(state):
    check_physical(state)
    sq = [x * x for x in state.c]
    return (sum(sq) - max(sq)) / 4.0


def nearest_zero_discord_state(state):
    check_physical(state)
    j = _argmax_abs(state.c)
    c = [0.0, 0.0, 0.0]
    c[j] = state.c[j]
    return BellDiagonalState(*c)


def measure_all(state):
    check_physical(state)
    I = mutual_information(state)
    C = classical_correlation(state)
    Q_R, _ = relative_entropy_discord(state)
    return MeasureSet(D=I - C, Q_R=Q_R, Q_S=hs_discord_bell(state), C=C, I=I)
