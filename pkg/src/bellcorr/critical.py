"""Sudden-change critical time and the piecewise closed forms along
epsilon = -c3 trajectories.

The crossing |c1(0)| omega(tau)^2 = |c3| has the closed-form solution

    tau = (1 + eta*gamma + W0(-exp(-1 - eta*gamma))) / gamma,
    eta = -ln|c3 / c1(0)| / Gamma,

with W0 the principal branch of the Lambert W function. In the Markovian
limit tau = eta.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bellstate import BellDiagonalState, check_physical
from .channel import DephasingChannel, decoherence_function, evolve
from .correlations import binary_entropy
from .errors import ConvergenceError, PreconditionError

INV_E = math.exp(-1.0)
INV_E_LO = -1.2428753672788363e-17  # 1/e - INV_E
LAMBERT_MAX_ITER = 50
LAMBERT_TOL = 1e-13
EPSILON_TOL = 1e-12


def lambert_w0(x):
    """Principal branch of the Lambert W function for real x >= -1/e.

    Halley iteration from a branch-point series (x near -1/e) or a
    logarithmic guess, stopped once the residual ``|w e^w - x|`` is below
    ``1e-13 * max(1, |x|)`` and the last step is at round-off level.

    Raises
    ------
    ValueError
        If x < -1/e.
    ConvergenceError
        If 50 Halley steps do not reach the residual target.
    """
    x = float(x)
    if math.isnan(x):
        raise ValueError("lambert_w0 of nan")
    branch_gap = (x + INV_E) + INV_E_LO
    if branch_gap < -1e-15:
        raise ValueError(f"lambert_w0 is undefined for x={x!r} < -1/e")
    if branch_gap <= 0.0:
        return -1.0
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf

    if x < -0.25:
        p = math.sqrt(2.0 * math.e * branch_gap)
        if p < 1e-3:
            # truncation error O(p^7) is below round-off
            return _branch_series(p, terms=7)
        return _near_branch(branch_gap, _branch_series(p, terms=4))
    elif x < 3.0:
        w = math.log1p(x) * (0.8 if x > 0 else 1.0)
    else:
        lx = math.log(x)
        w = lx - math.log(lx)

    target = LAMBERT_TOL * max(1.0, abs(x))
    for _ in range(LAMBERT_MAX_ITER):
        ew = math.exp(w)
        r = w * ew - x
        if w == -1.0:
            break
        wp1 = w + 1.0
        step = r / (ew * wp1 - (w + 2.0) * r / (2.0 * wp1))
        w_new = w - step
        if w_new <= -1.0:
            # stay on the principal branch
            w_new = 0.5 * (w - 1.0)
        converged = abs(w_new - w) <= 4e-16 * (1.0 + abs(w_new))
        w = w_new
        if converged and abs(w * math.exp(w) - x) <= target:
            return w
    if abs(w * math.exp(w) - x) <= target:
        return w
    raise ConvergenceError(f"lambert_w0 did not converge for x={x!r}")


_BRANCH_COEFFS = (-1.0, 1.0, -1.0 / 3.0, 11.0 / 72.0, -43.0 / 540.0, 769.0 / 17280.0, -221.0 / 8505.0)


def _branch_series(p, terms):
    w = 0.0
    for c in reversed(_BRANCH_COEFFS[:terms]):
        w = w * p + c
    return w


def _shifted_residual_core(u):
    # (u - 1) e^u + 1 = sum_{n>=2} (n - 1) u^n / n!, free of cancellation for small u
    total = 0.0
    term = u  # u^n / n! at n = 1
    for n in range(2, 40):
        term *= u / n
        total += (n - 1) * term
        if abs(term) < 1e-18 * abs(total):
            break
    return total


def _near_branch(gap, w0):
    """Halley iteration in u = 1 + w on  e^-1 ((u-1) e^u + 1) = x + 1/e."""
    u = 1.0 + w0
    last = math.inf
    for _ in range(LAMBERT_MAX_ITER):
        eu = math.exp(u - 1.0)
        f = _shifted_residual_core(u) * INV_E - gap
        fp = u * eu
        fpp = (1.0 + u) * eu
        step = f / (fp - f * fpp / (2.0 * fp))
        u_new = u - step
        if u_new <= 0.0:
            u_new = 0.5 * u
        size = abs(u_new - u)
        # stop at round-off: a tiny step, or steps that no longer shrink
        if size <= 4e-16 * u_new or (size >= last and size <= 1e-13 * u_new):
            return u_new - 1.0
        last = size
        u = u_new
    raise ConvergenceError(f"lambert_w0 did not converge near the branch point (gap={gap!r})")


@dataclass(frozen=True)
class CriticalPoint:
    """tau is None when the state has no sudden change."""

    tau: float | None
    eta: float | None
    Gamma: float
    lambert_arg: float | None = None

    @property
    def T(self):
        """Scaled critical time Gamma * tau."""
        return None if self.tau is None else self.Gamma * self.tau

    @property
    def eta_Gamma(self):
        return None if self.eta is None else self.Gamma * self.eta

    @property
    def exists(self):
        return self.tau is not None


def tau_from_eta(eta, gamma):
    """Return (tau, Lambert W argument) for a crossing delay eta and bandwidth gamma."""
    if math.isinf(gamma):
        return eta, None
    eg = eta * gamma
    arg = -math.exp(-1.0 - eg)
    return (1.0 + eg + lambert_w0(arg)) / gamma, arg


def critical_time(state0, ch):
    check_physical(state0)
    c1, c3 = abs(state0.c1), abs(state0.c3)
    if c1 == 0.0 or c3 == 0.0 or c1 < c3:
        return CriticalPoint(None, None, ch.Gamma)
    eta = -math.log(c3 / c1) / ch.Gamma
    tau, arg = tau_from_eta(eta, ch.gamma)
    return CriticalPoint(tau, eta, ch.Gamma, arg)


def bandwidth_sweep(ratios, eta_Gamma):
    """Scaled critical time T = Gamma*tau at each bandwidth ratio gamma/Gamma."""
    if eta_Gamma <= 0:
        raise ValueError("eta_Gamma must be positive")
    out = []
    for r in ratios:
        r = float(r)
        if not r > 0:
            raise ValueError(f"bandwidth ratio must be positive, got {r!r}")
        # Gamma = 1, so eta = eta_Gamma and gamma = r
        out.append((r, tau_from_eta(eta_Gamma, r)[0]))
    return out


def check_plateau_conditions(state0, tol=EPSILON_TOL):
    """Raise PreconditionError unless |c1| >= |c2|, |c1| >= |c3| and c2/c1 = -c3."""
    c1, c2, c3 = state0.c
    if c1 == 0.0:
        raise PreconditionError("c1(0) = 0: slope epsilon = c2/c1 is undefined")
    if abs(c2) > abs(c1) or abs(c3) > abs(c1):
        raise PreconditionError(f"need |c1| >= |c2|, |c3|; got {state0.c}")
    eps = c2 / c1
    if abs(eps + c3) > tol:
        raise PreconditionError(f"need c2/c1 = -c3; got c2/c1 = {eps!r}, c3 = {c3!r}")


def _before_crossing(state0, ch, t):
    if state0.c3 == 0.0:
        # |c1(t)| never drops below |c3|: the crossing is at infinity
        return True
    return t <= critical_time(state0, ch).tau


def discord_piecewise(state0, ch, t):
    check_physical(state0)
    check_plateau_conditions(state0)
    if _before_crossing(state0, ch, t):
        return 1.0 - binary_entropy((1.0 + state0.c3) / 2.0)
    c1t = state0.c1 * decoherence_function(ch, t) ** 2
    return 1.0 - binary_entropy((1.0 + c1t) / 2.0)


def hs_piecewise(state0, ch, t):
    check_physical(state0)
    check_plateau_conditions(state0)
    st = evolve(state0, ch, t)
    if _before_crossing(state0, ch, t):
        return (st.c2 ** 2 + st.c3 ** 2) / 4.0
    return (st.c1 ** 2 + st.c2 ** 2) / 4.0


def locate_kink(t, y):
    """Find the grid cell containing a slope discontinuity.

    For each interior cell k = [t_k, t_{k+1}] the secant slopes of the two
    neighbouring cells are compared; a kink inside cell k puts those
    neighbours on different smooth branches.

    Returns
    -------
    cell : int
        Index k of the cell [t[k], t[k+1]].
    ratio : float
        Jump at that cell divided by the largest neighbour-slope difference
        more than two cells away (a within-branch curvature estimate).
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    slopes = np.diff(y) / np.diff(t)
    jumps = np.abs(slopes[2:] - slopes[:-2])  # jumps[i] belongs to cell i + 1
    i = int(np.argmax(jumps))
    cell = i + 1
    mask = np.ones_like(jumps, dtype=bool)
    mask[max(0, i - 2): i + 3] = False
    background = float(np.max(jumps[mask])) if mask.any() else 0.0
    ratio = math.inf if background == 0.0 else float(jumps[i] / background)
    return cell, ratio
