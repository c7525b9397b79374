"""Brute-force cross-checks for the closed-form measures.

Every routine here works from the 4x4 density matrix and a grid search
followed by one local refinement, so it shares no formula with
:mod:`bellcorr.correlations` beyond the state's matrix realisation.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .bellstate import BELL_BASIS, SIGMA_SIGMA, to_density_matrix
from .linalg import I2, PAULIS, partial_trace, von_neumann_entropy, xlog2x

ZERO_PROB = 1e-14

# the three ways of splitting the four Bell projectors into two pairs
PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


@dataclass(frozen=True)
class GridSpec:
    n_theta: int = 181
    n_phi: int = 360
    n_lambda: int = 1001
    n_axis: int = 2001
    refine: bool = True

    def __post_init__(self):
        for name in ("n_theta", "n_phi", "n_lambda", "n_axis"):
            if getattr(self, name) < 2:
                raise ValueError(f"{name} must be >= 2")


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective measurement along the Bloch direction (theta, phi)."""

    theta: float
    phi: float

    @property
    def direction(self):
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def projectors(self):
        ns = sum(nj * s for nj, s in zip(self.direction, PAULIS))
        return (I2 + ns) / 2.0, (I2 - ns) / 2.0


def _projectors(theta, phi):
    st = np.sin(theta)
    n = np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)
    ns = np.einsum("nk,kij->nij", n, np.stack(PAULIS))
    return (I2 + ns) / 2.0, (I2 - ns) / 2.0


def _entropy_2x2(x, q):
    """Entropy of x/q for a batch of unnormalised 2x2 Hermitian matrices."""
    a = x[:, 0, 0].real
    d = x[:, 1, 1].real
    b = x[:, 0, 1]
    disc = np.sqrt((a - d) ** 2 + 4.0 * np.abs(b) ** 2)
    safe_q = np.where(q > ZERO_PROB, q, 1.0)
    lp = (a + d + disc) / (2.0 * safe_q)
    lm = (a + d - disc) / (2.0 * safe_q)
    return -(xlog2x(np.clip(lp, 0, 1)) + xlog2x(np.clip(lm, 0, 1)))


def _flat_projectors(theta, phi):
    # row n holds B_k[d, c] at position (c, d)
    return [np.transpose(p, (0, 2, 1)).reshape(-1, 4) for p in _projectors(theta, phi)]


@functools.lru_cache(maxsize=8)
def _grid_projectors(n_theta, n_phi):
    thetas = np.linspace(0.0, math.pi, n_theta)
    phis = np.arange(n_phi) * (2.0 * math.pi / n_phi)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    return tt.ravel(), pp.ravel(), _flat_projectors(tt.ravel(), pp.ravel())


def _information_gain(rho, theta, phi, s_a=None, flat=None):
    """S(rho_A) - sum_k q_k S(rho_A^k) for measurements on B along each direction."""
    if s_a is None:
        s_a = von_neumann_entropy(partial_trace(rho, 0))
    if flat is None:
        flat = _flat_projectors(np.atleast_1d(theta), np.atleast_1d(phi))
    # Tr_B[(1 x B_k) rho (1 x B_k)] = Tr_B[rho (1 x B_k)] because B_k^2 = B_k;
    # as a contraction: X_ij = sum_{c,d} rho[(i,c),(j,d)] B_k[d,c]
    r = rho.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)   # [(i,j),(c,d)]
    total = 0.0
    for bt in flat:
        rho_a = (bt @ r.T).reshape(-1, 2, 2)
        q = (rho_a[:, 0, 0] + rho_a[:, 1, 1]).real
        s_k = _entropy_2x2(rho_a, q)
        total += np.where(q > ZERO_PROB, q * s_k, 0.0)
    return s_a - total


def optimize_classical_correlation(rho, grid=GridSpec()):
    """Maximise the measurement-induced information over projective
    measurements on B. Returns (value in bits, MeasurementBasis)."""
    rho = np.asarray(rho, dtype=complex)
    tt, pp, flat = _grid_projectors(grid.n_theta, grid.n_phi)
    s_a = von_neumann_entropy(partial_trace(rho, 0))
    values = _information_gain(rho, tt, pp, s_a, flat)
    k = int(np.argmax(values))
    best = float(values[k])
    best_angles = (float(tt[k]), float(pp[k]))

    if grid.refine:
        res = optimize.minimize(
            lambda x: -float(_information_gain(rho, x[0], x[1], s_a)[0]),
            np.array(best_angles),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-15, "maxiter": 2000},
        )
        if -res.fun > best:
            best = float(-res.fun)
            best_angles = (float(res.x[0]), float(res.x[1]))

    theta, phi = best_angles
    # fold back to theta in [0, pi], phi in [0, 2 pi)
    n = MeasurementBasis(theta, phi).direction
    theta = math.acos(max(-1.0, min(1.0, n[2])))
    phi = math.atan2(n[1], n[0]) % (2.0 * math.pi)
    return best, MeasurementBasis(theta, phi)


def _relative_entropy_scan(weights, pairing, lambdas, s_rho):
    """S(rho || upsilon) for upsilon = Lambda/2 on the first pair, (1-Lambda)/2 on the second."""
    first, second = pairing
    lambdas = np.atleast_1d(lambdas)
    out = np.full(lambdas.shape, -s_rho)
    for group, share in ((first, lambdas / 2.0), (second, (1.0 - lambdas) / 2.0)):
        for k in group:
            p = weights[k]
            if p <= ZERO_PROB:
                continue
            with np.errstate(divide="ignore"):
                out = out - p * np.log2(share)
    return np.where(np.isnan(out), np.inf, out)


def min_relative_entropy_to_classical(state, grid=GridSpec()):
    """Minimum of S(rho || upsilon) over classical Bell-diagonal upsilon."""
    rho = to_density_matrix(state)
    weights = np.einsum("ik,ij,jk->k", BELL_BASIS.conj(), rho, BELL_BASIS).real
    s_rho = von_neumann_entropy(rho)
    lambdas = np.linspace(0.0, 1.0, grid.n_lambda)
    best = math.inf
    for pairing in PAIRINGS:
        vals = _relative_entropy_scan(weights, pairing, lambdas, s_rho)
        i = int(np.argmin(vals))
        best = min(best, float(vals[i]))
        if grid.refine and math.isfinite(vals[i]):
            lo = lambdas[max(i - 1, 0)]
            hi = lambdas[min(i + 1, len(lambdas) - 1)]
            res = optimize.minimize_scalar(
                lambda lam: float(_relative_entropy_scan(weights, pairing, lam, s_rho)[0]),
                bounds=(lo, hi),
                method="bounded",
                options={"xatol": 1e-13},
            )
            if res.success and res.fun < best:
                best = float(res.fun)
    return best


def hs_distance(rho1, rho2):
    """Squared Hilbert-Schmidt distance Tr((rho1 - rho2)^2)."""
    d = np.asarray(rho1, dtype=complex) - np.asarray(rho2, dtype=complex)
    return float(np.einsum("ij,ji->", d, d).real)


def _zero_discord_matrices(axis, cs):
    cs = np.atleast_1d(cs)
    return (np.eye(4) + cs[:, None, None] * SIGMA_SIGMA[axis]) / 4.0


def _axis_distances(rho, axis, cs):
    d = rho[None, :, :] - _zero_discord_matrices(axis, cs)
    return np.einsum("nij,nji->n", d, d).real


def hs_axis_minima(state, grid=GridSpec()):
    """Per-axis minimum of the HS distance to (1 + c sigma_j x sigma_j)/4.

    Returns a list of (distance, c) for j = 1, 2, 3.
    """
    rho = to_density_matrix(state)
    cs = np.linspace(-1.0, 1.0, grid.n_axis)
    out = []
    for axis in range(3):
        vals = _axis_distances(rho, axis, cs)
        i = int(np.argmin(vals))
        best, best_c = float(vals[i]), float(cs[i])
        if grid.refine:
            lo, hi = cs[max(i - 1, 0)], cs[min(i + 1, len(cs) - 1)]
            res = optimize.minimize_scalar(
                lambda c: float(_axis_distances(rho, axis, c)[0]),
                bounds=(lo, hi),
                method="bounded",
                options={"xatol": 1e-12},
            )
            if res.success and res.fun < best:
                best, best_c = float(res.fun), float(res.x)
        out.append((best, best_c))
    return out


def min_hs_to_zero_discord(state, grid=GridSpec()):
    return min(v for v, _ in hs_axis_minima(state, grid))


def bisect_critical_time(eta, Gamma, gamma, rtol=1e-15):
    """Root of Gamma (t + (exp(-gamma t) - 1)/gamma) = Gamma eta by plain bisection."""
    if eta == 0.0:
        return 0.0

    def g(t):
        return Gamma * (t + math.expm1(-gamma * t) / gamma) - Gamma * eta

    # t - 1/gamma <= t + (e^{-gamma t} - 1)/gamma <= t brackets the root in [eta, eta + 1/gamma]
    lo, hi = eta, eta + 1.0 / gamma
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rtol * hi:
            break
    return 0.5 * (lo + hi)
