"""Small dense linear algebra: Pauli matrices, a Jacobi Hermitian eigensolver
and entropy helpers.

The eigensolver is a cyclic complex Jacobi method. It is intended for the
2x2, 3x3 and 4x4 matrices that show up for two qubits and is not tuned for
anything larger.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 50


def jacobi_eigh(a, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Diagonalize a Hermitian matrix with cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like
        Square Hermitian matrix (real symmetric is fine).
    tol : float
        Sweeping stops once the off-diagonal Frobenius norm drops below
        ``tol * max(1, ||a||_F)``.
    max_sweeps : int
        Hard cap on the number of full sweeps.

    Returns
    -------
    w : ndarray
        Eigenvalues in ascending order.
    v : ndarray
        Unitary matrix whose columns are the matching eigenvectors.

    Raises
    ------
    ConvergenceError
        If the off-diagonal norm is still above tolerance after
        ``max_sweeps`` sweeps.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    threshold = tol * scale

    offdiag = ~np.eye(n, dtype=bool)

    def off_norm(m):
        return float(np.sqrt(np.sum(np.abs(m[offdiag]) ** 2)))

    for _ in range(max_sweeps):
        if off_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                theta = float(aqq - app) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(1.0 + theta * theta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.eye(n, dtype=complex)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s * phase
                rot[q, p] = -s * phase.conjugate()
                a = rot.conj().T @ a @ rot
                a[p, q] = a[q, p] = 0.0
                v = v @ rot
    else:
        if off_norm(a) > threshold:
            raise ConvergenceError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigvalsh(a):
    """Ascending eigenvalues of a small Hermitian matrix."""
    return jacobi_eigh(a)[0]


def xlog2x(p):
    """Elementwise ``p * log2(p)`` with the convention ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    mask = p > 0
    out[mask] = p[mask] * np.log2(p[mask])
    return out


def shannon_entropy(probs):
    """Shannon entropy in bits; tiny negative round-off is clipped to zero."""
    probs = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    return float(-np.sum(xlog2x(probs)))


def von_neumann_entropy(rho):
    """Von Neumann entropy ``-Tr(rho log2 rho)`` in bits."""
    return shannon_entropy(eigvalsh(rho))


def partial_trace(rho, keep):
    """Reduced state of a two-qubit density matrix.

    ``keep=0`` returns rho_A (traces out B), ``keep=1`` returns rho_B.
    """
    r = np.asarray(rho).reshape(2, 2, 2, 2)
    if keep == 0:
        return np.einsum("ibjb->ij", r)
    if keep == 1:
        return np.einsum("aiaj->ij", r)
    raise ValueError("keep must be 0 or 1")
