"""Pure numpy implementations of the two hot loops.

These are the reference kernels; qcollide._speedups provides the compiled
equivalents and must agree with them to rounding.
"""
from __future__ import annotations

import numpy as np


def _density(r):
    rx, ry, rz = r
    return np.array([[0.5 + rz, rx - 1j * ry],
                     [rx + 1j * ry, 0.5 - rz]], dtype=complex)


def _bloch(m):
    return np.array([
        0.5 * (m[0, 1] + m[1, 0]).real,
        0.5 * (m[1, 0] - m[0, 1]).imag,
        0.5 * (m[0, 0] - m[1, 1]).real,
    ])


def collision_trajectory(u, r0, t, n):
    """n collisions of the system with fresh environment qubits.

    Each step evolves the full two-qubit state U (rho (x) xi) U+ and traces
    out each slot.  Returns (states, reservoir_out) with shapes (n+1, 3)
    and (n, 3); rows are Bloch vectors.
    """
    u = np.asarray(u, dtype=complex)
    uh = u.conj().T
    xi = _density(np.asarray(t, dtype=float))
    states = np.empty((n + 1, 3))
    reservoir_out = np.empty((n, 3))
    r = np.asarray(r0, dtype=float)
    states[0] = r
    for k in range(n):
        out = (u @ np.kron(_density(r), xi) @ uh).reshape(2, 2, 2, 2)
        sys_out = out.trace(axis1=1, axis2=3)
        env_out = out.trace(axis1=0, axis2=2)
        r = _bloch(sys_out)
        states[k + 1] = r
        reservoir_out[k] = _bloch(env_out)
    return states, reservoir_out


def rk4_propagate(g, v0, h, steps):
    """Classical RK4 for v' = g v with fixed step h; returns the final v."""
    g = np.asarray(g, dtype=float)
    v = np.asarray(v0, dtype=float).copy()
    for _ in range(steps):
        k1 = g @ v
        k2 = g @ (v + 0.5 * h * k1)
        k3 = g @ (v + 0.5 * h * k2)
        k4 = g @ (v + h * k3)
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return v
