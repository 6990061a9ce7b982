"""Dense one- and two-qubit linear algebra: Pauli basis, Bloch vectors,
density matrices, tensor products and partial traces.

States use the normalization rho = I/2 + r.sigma, so physical Bloch vectors
satisfy |r| <= 1/2 and purity is Tr(rho^2) = 1/2 + 2|r|^2.  Two-qubit
objects are ordered system (x) environment everywhere; interaction variants
are expressed by different unitaries, never by reordering slots.

All values are immutable after construction and all operations are pure
functions, so everything here is safe to use concurrently.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)
for _p in PAULI:
    _p.setflags(write=False)

BLOCH_TOL = 1e-12
HERMITICITY_TOL = 1e-14
TRACE_TOL = 1e-14
POSITIVITY_TOL = 1e-12
UNITARITY_TOL = 1e-13


def _frozen(a: np.ndarray, shape: tuple, dtype) -> np.ndarray:
    a = np.array(a, dtype=dtype)
    if a.shape != shape:
        raise ValueError(f"expected array of shape {shape}, got {a.shape}")
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class QubitState:
    """Qubit state as a Bloch 3-vector r, with rho = I/2 + r.sigma."""

    r: np.ndarray

    def __post_init__(self):
        r = _frozen(self.r, (3,), float)
        norm = float(np.linalg.norm(r))
        if norm > 0.5 + BLOCH_TOL:
            raise ValueError(f"Bloch vector length {norm:.17g} exceeds 1/2")
        object.__setattr__(self, "r", r)

    def purity(self) -> float:
        return 0.5 + 2.0 * float(self.r @ self.r)


@dataclass(frozen=True)
class DensityMatrix:
    """2x2 density matrix: Hermitian, unit trace, positive semidefinite."""

    m: np.ndarray

    def __post_init__(self):
        m = _frozen(self.m, (2, 2), complex)
        _check_state_matrix(m, "DensityMatrix")
        object.__setattr__(self, "m", m)


@dataclass(frozen=True)
class TwoQubitState:
    """4x4 joint density matrix, ordered system (x) environment."""

    m: np.ndarray

    def __post_init__(self):
        m = _frozen(self.m, (4, 4), complex)
        _check_state_matrix(m, "TwoQubitState")
        object.__setattr__(self, "m", m)


@dataclass(frozen=True)
class TwoQubitUnitary:
    """4x4 unitary acting on system (x) environment."""

    u: np.ndarray

    def __post_init__(self):
        u = _frozen(self.u, (4, 4), complex)
        dev = np.abs(u @ u.conj().T - np.eye(4)).max()
        if dev > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary (deviation {dev:.3e})")
        object.__setattr__(self, "u", u)


def _check_state_matrix(m: np.ndarray, label: str) -> None:
    herm = np.abs(m - m.conj().T).max()
    if herm > HERMITICITY_TOL:
        raise ValueError(f"{label} is not Hermitian (deviation {herm:.3e})")
    tr = abs(np.trace(m) - 1.0)
    if tr > TRACE_TOL:
        raise ValueError(f"{label} trace deviates from 1 by {tr:.3e}")
    lo = float(np.linalg.eigvalsh(m).min())
    if lo < -POSITIVITY_TOL:
        raise ValueError(f"{label} has negative eigenvalue {lo:.3e}")


def bloch_to_density(s: QubitState) -> DensityMatrix:
    """rho = I/2 + r_x sigma_x + r_y sigma_y + r_z sigma_z."""
    rx, ry, rz = s.r
    return DensityMatrix(0.5 * SIGMA_0 + rx * SIGMA_X + ry * SIGMA_Y + rz * SIGMA_Z)


def density_to_bloch(d: DensityMatrix) -> QubitState:
    """Inverse of bloch_to_density: r_k = Tr(sigma_k rho) / 2."""
    m = d.m
    return QubitState(np.array([
        0.5 * np.trace(SIGMA_X @ m).real,
        0.5 * np.trace(SIGMA_Y @ m).real,
        0.5 * np.trace(SIGMA_Z @ m).real,
    ]))


def tensor_product(a: DensityMatrix, b: DensityMatrix) -> TwoQubitState:
    """Joint product state a (x) b, system slot first."""
    return TwoQubitState(np.kron(a.m, b.m))


def partial_trace(s: TwoQubitState, keep: str = "system") -> DensityMatrix:
    """Reduced state of one slot; keep is "system" or "environment"."""
    four = s.m.reshape(2, 2, 2, 2)
    if keep == "system":
        reduced = four.trace(axis1=1, axis2=3)
    elif keep == "environment":
        reduced = four.trace(axis1=0, axis2=2)
    else:
        raise ValueError(f"keep must be 'system' or 'environment', got {keep!r}")
    return DensityMatrix(reduced)
