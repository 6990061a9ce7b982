"""Affine (Pauli transfer) representation of qubit channels.

A channel is a real 4x4 matrix acting on the column vector (1/2, r) by
plain multiplication; trace preservation makes row 0 exactly (1, 0, 0, 0),
and the Bloch vector transforms as r -> T r + t.  Complete positivity is
decided through the Choi matrix (E (x) Id)[|Phi+><Phi+|], normalized to
unit trace so eigenvalue thresholds are scale-free.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .qubit import PAULI, QubitState, _frozen

_ROW0 = np.array([1.0, 0.0, 0.0, 0.0])
TRACE_PRESERVATION_TOL = 1e-10


@dataclass(frozen=True)
class TransferMatrix:
    """4x4 real channel matrix, rows/columns indexed by (I, x, y, z)."""

    m: np.ndarray

    def __post_init__(self):
        m = _frozen(self.m, (4, 4), float)
        if not np.array_equal(m[0], _ROW0):
            raise ValueError("row 0 of a transfer matrix must be exactly (1, 0, 0, 0)")
        object.__setattr__(self, "m", m)


@dataclass(frozen=True)
class ChoiMatrix:
    """Choi state of a trace-preserving channel (Hermitian, unit trace)."""

    m: np.ndarray

    def __post_init__(self):
        m = _frozen(self.m, (4, 4), complex)
        herm = np.abs(m - m.conj().T).max()
        if herm > 1e-12:
            raise ValueError(f"Choi matrix is not Hermitian (deviation {herm:.3e})")
        tr = abs(np.trace(m) - 1.0)
        if tr > 1e-12:
            raise ValueError(f"Choi trace deviates from 1 by {tr:.3e}")
        object.__setattr__(self, "m", m)


class CPVerdict(NamedTuple):
    completely_positive: bool
    min_eigenvalue: float


def tomography(action: Callable[[np.ndarray], np.ndarray]) -> TransferMatrix:
    """Reconstruct the transfer matrix of a linear channel action.

    ``action`` maps a 2x2 complex operator to a 2x2 complex operator; it
    must be linear and Hermiticity-preserving on the span of {I, sigma}.
    Entries are m[j, k] = Tr(sigma_j action(sigma_k)) / 2.  Raises if the
    action is not trace-preserving to within 1e-10.
    """
    m = np.empty((4, 4))
    for k in range(4):
        out = np.asarray(action(PAULI[k]), dtype=complex)
        for j in range(4):
            val = 0.5 * np.trace(PAULI[j] @ out)
            if abs(val.imag) > 1e-10:
                raise ValueError(
                    f"action is not Hermiticity-preserving (imaginary residue {val.imag:.3e})"
                )
            m[j, k] = val.real
    dev = np.abs(m[0] - _ROW0).max()
    if dev > TRACE_PRESERVATION_TOL:
        raise ValueError(f"action is not trace-preserving (row-0 deviation {dev:.3e})")
    m[0] = _ROW0
    return TransferMatrix(m)


def apply_channel(e: TransferMatrix, s: QubitState) -> QubitState:
    """Image state: (1/2, r') = m (1/2, r)."""
    v = e.m @ np.concatenate(([0.5], s.r))
    return QubitState(v[1:])


def channel_power(e: TransferMatrix, n: int) -> TransferMatrix:
    """n-fold composition e^n, with e^0 the identity channel."""
    if n < 0:
        raise ValueError("channel power requires n >= 0")
    if n > 16:
        return TransferMatrix(_power_binary(e.m, n))
    return TransferMatrix(_power_loop(e.m, n))


def _power_loop(m: np.ndarray, n: int) -> np.ndarray:
    out = np.eye(4)
    out[0] = _ROW0
    for _ in range(n):
        out = out @ m
    return out


def _power_binary(m: np.ndarray, n: int) -> np.ndarray:
    out = np.eye(4)
    base = m.copy()
    while n:
        if n & 1:
            out = out @ base
        n >>= 1
        if n:
            base = base @ base
    out[0] = _ROW0
    return out


def to_choi(e: TransferMatrix) -> ChoiMatrix:
    """Choi matrix (E (x) Id)[|Phi+><Phi+|] with |Phi+> = (|00> + |11>)/sqrt(2).

    The channel action on the basis operators |i><j| is reconstructed from
    the transfer matrix through the Pauli expansion
    X = sum_k Tr(sigma_k X)/2 sigma_k, extended complex-linearly.
    """
    choi = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            unit = np.zeros((2, 2), dtype=complex)
            unit[i, j] = 1.0
            coeffs = np.array([0.5 * p[j, i] for p in PAULI])
            image_coeffs = e.m @ coeffs
            image = sum(image_coeffs[k] * PAULI[k] for k in range(4))
            choi += 0.5 * np.kron(image, unit)
    return ChoiMatrix(choi)


def is_completely_positive(e: TransferMatrix, tol: float = 1e-12) -> CPVerdict:
    """Choi test: CP iff the minimum Choi eigenvalue is >= -tol."""
    lo = float(np.linalg.eigvalsh(to_choi(e).m).min())
    return CPVerdict(lo >= -tol, lo)
