"""Bipartite collision models: partial-SWAP and partial-CNOT interactions.

A collision unitarily couples the system qubit to one fresh environment
qubit prepared in the common reservoir state; the environment particle is
never reused, so n collisions consume n identically prepared qubits.  The
module provides both the exact two-qubit oracle (kron, conjugate, partial
traces) and the closed-form single-collision transfer matrices, which are
required to agree with channel tomography over the oracle.

CNOT convention: the control qubit in state |1> triggers sigma_x on the
target.  "cnot-target" couples an environment control to the system as
target; "cnot-control" is the reverse.  Slot order stays system (x)
environment in both cases.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from . import _kernels
from .channels import TransferMatrix
from .qubit import QubitState, TwoQubitUnitary, bloch_to_density, _frozen

SWAP_FAMILY = "swap"
CNOT_TARGET_FAMILY = "cnot-target"
CNOT_CONTROL_FAMILY = "cnot-control"
FAMILIES = (SWAP_FAMILY, CNOT_TARGET_FAMILY, CNOT_CONTROL_FAMILY)
_FAMILY_ALIASES = {"partial-swap": SWAP_FAMILY}

_SWAP_GATE = np.array([
    [1, 0, 0, 0],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
], dtype=complex)

# Environment controls, system is the target: flips the system when the
# environment qubit is |1>.
_CNOT_ENV_CONTROLS = np.array([
    [1, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
], dtype=complex)

# System controls, environment is the target.
_CNOT_SYS_CONTROLS = np.array([
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
], dtype=complex)

_GATES = {
    SWAP_FAMILY: _SWAP_GATE,
    CNOT_TARGET_FAMILY: _CNOT_ENV_CONTROLS,
    CNOT_CONTROL_FAMILY: _CNOT_SYS_CONTROLS,
}


@dataclass(frozen=True)
class CollisionSpec:
    """One collision family with mixing angle eta, period tau and reservoir state."""

    family: str
    eta: float
    tau: float
    reservoir: QubitState

    def __post_init__(self):
        family = _FAMILY_ALIASES.get(self.family, self.family)
        if family not in FAMILIES:
            raise ValueError(f"unknown interaction family {self.family!r}")
        if not 0.0 <= self.eta <= math.pi / 2:
            raise ValueError(f"eta must lie in [0, pi/2], got {self.eta!r}")
        if not self.tau > 0.0:
            raise ValueError(f"tau must be positive, got {self.tau!r}")
        if not isinstance(self.reservoir, QubitState):
            raise TypeError("reservoir must be a QubitState")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "eta", float(self.eta))
        object.__setattr__(self, "tau", float(self.tau))


@dataclass(frozen=True)
class DiscreteTrajectory:
    """System states after 0..n collisions plus the n used environment qubits.

    Rows of both arrays are Bloch vectors; states has one more row than
    reservoir_out because no environment qubit exists before collision 1.
    """

    states: np.ndarray
    reservoir_out: np.ndarray

    def __post_init__(self):
        states = _frozen(self.states, (len(self.states), 3), float)
        res = _frozen(self.reservoir_out, (len(self.reservoir_out), 3), float)
        if len(states) != len(res) + 1:
            raise ValueError("states must have exactly one more row than reservoir_out")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "reservoir_out", res)

    @property
    def collisions(self) -> int:
        return len(self.reservoir_out)


def build_unitary(spec: CollisionSpec) -> TwoQubitUnitary:
    """cos(eta) I + i sin(eta) G for the family's gate G (SWAP or CNOT)."""
    return TwoQubitUnitary(
        math.cos(spec.eta) * np.eye(4) + 1j * math.sin(spec.eta) * _GATES[spec.family]
    )


def collision_action(
    u: TwoQubitUnitary, environment: QubitState
) -> Callable[[np.ndarray], np.ndarray]:
    """Linear action X -> Tr_env[U (X (x) xi) U+] on raw 2x2 operators.

    This is the tomography oracle: it accepts arbitrary operators, not just
    states, so it can be probed with the Pauli basis.
    """
    xi = bloch_to_density(environment).m
    um = u.u
    uh = um.conj().T

    def act(x: np.ndarray) -> np.ndarray:
        out = um @ np.kron(np.asarray(x, dtype=complex), xi) @ uh
        return out.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)

    return act


def collide(
    u: TwoQubitUnitary, system: QubitState, environment: QubitState
) -> Tuple[QubitState, QubitState]:
    """One collision; returns the post-collision (system, environment) states."""
    states, reservoir_out = _kernels.collision_trajectory(u.u, system.r, environment.r, 1)
    return QubitState(states[1]), QubitState(reservoir_out[0])


def induced_map(spec: CollisionSpec) -> TransferMatrix:
    """Closed-form transfer matrix of a single collision.

    Partial swap:      r' = c^2 r + s^2 t - 2 c s (t x r) for reservoir
                       Bloch vector t.
    CNOT, sys target:  dephasing toward the sigma_x eigenbasis, controlled
                       by the reservoir population xi_11 = 1/2 - t_z.
    CNOT, sys control: dephasing toward the sigma_z eigenbasis, controlled
                       by the reservoir coherence <sigma_x> = 2 t_x.
    """
    c, s = math.cos(spec.eta), math.sin(spec.eta)
    m = np.eye(4)
    if spec.family == SWAP_FAMILY:
        tx, ty, tz = spec.reservoir.r
        m = np.array([
            [1.0, 0.0, 0.0, 0.0],
            [2 * s * s * tx, c * c, 2 * c * s * tz, -2 * c * s * ty],
            [2 * s * s * ty, -2 * c * s * tz, c * c, 2 * c * s * tx],
            [2 * s * s * tz, 2 * c * s * ty, -2 * c * s * tx, c * c],
        ])
    elif spec.family == CNOT_TARGET_FAMILY:
        xi11 = 0.5 - spec.reservoir.r[2]
        a = 1.0 - 2 * s * s * xi11
        b = 2 * c * s * xi11
        m[2, 2] = a
        m[2, 3] = b
        m[3, 2] = -b
        m[3, 3] = a
    else:
        sx = 2.0 * spec.reservoir.r[0]
        a = c * c + s * s * sx
        b = c * s * (1.0 - sx)
        m[1, 1] = a
        m[1, 2] = b
        m[2, 1] = -b
        m[2, 2] = a
    return TransferMatrix(m)


def simulate_discrete(spec: CollisionSpec, initial: QubitState, n: int) -> DiscreteTrajectory:
    """n oracle collisions against fresh reservoir qubits.

    Propagation uses the full two-qubit state each step (never the transfer
    matrix), so it stays valid for any unitary; transfer-matrix powers are
    the cross-check, not the engine.
    """
    if n < 0:
        raise ValueError("collision count must be >= 0")
    u = build_unitary(spec)
    states, reservoir_out = _kernels.collision_trajectory(
        u.u, initial.r, spec.reservoir.r, n
    )
    return DiscreteTrajectory(states, reservoir_out)


def homogenization_delta(traj: DiscreteTrajectory, reservoir: QubitState) -> float:
    """Worst Bloch distance to the reservoir state over everything the
    process leaves behind: the final system state and every used
    environment qubit."""
    d = float(np.linalg.norm(traj.states[-1] - reservoir.r))
    if len(traj.reservoir_out):
        d = max(d, float(np.linalg.norm(traj.reservoir_out - reservoir.r, axis=1).max()))
    return d
