"""Continuous interpolation of the discrete collision dynamics.

A single collision contracts and rotates the Bloch ball; replacing the
collision count n by t/tau turns its powers into a one-parameter family
E_t that is an exact semigroup (E_t E_s = E_{t+s}) and reproduces the
discrete maps at t = n tau.  The family is characterized by closed-form
rates:

  swap family:   Gamma1 = -(2/tau) ln c                    (decay)
                 Gamma2 = -(1/tau) ln[c sqrt(c^2+4 s^2 w^2)] (decoherence)
                 Omega  = atan2(2 w s, c) / tau              (rotation)
  CNOT families: Gamma  = -(1/tau) ln sqrt(a^2+b^2),
                 Omega  = atan2(b, a) / tau
                 from the 2x2 contraction-rotation block [[a, b], [-b, a]]
                 of the single-collision map.

For the swap family everything is evaluated in an aligned frame whose z
axis points along the reservoir Bloch vector (so w = |t| >= 0) and
conjugated back, keeping the caller in the original axes.

Generators come three ways: the closed form above, the principal matrix
logarithm of the single-collision map divided by tau, and a central
finite difference of any map family; all must agree wherever the map is
invertible.  Non-invertible maps (eta = pi/2 swap, fully scrambling CNOT)
have no generator and are rejected explicitly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np

from .channels import TransferMatrix
from .collisions import (
    CNOT_CONTROL_FAMILY,
    CNOT_TARGET_FAMILY,
    SWAP_FAMILY,
    CollisionSpec,
)
from .qubit import QubitState, _frozen

FRAME_TOL = 1e-12
RATE_TOL = 1e-12


class NonInvertibleMapError(ValueError):
    """The collision map has no inverse, so rates and generators diverge."""


@dataclass(frozen=True)
class HomogenizationRates:
    """Rates of the swap-family semigroup, plus the aligning frame.

    frame is a proper rotation taking the original Bloch axes to the
    aligned basis in which the reservoir points along +z with w = |t|.
    """

    gamma1: float
    gamma2: float
    omega: float
    w: float
    frame: np.ndarray
    tau: float = 1.0

    def __post_init__(self):
        frame = _frozen(self.frame, (3, 3), float)
        if np.abs(frame @ frame.T - np.eye(3)).max() > FRAME_TOL:
            raise ValueError("frame is not orthogonal")
        if abs(np.linalg.det(frame) - 1.0) > FRAME_TOL:
            raise ValueError("frame must be a proper rotation (det +1)")
        if self.gamma1 < -RATE_TOL:
            raise ValueError(f"gamma1 must be >= 0, got {self.gamma1!r}")
        if self.gamma2 < self.gamma1 / 2 - RATE_TOL:
            raise ValueError("gamma2 must be >= gamma1/2")
        if abs(self.w) > 0.5 + RATE_TOL:
            raise ValueError(f"|w| must be <= 1/2, got {self.w!r}")
        if not self.tau > 0.0:
            raise ValueError("tau must be positive")
        object.__setattr__(self, "frame", frame)


@dataclass(frozen=True)
class DecoherenceRates:
    """Dephasing rate, rotation frequency and dephasing basis axis."""

    gamma: float
    omega: float
    axis: str
    tau: float = 1.0

    def __post_init__(self):
        if self.axis not in ("x", "z"):
            raise ValueError(f"axis must be 'x' or 'z', got {self.axis!r}")
        if self.gamma < -RATE_TOL:
            raise ValueError(f"gamma must be >= 0, got {self.gamma!r}")
        if not self.tau > 0.0:
            raise ValueError("tau must be positive")


Rates = Union[HomogenizationRates, DecoherenceRates]


@dataclass(frozen=True)
class GeneratorMatrix:
    """4x4 real generator acting on (1/2, r); row 0 vanishes."""

    m: np.ndarray

    def __post_init__(self):
        m = _frozen(self.m, (4, 4), float)
        if np.abs(m[0]).max() != 0.0:
            raise ValueError("row 0 of a generator must vanish")
        object.__setattr__(self, "m", m)


def align_basis(reservoir: QubitState) -> Tuple[np.ndarray, float]:
    """Proper rotation R with R t = (0, 0, |t|), and w = |t|.

    A zero reservoir vector leaves the frame at the identity; a vector
    along -z is sent to +z by a half turn about x.
    """
    t = reservoir.r
    w = float(np.linalg.norm(t))
    if w == 0.0:
        return np.eye(3), 0.0
    unit = t / w
    axis = np.cross(unit, [0.0, 0.0, 1.0])
    sin = np.linalg.norm(axis)
    cos = unit[2]
    if sin < 1e-15:
        if cos > 0:
            return np.eye(3), w
        return np.diag([1.0, -1.0, -1.0]), w
    k = np.array([
        [0.0, -axis[2], axis[1]],
        [axis[2], 0.0, -axis[0]],
        [-axis[1], axis[0], 0.0],
    ])
    frame = np.eye(3) + k + k @ k * ((1.0 - cos) / (sin * sin))
    return frame, w


def _embed(frame: np.ndarray) -> np.ndarray:
    c = np.eye(4)
    c[1:, 1:] = frame
    return c


def homogenization_rates(spec: CollisionSpec) -> HomogenizationRates:
    """Closed-form rates of the partial-swap semigroup.

    Requires eta < pi/2: the full swap erases the system state, the map is
    a constant and nothing finite generates it.
    """
    if spec.family != SWAP_FAMILY:
        raise ValueError(f"homogenization rates are defined for the swap family, got {spec.family!r}")
    c, s = math.cos(spec.eta), math.sin(spec.eta)
    if c <= RATE_TOL:
        raise NonInvertibleMapError("collision map is not invertible at eta = pi/2; rates diverge")
    frame, w = align_basis(spec.reservoir)
    tau = spec.tau
    gamma1 = -2.0 * math.log(c) / tau
    gamma2 = -math.log(c * math.sqrt(c * c + 4.0 * s * s * w * w)) / tau
    omega = math.atan2(2.0 * w * s, c) / tau
    return HomogenizationRates(gamma1, gamma2, omega, w, frame, tau)


def decoherence_rates(spec: CollisionSpec) -> DecoherenceRates:
    """Closed-form rates of the partial-CNOT dephasing semigroups.

    The per-collision contraction of the affected plane is sqrt(a^2+b^2)
    computed from the map block; it must be positive for the map to be
    invertible.  Note the contraction depends on the reservoir through
    xi_11 (target role) or through <sigma_x> squared (control role).
    """
    if spec.family == CNOT_TARGET_FAMILY:
        a, b = _cnot_block(spec)
        axis = "x"
    elif spec.family == CNOT_CONTROL_FAMILY:
        a, b = _cnot_block(spec)
        axis = "z"
    else:
        raise ValueError(f"decoherence rates are defined for CNOT families, got {spec.family!r}")
    contraction_sq = a * a + b * b
    if contraction_sq <= RATE_TOL:
        raise NonInvertibleMapError("collision map is not invertible; rates diverge")
    gamma = -0.5 * math.log(contraction_sq) / spec.tau
    omega = math.atan2(b, a) / spec.tau
    return DecoherenceRates(gamma, omega, axis, spec.tau)


def _cnot_block(spec: CollisionSpec) -> Tuple[float, float]:
    c, s = math.cos(spec.eta), math.sin(spec.eta)
    if spec.family == CNOT_TARGET_FAMILY:
        xi11 = 0.5 - spec.reservoir.r[2]
        return 1.0 - 2 * s * s * xi11, 2 * c * s * xi11
    sx = 2.0 * spec.reservoir.r[0]
    return c * c + s * s * sx, c * s * (1.0 - sx)


def _rotation_block(scale: float, angle: float) -> np.ndarray:
    return scale * np.array([
        [math.cos(angle), math.sin(angle)],
        [-math.sin(angle), math.cos(angle)],
    ])


def _homog_map_raw(
    gamma1: float, gamma2: float, omega: float, w: float, frame: np.ndarray, t: float
) -> TransferMatrix:
    m = np.eye(4)
    m[1:3, 1:3] = _rotation_block(math.exp(-gamma2 * t), omega * t)
    decay = math.exp(-gamma1 * t)
    m[3, 0] = 2.0 * w * (1.0 - decay)
    m[3, 3] = decay
    c = _embed(frame)
    return TransferMatrix(c.T @ m @ c)


def _deco_map_raw(gamma: float, omega: float, axis: str, t: float) -> TransferMatrix:
    m = np.eye(4)
    block = _rotation_block(math.exp(-gamma * t), omega * t)
    if axis == "x":
        m[2:4, 2:4] = block
    else:
        m[1:3, 1:3] = block
    return TransferMatrix(m)


def continuous_map(rates: Rates, t: float) -> TransferMatrix:
    """The semigroup element E_t; E_0 is the identity and E_{n tau} equals
    the n-th power of the single-collision map."""
    if t < 0.0:
        raise ValueError("continuous map is defined for t >= 0")
    if isinstance(rates, HomogenizationRates):
        return _homog_map_raw(rates.gamma1, rates.gamma2, rates.omega, rates.w, rates.frame, t)
    if isinstance(rates, DecoherenceRates):
        return _deco_map_raw(rates.gamma, rates.omega, rates.axis, t)
    raise TypeError(f"unsupported rates object {type(rates).__name__}")


def generator_analytic(rates: Rates) -> GeneratorMatrix:
    """Closed-form time-independent generator G with E_t = exp(t G).

    Swap family (aligned frame): diagonal (-Gamma2, -Gamma2, -Gamma1),
    rotation entries +/-Omega in the xy block, and a feeding term
    2 w Gamma1 that pushes r_z toward the reservoir.  CNOT families: the
    same contraction-rotation structure on the dephased plane.
    """
    g = np.zeros((4, 4))
    if isinstance(rates, HomogenizationRates):
        g[1, 1] = g[2, 2] = -rates.gamma2
        g[1, 2] = rates.omega
        g[2, 1] = -rates.omega
        g[3, 3] = -rates.gamma1
        g[3, 0] = 2.0 * rates.w * rates.gamma1
        c = _embed(rates.frame)
        g = c.T @ g @ c
        g[0] = 0.0
    elif isinstance(rates, DecoherenceRates):
        block = np.array([[-rates.gamma, rates.omega], [-rates.omega, -rates.gamma]])
        if rates.axis == "x":
            g[2:4, 2:4] = block
        else:
            g[1:3, 1:3] = block
    else:
        raise TypeError(f"unsupported rates object {type(rates).__name__}")
    return GeneratorMatrix(g)


def generator_numeric(e: TransferMatrix, tau: float) -> GeneratorMatrix:
    """(1/tau) log E through the principal branch, via complex
    eigendecomposition of the 4x4 map.

    Rejects maps that are singular (no logarithm at all), maps with an
    eigenvalue on the closed negative real axis (the principal branch is
    ambiguous there), and maps whose eigenbasis is too ill-conditioned for
    the eigendecomposition route to be trusted.
    """
    if not tau > 0.0:
        raise ValueError("tau must be positive")
    m = e.m
    eigvals, vecs = np.linalg.eig(m)
    if np.abs(eigvals).min() <= 1e-12:
        raise NonInvertibleMapError("non-invertible map, no generator")
    for lam in eigvals:
        if lam.real < 0.0 and abs(lam.imag) <= 1e-12 * abs(lam):
            raise ValueError("logarithm branch ambiguity: eigenvalue on the negative real axis")
    cond = np.linalg.cond(vecs)
    if cond > 1e8:
        raise ValueError(f"eigenbasis condition number {cond:.3e} too large for a reliable logarithm")
    log_m = vecs @ np.diag(np.log(eigvals)) @ np.linalg.inv(vecs)
    residue = np.abs(log_m.imag).max()
    if residue > 1e-10:
        raise ValueError(f"logarithm has imaginary residue {residue:.3e}")
    g = log_m.real / tau
    row0 = np.abs(g[0]).max()
    if row0 > 1e-10:
        raise ValueError(f"logarithm is not trace-preserving (row-0 residue {row0:.3e})")
    g[0] = 0.0
    return GeneratorMatrix(g)


def semigroup_defect(rates: Rates, t: float, s: float) -> float:
    """Max-entry norm of E_t E_s - E_{t+s}; zero for an exact semigroup."""
    if t < 0.0 or s < 0.0:
        raise ValueError("semigroup defect is defined for t, s >= 0")
    et = continuous_map(rates, t).m
    es = continuous_map(rates, s).m
    ets = continuous_map(rates, t + s).m
    return float(np.abs(et @ es - ets).max())


def instantaneous_generator(
    family: Callable[[float], TransferMatrix], t: float, dt: float
) -> GeneratorMatrix:
    """Finite-difference generator dE_t/dt E_t^{-1} at time t.

    Uses a central difference of width 2 dt, so the result carries an
    O(dt^2) error; for a true semigroup it is independent of t.  Requires
    t >= dt so both sample points are in the family's domain.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if t < dt:
        raise ValueError("need t >= dt for the central difference")
    e0 = family(t).m
    if abs(np.linalg.det(e0)) <= 1e-12:
        raise NonInvertibleMapError("map family is not invertible at the requested time")
    derivative = (family(t + dt).m - family(t - dt).m) / (2.0 * dt)
    g = derivative @ np.linalg.inv(e0)
    g[0] = 0.0
    return GeneratorMatrix(g)
