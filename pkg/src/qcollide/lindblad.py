"""Conversion between 4x4 Bloch-space generators and the operator-form
(GKS) coefficients: a Hamiltonian 3-vector h and a Hermitian 3x3 matrix
c = d - i e with d real symmetric and e real antisymmetric.

Correspondence with the generator G acting on (1/2, r):

  translation  G[j, 0] = 4 (e_23, e_31, e_12)[j]
  symmetric    G[j, k] + G[k, j] = 4 d_jk (j != k),
               G[j, j] = -2 (tr d - d_jj)
  coherent     antisymmetric part gives dr/dt = 2 r x h, i.e.
               G[1, 2] = +2 h_3 and cyclic.

The whole channel is a completely positive semigroup exactly when c is
positive semidefinite, which is what gks_positivity decides.  The
fixed-step integrator propagates (1/2, r) under the assembled generator
and serves as a consistency oracle against the closed-form maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .qubit import QubitState, _frozen
from .semigroup import GeneratorMatrix

SYMMETRY_TOL = 1e-13
GKS_TOL = 1e-12


@dataclass(frozen=True)
class LindbladForm:
    """Master-equation coefficients (h, d, e); the GKS matrix is c = d - i e."""

    h: np.ndarray
    d: np.ndarray
    e: np.ndarray

    def __post_init__(self):
        h = _frozen(self.h, (3,), float)
        d = _frozen(self.d, (3, 3), float)
        e = _frozen(self.e, (3, 3), float)
        if np.abs(d - d.T).max() > SYMMETRY_TOL:
            raise ValueError("d must be symmetric")
        if np.abs(e + e.T).max() > SYMMETRY_TOL:
            raise ValueError("e must be antisymmetric")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "e", e)

    @property
    def c(self) -> np.ndarray:
        return self.d - 1j * self.e


class GKSVerdict(NamedTuple):
    completely_positive: bool
    eigenvalues: np.ndarray


def lindblad_from_generator(g: GeneratorMatrix) -> LindbladForm:
    """Extract (h, d, e) from a trace-preserving Bloch-space generator."""
    m = g.m
    h = np.array([
        (m[2, 3] - m[3, 2]) / 4.0,
        (m[3, 1] - m[1, 3]) / 4.0,
        (m[1, 2] - m[2, 1]) / 4.0,
    ])
    e12 = m[3, 0] / 4.0
    e23 = m[1, 0] / 4.0
    e31 = m[2, 0] / 4.0
    e = np.array([
        [0.0, e12, -e31],
        [-e12, 0.0, e23],
        [e31, -e23, 0.0],
    ])
    d = np.array([
        [(m[1, 1] - m[2, 2] - m[3, 3]) / 4.0,
         (m[1, 2] + m[2, 1]) / 4.0,
         (m[1, 3] + m[3, 1]) / 4.0],
        [(m[1, 2] + m[2, 1]) / 4.0,
         (m[2, 2] - m[1, 1] - m[3, 3]) / 4.0,
         (m[2, 3] + m[3, 2]) / 4.0],
        [(m[1, 3] + m[3, 1]) / 4.0,
         (m[2, 3] + m[3, 2]) / 4.0,
         (m[3, 3] - m[1, 1] - m[2, 2]) / 4.0],
    ])
    return LindbladForm(h, d, e)


def generator_from_lindblad(l: LindbladForm) -> GeneratorMatrix:
    """Assemble the Bloch-space generator; exact inverse of
    lindblad_from_generator."""
    h, d, e = l.h, l.d, l.e
    m = np.zeros((4, 4))
    m[1, 0] = 4.0 * e[1, 2]
    m[2, 0] = 4.0 * e[2, 0]
    m[3, 0] = 4.0 * e[0, 1]
    m[1, 1] = -2.0 * (d[1, 1] + d[2, 2])
    m[2, 2] = -2.0 * (d[0, 0] + d[2, 2])
    m[3, 3] = -2.0 * (d[0, 0] + d[1, 1])
    m[1, 2] = 2.0 * d[0, 1] + 2.0 * h[2]
    m[2, 1] = 2.0 * d[0, 1] - 2.0 * h[2]
    m[1, 3] = 2.0 * d[0, 2] - 2.0 * h[1]
    m[3, 1] = 2.0 * d[0, 2] + 2.0 * h[1]
    m[2, 3] = 2.0 * d[1, 2] + 2.0 * h[0]
    m[3, 2] = 2.0 * d[1, 2] - 2.0 * h[0]
    return GeneratorMatrix(m)


def gks_positivity(l: LindbladForm) -> GKSVerdict:
    """Eigenvalues of c = d - i e, sorted ascending, and the CP verdict.

    The verdict uses a one-sided tolerance so exactly saturated boundary
    cases (pure reservoir) report positive instead of flapping on rounding.
    """
    eigenvalues = np.linalg.eigvalsh(l.c)
    return GKSVerdict(bool(eigenvalues[0] >= -GKS_TOL), eigenvalues)


def integrate_master_equation(
    l: LindbladForm, initial: QubitState, t: float, dt: float
) -> QubitState:
    """Fixed-step RK4 propagation of (1/2, r) under the assembled generator.

    The step count is round(t / dt), so the effective step is within half a
    step of dt and results are bit-reproducible across runs.  Agrees with
    exp(t G) to O(dt^4).
    """
    if t < 0.0:
        raise ValueError("integration time must be >= 0")
    if t == 0.0:
        return initial
    if not 0.0 < dt <= t:
        raise ValueError("need 0 < dt <= t")
    g = generator_from_lindblad(l).m
    steps = max(1, round(t / dt))
    v0 = np.concatenate(([0.5], initial.r))
    v = _kernels.rk4_propagate(g, v0, t / steps, steps)
    return QubitState(v[1:])
