"""Collision models of open qubit dynamics.

Discrete sequences of bipartite unitary collisions (partial SWAP, partial
CNOT) against fresh reservoir qubits, the continuous completely positive
semigroup interpolating them, its generator, and the master-equation
coefficients, with every closed form cross-checked against a brute-force
two-qubit oracle.
"""
from ._kernels import BACKEND as kernel_backend
from .channels import (
    ChoiMatrix,
    CPVerdict,
    TransferMatrix,
    apply_channel,
    channel_power,
    is_completely_positive,
    to_choi,
    tomography,
)
from .collisions import (
    CNOT_CONTROL_FAMILY,
    CNOT_TARGET_FAMILY,
    FAMILIES,
    SWAP_FAMILY,
    CollisionSpec,
    DiscreteTrajectory,
    build_unitary,
    collide,
    collision_action,
    homogenization_delta,
    induced_map,
    simulate_discrete,
)
from .lindblad import (
    GKSVerdict,
    LindbladForm,
    generator_from_lindblad,
    gks_positivity,
    integrate_master_equation,
    lindblad_from_generator,
)
from .qubit import (
    PAULI,
    SIGMA_0,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    DensityMatrix,
    QubitState,
    TwoQubitState,
    TwoQubitUnitary,
    bloch_to_density,
    density_to_bloch,
    partial_trace,
    tensor_product,
)
from .semigroup import (
    DecoherenceRates,
    GeneratorMatrix,
    HomogenizationRates,
    NonInvertibleMapError,
    align_basis,
    continuous_map,
    decoherence_rates,
    generator_analytic,
    generator_numeric,
    homogenization_rates,
    instantaneous_generator,
    semigroup_defect,
)

__version__ = "0.1.0"
