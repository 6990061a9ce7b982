import numpy as np
import pytest

from qcollide import CollisionSpec, FAMILIES, QubitState


def random_bloch(rng, rmax=0.5):
    """Uniform direction, radius uniform in [0, rmax]."""
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return v * rng.uniform(0.0, rmax)


def random_state(rng, rmax=0.5):
    return QubitState(random_bloch(rng, rmax))


def random_spec(rng, families=FAMILIES, eta_lo=0.0, eta_hi=np.pi / 2):
    family = families[rng.integers(len(families))]
    return CollisionSpec(
        family=family,
        eta=float(rng.uniform(eta_lo, eta_hi)),
        tau=float(rng.uniform(0.5, 2.0)),
        reservoir=random_state(rng),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
