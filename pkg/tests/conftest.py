import numpy as np
import pytest

from qkzconn import HeckeParams, default_params, spin_rep

SEED = 20240811


@pytest.fixture(scope="session")
def ep():
    return default_params()


@pytest.fixture()
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def phi():
    gen = np.random.default_rng(SEED + 1)
    re = gen.uniform(-0.45, 0.45, size=3)
    im = gen.uniform(0.02, 0.3, size=3)
    return tuple(complex(a, b) for a, b in zip(re, im))


@pytest.fixture(scope="session")
def reps(ep, phi):
    """Spin representations for n = 2, 3, 4, built once."""
    return {n: spin_rep(HeckeParams(elliptic=ep, n=n), phi) for n in (2, 3, 4)}
