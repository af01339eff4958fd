import numpy as np
import pytest

import scalarflat as sf


@pytest.fixture(scope="session", autouse=True)
def _warm_integrator():
    # first call JIT-compiles the stepper; keep that out of timed tests
    sf.integrate(2, (0.1, 0.1), t_max=1.0, t_min=-0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(1729)
