import numpy as np
import pytest

from diamflow import kernels


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    """Each available kernel module in turn."""
    return kernels.available_backends()[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
