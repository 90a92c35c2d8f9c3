"""
Pytest configuration and shared fixtures for the workbench acceptance tests.
"""

import numpy as np
import pytest
from django.conf import settings

from apps.repfun.functors import alt2
from apps.workbench.datasets import co1_presentation, co1_rep


@pytest.fixture
def rng():
    """A generator seeded from WORKBENCH_RANDOM_SEED."""
    return np.random.default_rng(settings.WORKBENCH_RANDOM_SEED)


@pytest.fixture(scope='session')
def co1():
    """The bundled Co1 presentation and its 24-dimensional module over F2."""
    return co1_presentation(), co1_rep()


@pytest.fixture(scope='session')
def co1_square(co1):
    """Alt2 of the Co1 module, dimension 276."""
    return alt2(co1[1])
