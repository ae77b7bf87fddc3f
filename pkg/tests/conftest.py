import math

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

M_E = 0.5109989461


@pytest.fixture
def rest_energy():
    return M_E


def rel(a, b):
    return abs(a - b) / abs(b)


PI = math.pi
