import pytest

from gvm.services.rootsys import root_system_registry
from gvm.services.weights import weight_system


@pytest.fixture
def g2():
    return root_system_registry.get("G2")


@pytest.fixture
def g2_natural(g2):
    return weight_system(g2, g2.fundamental_weights[0])


@pytest.fixture
def gl4():
    return root_system_registry.get("gl4")
