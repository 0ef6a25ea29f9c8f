import pytest

from noncolliding import NonColliding
from noncolliding.log import logger
from noncolliding.modeling import ParticleConfig, WalkModel

# Parameters of the roots picture: a = (-5, -3, -2, 4, 6, 7, 8), T = 7
ROOT_FIGURE_A = (-5, -3, -2, 4, 6, 7, 8)


@pytest.fixture(autouse=True)
def library_defaults():
    NonColliding.reset()
    logger.reset_once()
    yield
    NonColliding.reset()


@pytest.fixture
def single_walk():
    return WalkModel(a=ParticleConfig.of(0), beta=0.5, T=2)


@pytest.fixture
def two_walks():
    return WalkModel(a=ParticleConfig.of(0, 2), beta=0.5, T=2)


@pytest.fixture
def root_figure_model():
    return WalkModel(a=ParticleConfig(positions=ROOT_FIGURE_A), beta=0.4, T=7)
