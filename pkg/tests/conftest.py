import pytest

from polder.models import ModelParams, MollifierSpec, RegulatorSpec


@pytest.fixture
def params():
    return ModelParams()


@pytest.fixture
def lorentzian():
    return MollifierSpec('lorentzian', 0.1)


@pytest.fixture
def gaussian():
    return MollifierSpec('gaussian', 0.1)


@pytest.fixture
def regulator():
    return RegulatorSpec(eta=0.1)
