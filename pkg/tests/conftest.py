# conftest.py
"""Modelos compartidos por las pruebas"""

import numpy as np
import pytest

from core_types import ModelConfig
from final_norm import RenormModel


@pytest.fixture(scope="session")
def model8():
    return RenormModel.build(ModelConfig.default(dim=8))


@pytest.fixture(scope="session")
def model16():
    return RenormModel.build(ModelConfig.default(dim=16))


@pytest.fixture(scope="session")
def model_p4():
    return RenormModel.build(ModelConfig.default(dim=6, p=4.0))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
