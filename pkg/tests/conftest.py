"""
Shared fixtures. The testing environment is selected before any project import.
"""

import os

os.environ["ENVIRONMENT"] = "testing"
os.environ.setdefault("ENABLE_CACHING", "true")

import pytest

from domain.scaling import params_from_scaled
from services.twotime_service import TwoTimeService


@pytest.fixture
def origin_params():
    """(xi1, eta1, xi2, eta2, alpha) = (0, 0, 0, 0, 1)."""
    return params_from_scaled(0.0, 0.0, 0.0, 0.0, 1.0)


@pytest.fixture
def shifted_params():
    return params_from_scaled(-0.5, 0.2, 0.4, 0.1, 1.0)


@pytest.fixture(scope="session")
def twotime_service():
    return TwoTimeService(max_workers=2)
