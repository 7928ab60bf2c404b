"""
Pytest Configuration and Fixtures
"""
import math
import os
import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

# Grid evaluation runs single-threaded unless a test asks otherwise
os.environ.pop("EVANESCENT_WORKERS", None)

from src.numerics.quadrature import QuadratureSpec  # noqa: E402
from src.physics.geometry import Waveguide  # noqa: E402


# ==================== Fixtures ====================

@pytest.fixture
def waveguide():
    """Default cross-section b1 = 1, b2 = 2 (omega_c = pi/2)"""
    return Waveguide(b1=1.0, b2=2.0)


@pytest.fixture
def unit_waveguide():
    """b2 = pi, so omega_c = 1 and the coordinates are already dimensionless"""
    return Waveguide(b1=1.0, b2=math.pi)


@pytest.fixture
def spec():
    """Default quadrature tolerances"""
    return QuadratureSpec()


@pytest.fixture
def write_config(tmp_path):
    """Write a flat key = value config file and return its path"""
    def _write(text: str, name: str = "run.conf") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full verification battery and other long runs")
