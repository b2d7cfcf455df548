import os
import sys

import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from lattice.picard import Surface


@pytest.fixture
def surface10():
    return Surface(10)


@pytest.fixture
def surface13():
    return Surface(13, assume_shgh=True)


@pytest.fixture
def surface16():
    return Surface(16)


@pytest.fixture
def surface25():
    return Surface(25)


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    import config
    monkeypatch.setattr(config, "OUTPUT_DIR", str(tmp_path))
    return tmp_path
