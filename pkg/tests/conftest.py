import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fifcover.formats import BUNDLED_DATASETS, load_bundled_dataset
from fifcover.model import build_system


@pytest.fixture(scope="session")
def systems():
    """The three bundled datasets, built into systems."""
    return {name: build_system(load_bundled_dataset(name))
            for name in BUNDLED_DATASETS}


@pytest.fixture(scope="session")
def system1(systems):
    return systems["dataset1"]


@pytest.fixture(scope="session")
def system2(systems):
    return systems["dataset2"]


@pytest.fixture(scope="session")
def system3(systems):
    return systems["dataset3"]
