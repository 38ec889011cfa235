from pathlib import Path

import pytest

from triverify.catalog import load_catalog

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def data_dir():
    return DATA
