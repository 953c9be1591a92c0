from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = Path(__file__).parent / "golden"
DATA = Path(__file__).parent / "data"
FIXTURES = ROOT / "fixtures"


@pytest.fixture
def golden():
    return GOLDEN


@pytest.fixture
def fixture_config():
    return FIXTURES / "demo.ini"
