import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from fcakit import ManyValuedContext, parse_mv_csv

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

CXT_FIXTURES = sorted(FIXTURES.glob("*.cxt"))


@pytest.fixture
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


@pytest.fixture
def sample_mv() -> ManyValuedContext:
    return parse_mv_csv((FIXTURES / "memberships4x4.csv").read_text(encoding="utf-8"))
