from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def fr_fixture_path() -> Path:
    return DATA_DIR / "fr_fixture.conllu"
