import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def corpus_root() -> pathlib.Path:
    return ROOT / "corpus"


@pytest.fixture(scope="session")
def fixtures_root() -> pathlib.Path:
    return pathlib.Path(__file__).resolve().parent / "fixtures"
