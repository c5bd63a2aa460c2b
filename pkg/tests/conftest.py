from pathlib import Path

import pytest

from plexflow.fixture import generate_fixture
from plexflow.vocab import prefixes_turtle

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def fixture_graph():
    return generate_fixture()


def load_listing(name: str) -> str:
    """One of the bundled workflow listings, with the shared prefix preamble."""
    body = (DATA_DIR / name).read_text(encoding="utf-8")
    return prefixes_turtle() + "\n" + body
