import pathlib

import hypothesis
import pytest

hypothesis.settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    derandomize=True,
)
hypothesis.settings.load_profile("suite")

CERTS_DIR = pathlib.Path(__file__).resolve().parents[1] / "certs"


@pytest.fixture
def shipped_cert_paths():
    paths = sorted(CERTS_DIR.glob("*.json"))
    assert len(paths) == 6, "expected six shipped certificate files"
    return paths
