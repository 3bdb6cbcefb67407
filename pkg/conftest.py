import hypothesis
import pytest

from tests.helpers import make_blobs, scenario_scan

hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=100, deadline=None)
hypothesis.settings.load_profile("ci")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: statistical acceptance loops (deselect with -m 'not slow')")


@pytest.fixture
def blob_cloud():
    return make_blobs


@pytest.fixture
def t_scan():
    return scenario_scan("T")[0]
