import pytest

from ellipcert import certify


@pytest.fixture(scope="session")
def a_c_result():
    """The computed sharp constant, shared across the suite (one scan)."""
    return certify.find_a_c()
