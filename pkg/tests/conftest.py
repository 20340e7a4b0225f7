import pytest

from fibkit import builtin_catalog


@pytest.fixture(scope="session")
def catalog():
    return builtin_catalog()
