from functools import lru_cache

import pytest

from coxlab import build_system


@lru_cache(maxsize=None)
def system(name):
    return build_system(name)


@pytest.fixture(scope="session")
def sys_of():
    return system
