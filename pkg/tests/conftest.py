"""测试共享夹具"""

import os

import pytest

# 测试中默认单进程，避免每个用例都起进程池
os.environ.setdefault("WICKS_WORKERS", "1")

from wicks_forms.config import reset_settings  # noqa: E402
from wicks_forms.enumeration import CatalogStore, enumerate_wicks  # noqa: E402

reset_settings()


@pytest.fixture(scope="session")
def genus1_full():
    return enumerate_wicks(1, workers=1)


@pytest.fixture(scope="session")
def genus1_maximal():
    return enumerate_wicks(1, maximal_only=True, workers=1)


@pytest.fixture(scope="session")
def genus2_maximal():
    return enumerate_wicks(2, maximal_only=True, workers=1)


@pytest.fixture(scope="session")
def genus2_full():
    return enumerate_wicks(2, workers=1)


@pytest.fixture(scope="session")
def genus1_store(genus1_full):
    store = CatalogStore()
    store.put(genus1_full)
    return store


@pytest.fixture(scope="session")
def full_store(genus1_full, genus2_full):
    store = CatalogStore()
    store.put(genus1_full)
    store.put(genus2_full)
    return store
