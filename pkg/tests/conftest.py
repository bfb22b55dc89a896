import os
import tempfile
from functools import lru_cache

import pytest

# keep the algebra cache out of the user's home during test runs
os.environ.setdefault("WBALG_CACHE_DIR", tempfile.mkdtemp(prefix="wbalg-test-cache-"))

from wbalg.cyclotomic import build  # noqa: E402
from wbalg.params import DEFAULT_PARAMS  # noqa: E402


@lru_cache(maxsize=None)
def cyclotomic(r, t):
    return build(r, t, DEFAULT_PARAMS)


@lru_cache(maxsize=None)
def ftable(r, t):
    from wbalg.cyclotomic import FTable

    return FTable(cyclotomic(r, t))


@pytest.fixture
def cyc():
    return cyclotomic
