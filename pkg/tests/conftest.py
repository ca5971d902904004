import functools

import pytest

from primpair.ffcore import field_make, prime_power_iter


@functools.lru_cache(maxsize=None)
def _field(p: int, k: int):
    return field_make(p, k)


@pytest.fixture(scope="session")
def field():
    """Session-cached field constructor: field(p, k) -> FieldCtx."""
    return _field


@pytest.fixture(scope="session")
def prime_powers():
    """prime_powers(lo, hi) -> list of (p, k, q)."""
    @functools.lru_cache(maxsize=None)
    def _pps(lo, hi):
        return list(prime_power_iter(lo, hi))
    return _pps
