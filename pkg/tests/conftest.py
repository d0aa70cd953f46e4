"""Shared fixtures: prime-field contexts, cached verification reports, and a
hypothesis profile without per-example deadlines (the point-count kernels are
numpy-bound and occasionally stall a single example past the default 200ms).
"""
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from cymod.fields import build_context

settings.register_profile(
    "cymod",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("cymod")


@lru_cache(maxsize=None)
def ctx(p: int):
    return build_context(p)


@pytest.fixture(scope="session")
def prime_ctx():
    """Memoized PrimeContext factory shared by the whole session."""
    return ctx


class _ReportCache:
    """Runs the full verification pipeline at most once per family and mode."""

    def __init__(self):
        self._cache = {}

    def get(self, family: str, mode: str = "strict"):
        key = (family, mode)
        if key not in self._cache:
            from cymod.livne import verify_family

            self._cache[key] = verify_family(family, mode)
        return self._cache[key]

    def all_strict(self):
        from cymod.refdata import FAMILIES

        return {k: self.get(k) for k in FAMILIES.keys()}


@pytest.fixture(scope="session")
def reports():
    return _ReportCache()
