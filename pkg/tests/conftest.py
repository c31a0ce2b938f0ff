import pytest
from hypothesis import settings

from podles.spectral import SpectralConfig, verify_spectral

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_QS = (0.3, 0.5, 0.8)

_SPECTRAL = {}


def spectral_report(q, twoJmax=41):
    """verify_spectral is the expensive step; share one run per q."""
    key = (q, twoJmax)
    if key not in _SPECTRAL:
        import time
        cfg = SpectralConfig(q, twoJmax)
        t0 = time.perf_counter()
        rep = verify_spectral(cfg)
        _SPECTRAL[key] = (rep, time.perf_counter() - t0)
    return _SPECTRAL[key]


@pytest.fixture(scope="session")
def small_config():
    return SpectralConfig(0.5, twoJmax=15)
