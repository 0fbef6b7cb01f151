import pytest

from stacklab.genfun import Variant, series

RATIO_VARIANTS = [Variant.GS, Variant.DM, Variant.H, Variant.HS, Variant.S,
                  Variant.SS, Variant.G, Variant.D, Variant.FPHI]


@pytest.fixture(scope="session")
def series_5000():
    """Exact coefficients to n = 5000 for every variant with a main term."""
    return {v: series(v, 5000) for v in RATIO_VARIANTS}


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("STACKLAB_CACHE", str(tmp_path / "cache"))
