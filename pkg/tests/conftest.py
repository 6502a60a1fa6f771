import os
import tempfile

import pytest

from excol import BundleSpec, CenterSpec, make_blowup


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache():
    """Point the disk cache at a throwaway directory for the whole run."""
    with tempfile.TemporaryDirectory(prefix="excol-cache-") as d:
        old = os.environ.get("EXCOL_CACHE_DIR")
        os.environ["EXCOL_CACHE_DIR"] = d
        yield
        if old is None:
            os.environ.pop("EXCOL_CACHE_DIR", None)
        else:
            os.environ["EXCOL_CACHE_DIR"] = old


@pytest.fixture(scope="session")
def bl_p1p1():
    """P^1 x P^1 blown up at a torus-fixed point (codim-2 center)."""
    return make_blowup(BundleSpec(1, (0, 0)), CenterSpec(frozenset({"b1", "f1"})))


@pytest.fixture(scope="session")
def bl_p2p1():
    """P^2 x P^1 blown up at a torus-fixed point (codim-3 center)."""
    return make_blowup(BundleSpec(2, (0, 0)), CenterSpec(frozenset({"b1", "b2", "f1"})))
