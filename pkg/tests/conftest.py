import time

import pytest

from unitdist.catalog import load_catalog, realize_exact


@pytest.fixture(scope="session")
def catalog_realizations():
    """Every record realized once per test session: (records, results, seconds)."""
    records = load_catalog()
    started = time.perf_counter()
    results = {rec.id: realize_exact(rec) for rec in records}
    elapsed = time.perf_counter() - started
    return records, results, elapsed
