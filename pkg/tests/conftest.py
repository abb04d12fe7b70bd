import pytest

import sepvar


def pytest_configure(config):
    # expensive internal re-verification is on for the whole suite
    from sepvar.config import enable_self_checks

    enable_self_checks(True)


@pytest.fixture(scope="session")
def decompositions():
    """Shared decompose(n) reports; budgets match the stated tolerances."""
    cache = {}
    budgets = {6: 900}

    def get(n):
        if n not in cache:
            seconds = budgets.get(n, 300)
            cache[n] = sepvar.decompose(n, budget=sepvar.Budget(seconds=seconds))
        return cache[n]

    return get


@pytest.fixture(scope="session")
def df5_report():
    return sepvar.df5_verify(sepvar.Budget(seconds=600))


@pytest.fixture(scope="session")
def f6_report():
    return sepvar.f6_verify(sepvar.Budget(seconds=900))
