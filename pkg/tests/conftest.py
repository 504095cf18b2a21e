import pytest


@pytest.fixture(scope="session")
def d2_table_small():
    from ordfact.summatory import D_k_sieve

    return D_k_sieve(10**6, 2)
