import pytest

from dirichlet_divisor.arith import build_divisor_sieve


@pytest.fixture(scope="session")
def small_sieve():
    return build_divisor_sieve(10_000)


@pytest.fixture(scope="session")
def big_sieve():
    return build_divisor_sieve(1_000_000)
