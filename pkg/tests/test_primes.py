import pytest
from hypothesis import given, strategies as st

from talbot.primes import is_prime, largest_prime_in, primes_in, primes_up_to


SMALL_PRIMES = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}


def test_small_values():
    for n in range(50):
        assert is_prime(n) == (n in SMALL_PRIMES)


def test_carmichael_numbers_rejected():
    for n in (561, 1105, 1729, 2465, 2821, 6601, 8911):
        assert not is_prime(n)


def test_large_known_primes():
    assert is_prime(2 ** 31 - 1)
    assert is_prime(999999937)
    assert not is_prime(999999937 * 31)


def test_primes_up_to_matches_filter():
    got = primes_up_to(1000)
    assert got == [n for n in range(1001) if is_prime(n)]


def test_primes_in_window():
    assert primes_in(10, 20) == [11, 13, 17, 19]
    assert primes_in(24, 28) == []
    assert primes_in(2, 2) == [2]


def test_largest_prime_in():
    assert largest_prime_in(16, 32) == 31
    assert largest_prime_in(8, 10) is None
    assert largest_prime_in(90, 100) == 97


@given(st.integers(min_value=2, max_value=200000))
def test_is_prime_agrees_with_trial_division(n):
    naive = n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))
    assert is_prime(n) == naive
