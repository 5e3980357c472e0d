import numpy as np
import pytest

from talbot import fieldsum as fs
from talbot.intpoly import diagonal_power
from talbot.primes import primes_up_to


@pytest.fixture(scope="session")
def gq_cubic():
    """G(q) tables for W = x^3 in one variable, all primes q <= 31."""
    W = diagonal_power(3, 1)
    out = {}
    for q in primes_up_to(32):
        out[q] = fs.compute_Gq(fs.build_sum_table(W, q))
    return out


def gq_tables(k, d, qmax, c1=0.1):
    W = diagonal_power(k, d)
    out = {}
    for q in primes_up_to(qmax + 1):
        out[q] = fs.compute_Gq(fs.build_sum_table(W, q), c1)
    return out


def rel_err(a, b):
    return abs(a - b) / max(abs(b), 1e-300)
