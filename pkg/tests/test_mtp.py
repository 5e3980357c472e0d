from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from talbot.errors import PreconditionError
from talbot.mtp import (ExponentPair, jarnik_dim, jarnik_via_mtp,
                        mtp_lower_bound, slab_dim_bound)


def test_ball_case_recovers_s():
    # b = 1^n, a = (s/n) 1^n gives exactly s.
    for n in (1, 2, 3, 5):
        for s in (Fraction(1, 2), Fraction(3, 4), Fraction(n, 1)):
            e = ExponentPair(b=(1,) * n, a=(s / n,) * n)
            assert mtp_lower_bound(e) == s


def test_jarnik_exact():
    for tau in (2, 3, 4, 10, Fraction(7, 2)):
        assert jarnik_dim(tau) == Fraction(2) / Fraction(tau)
        assert jarnik_via_mtp(tau) == jarnik_dim(tau)


def test_jarnik_requires_tau_geq_2():
    with pytest.raises(PreconditionError):
        jarnik_dim(Fraction(3, 2))


def test_slab_bound_equals_general_formula_on_grid():
    n = 2
    for i in range(100):
        for j in range(100):
            a1 = Fraction(i, 200)            # [0, 1/2)
            a2 = Fraction(1, 2) + Fraction(j, 200)  # [1/2, 1)
            e = ExponentPair(b=(Fraction(1, 2), 1), a=(a1, a2))
            want, _branch = slab_dim_bound(n, a1, a2)
            assert mtp_lower_bound(e) == min(want, Fraction(n))


def test_slab_bound_branches():
    v, branch = slab_dim_bound(2, Fraction(0), Fraction(1, 2))
    assert (v, branch) == (Fraction(1), 1)
    v, branch = slab_dim_bound(2, Fraction(1, 2), Fraction(1))
    assert v == Fraction(2)


def test_exponent_pair_validation():
    with pytest.raises(PreconditionError):
        ExponentPair(b=(1,), a=(2,))
    with pytest.raises(PreconditionError):
        ExponentPair(b=(), a=())
    with pytest.raises(PreconditionError):
        ExponentPair(b=(1, 1), a=(0.5,))


def test_exact_arithmetic_no_floats():
    e = ExponentPair(b=(Fraction(1, 2), 1), a=(Fraction(1, 3), Fraction(2, 3)))
    out = mtp_lower_bound(e)
    assert isinstance(out, Fraction)


@given(st.integers(1, 8), st.integers(0, 8), st.integers(1, 8))
def test_monotone_in_a(n, num, den):
    # Growing every a_i toward b_i never decreases the bound.
    a_small = Fraction(num, 8 * den) / 2
    a_big = min(a_small * 2, Fraction(1))
    lo = mtp_lower_bound(ExponentPair(b=(1,) * n, a=(a_small,) * n))
    hi = mtp_lower_bound(ExponentPair(b=(1,) * n, a=(a_big,) * n))
    assert lo <= hi
