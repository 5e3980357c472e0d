import numpy as np
import pytest
from hypothesis import given, strategies as st

from talbot.errors import PreconditionError
from talbot.intpoly import IntPoly, diagonal_power, parse_poly


def test_parse_simple_powers():
    p = parse_poly("x^3")
    assert p.num_vars == 1
    assert p.degree == 3
    assert p.eval_mod((2,), 100) == 8


def test_parse_sum_of_cubes():
    p = parse_poly("x^3+y^3")
    assert p.num_vars == 2
    assert p.eval_mod((2, 3), 1000) == 35


def test_parse_coefficients_and_signs():
    p = parse_poly("2x^2 - 3y + 1", num_vars=2)
    assert p.eval_mod((5, 4), 997) == (50 - 12 + 1) % 997


def test_diagonal_power():
    p = diagonal_power(4, 3)
    assert p.num_vars == 3
    assert p.degree == 4
    assert p.eval_mod((1, 2, 3), 10 ** 6) == 1 + 16 + 81
    assert p.is_homogeneous()


def test_partial_derivative():
    p = parse_poly("x^3+y^3")
    px = p.partial(0)
    assert px.eval_mod((5, 7), 10 ** 6) == 75


def test_eval_mod_vectorized_matches_scalar():
    p = parse_poly("x^3+y^3")
    pts = np.array([[i, j] for i in range(7) for j in range(7)])
    vec = p.eval_mod(pts, 7)
    for row, v in zip(pts, vec):
        assert p.eval_mod(tuple(row), 7) == v


def test_eval_mod_overflow_safe():
    # Coefficients and points far beyond int64 cube range.
    p = parse_poly("x^10", num_vars=1)
    big = 2 ** 62 - 57
    assert p.eval_mod((big,), 1009) == pow(big, 10, 1009)


def test_canonical_is_order_independent():
    a = IntPoly(2, (((3, 0), 1), ((0, 3), 1)))
    b = IntPoly(2, (((0, 3), 1), ((3, 0), 1)))
    assert a.canonical() == b.canonical()
    assert a.content_hash() == b.content_hash()


def test_duplicate_exponents_rejected():
    with pytest.raises(PreconditionError):
        IntPoly(1, (((2,), 1), ((2,), 5)))


def test_dimension_mismatch_rejected():
    p = parse_poly("x^3+y^3")
    with pytest.raises(PreconditionError):
        p.eval_mod((1, 2, 3), 7)


@given(st.integers(min_value=-10 ** 9, max_value=10 ** 9),
       st.integers(min_value=-10 ** 9, max_value=10 ** 9),
       st.integers(min_value=2, max_value=10 ** 6))
def test_eval_mod_agrees_with_pow(x, y, q):
    p = parse_poly("x^3+y^3")
    assert p.eval_mod((x, y), q) == (pow(x, 3, q) + pow(y, 3, q)) % q
