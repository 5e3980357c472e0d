import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from talbot import fieldsum as fs
from talbot._kernels import estimate_ops
from talbot.errors import BudgetError, PreconditionError
from talbot.intpoly import diagonal_power, parse_poly


def brute_sum(W, p, q):
    d = W.num_vars
    total = 0j
    grids = np.stack(np.meshgrid(*([np.arange(q)] * d), indexing="ij"),
                     axis=-1).reshape(-1, d)
    fv = W.eval_mod(grids, q)
    lin = grids @ (np.asarray(p[1:]) % q)
    phase = (lin + p[0] * fv) % q
    return complex(np.sum(np.exp(2j * np.pi * phase / q)))


def test_exp_sum_matches_brute_force():
    W = parse_poly("x^3+y^3")
    for q in (5, 7, 11):
        for p in [(1, 2, 3), (0, 1, 0), (4, 0, 0)]:
            got = fs.exp_sum(W, p, q)
            assert abs(got - brute_sum(W, p, q)) < 1e-8 * q * q


def test_zero_frequency_is_q_to_the_d():
    W = parse_poly("x^3+y^3")
    assert abs(fs.exp_sum(W, (0, 0, 0), 13) - 13 ** 2) < 1e-9


def test_p1_zero_row_is_exact_linear_sum():
    # With no polynomial twist the sum collapses to a geometric sum:
    # q^d when p' = 0, and exactly 0 otherwise.
    W = parse_poly("x^3+y^3")
    q = 11
    assert abs(fs.exp_sum(W, (0, 3, 5), q)) < 1e-12
    assert abs(fs.exp_sum(W, (0, 0, 0), q) - q ** 2) < 1e-12


def test_gauss_sum_magnitude():
    W = diagonal_power(2, 1)
    for q in (3, 5, 7, 13, 31):
        for p1 in range(1, q):
            s = fs.exp_sum(W, (p1, 0), q)
            assert abs(abs(s) - math.sqrt(q)) <= 1e-9 * math.sqrt(q)


def test_strategies_agree():
    W = parse_poly("x^3+y^3")
    q = 17
    direct = fs.build_sum_table(W, q, strategy="direct")
    dft = fs.build_sum_table(W, q, strategy="dft")
    assert np.allclose(direct.values, dft.values, atol=1e-8 * q ** 2)


def test_weil_verify_cubic():
    W = parse_poly("x^3")
    tab = fs.build_sum_table(W, 31)
    rep = fs.weil_verify(tab, 3)
    assert rep["violations"] == []
    assert rep["max_ratio"] <= 1.0


def test_plancherel():
    W = parse_poly("x^3+y^3")
    for q in (7, 11):
        assert fs.plancherel_verify(fs.build_sum_table(W, q)) < 1e-9


def test_gq_membership_and_density():
    W = parse_poly("x^3+y^3")
    tab = fs.build_sum_table(W, 31)
    gq = fs.compute_Gq(tab)
    assert 0.0 < gq.density <= 1.0
    # Membership agrees with the threshold definition.
    d = tab.dim
    thresh = 0.1 * 31 ** (d / 2)
    for p in [(0, 0, 0), (1, 2, 3), (5, 5, 5), (30, 1, 17)]:
        assert (p in gq) == (abs(tab.at(p)) >= thresh)


def test_gq_custom_threshold_shrinks():
    W = parse_poly("x^3+y^3")
    tab = fs.build_sum_table(W, 31)
    loose = fs.compute_Gq(tab, 0.1)
    tight = fs.compute_Gq(tab, 1.0)
    assert tight.density <= loose.density


def test_budget_enforced():
    W = parse_poly("x^3+y^3")
    with pytest.raises(BudgetError) as info:
        fs.exp_sum(W, (1, 0, 0), 101, budget=1000)
    assert info.value.limit == 1000
    assert info.value.estimated_ops > 1000


def test_budget_charges_chosen_strategy():
    # The dft strategy estimate q^(d+2) decides feasibility, not the
    # direct-enumeration q^(2d).
    assert estimate_ops(101, 2, "dft") < estimate_ops(101, 2, "direct")


def test_grad_nonsingular():
    assert fs.grad_nonsingular_check(parse_poly("x^3+y^3"), 7)
    # x^3 mod 3 degenerates (3x^2 = 0 identically).
    assert not fs.grad_nonsingular_check(parse_poly("x^3"), 3)


def test_smooth_weight_kinds():
    for kind in ("bump", "gaussian", "spline"):
        z = fs.smooth_weight(16.0, 2, kind)
        assert z.values.min() >= 0.0
        assert z.values.max() > 0.0
        # bump/gaussian are ball-supported, the tensor spline box-supported
        if kind == "spline":
            r = np.max(np.abs(z.points / z.L), axis=1)
        else:
            r = np.sqrt(np.sum((z.points / z.L) ** 2, axis=1))
        assert np.all(z.values[r >= 1.0] == 0.0)
    with pytest.raises(PreconditionError):
        fs.smooth_weight(16.0, 1, "triangleish")


def test_block_sum_error_below_bound():
    W = parse_poly("x^3")
    z = fs.smooth_weight(4 * 11, 1, "bump")
    rep = fs.block_sum_verify(z, W, 11, 1)
    assert rep["error"] <= rep["bound"]
    assert rep["ratio"] <= 1.0


def test_block_sum_requires_enough_smoothing():
    W = parse_poly("x^3+y^3")
    z = fs.smooth_weight(28.0, 2, "bump")
    with pytest.raises(PreconditionError):
        fs.block_sum_verify(z, W, 7, 1)  # N = 1 <= d/2 boundary fails


@settings(deadline=None, max_examples=25)
@given(st.sampled_from([5, 7, 11, 13]),
       st.integers(min_value=0, max_value=12),
       st.integers(min_value=-12, max_value=12))
def test_conjugation_symmetry(q, p1, p2):
    # S(-p) = conj(S(p)) for any integer polynomial.
    W = parse_poly("x^3")
    s = fs.exp_sum(W, (p1, p2), q)
    sbar = fs.exp_sum(W, (-p1, -p2), q)
    assert cmath.isclose(sbar, s.conjugate(), abs_tol=1e-8 * q)


@settings(deadline=None, max_examples=10)
@given(st.sampled_from([5, 7, 11]))
def test_weil_bound_random_prime(q):
    W = parse_poly("x^3+y^3")
    rep = fs.weil_verify(fs.build_sum_table(W, q), 3)
    assert rep["violations"] == []
