import math

import numpy as np
import pytest

from talbot.cutoffs import (CutoffProfile, LatticeWeight, adaptive_quad,
                            gl_nodes)
from talbot.errors import PreconditionError


def test_gl_nodes_integrate_polynomials_exactly():
    x, w = gl_nodes(8, -1.0, 3.0)
    for deg in range(12):
        got = float(np.sum(w * x ** deg))
        want = (3.0 ** (deg + 1) - (-1.0) ** (deg + 1)) / (deg + 1)
        assert abs(got - want) < 1e-10 * max(abs(want), 1.0)


def test_adaptive_quad_oscillatory():
    got = adaptive_quad(lambda x: np.exp(2j * np.pi * 40 * x), 0.0, 1.0)
    assert abs(got) < 1e-8
    got = adaptive_quad(lambda x: np.cos(x), 0.0, math.pi / 2)
    assert abs(got - 1.0) < 1e-8


def test_profile_normalization():
    phi = CutoffProfile()
    assert abs(phi.at_zero() - 1.0) < 1e-10
    assert abs(phi.fourier_l1() - 1.0) < 1e-8


def test_fourier_support():
    phi = CutoffProfile(c=0.01)
    xi = np.array([-0.02, -0.011, 0.011, 0.02])
    assert np.all(phi.fourier(xi) == 0.0)
    assert phi.fourier(np.array([0.0]))[0] > 0.0


def test_fourier_is_even_and_positive():
    phi = CutoffProfile(c=0.02)
    xi = np.linspace(-0.019, 0.019, 41)
    v = phi.fourier(xi)
    assert np.allclose(v, v[::-1], atol=1e-12)
    assert np.all(v >= 0.0)


def test_physical_side_nonnegative():
    phi = CutoffProfile()
    x = np.linspace(-300.0, 300.0, 601)
    assert np.all(phi.physical(x) >= 0.0)


def test_physical_matches_fourier_integral():
    # phi(x) = Int phihat(xi) e(x xi) dxi, cross-checked by quadrature.
    phi = CutoffProfile(c=0.02)
    for x0 in (0.0, 3.7, 25.0):
        want = adaptive_quad(
            lambda u: phi.fourier(np.atleast_1d(u))
            * np.exp(2j * np.pi * x0 * np.atleast_1d(u)), -0.02, 0.02)
        assert abs(phi.physical(np.array([x0]))[0] - want.real) < 1e-6


def test_l2sq_positive_and_scales():
    small = CutoffProfile(c=0.01).fourier_l2sq()
    large = CutoffProfile(c=0.02).fourier_l2sq()
    # Widening the Fourier support at unit mass lowers the L2 density.
    assert small > large > 0.0


def test_c_range_enforced():
    with pytest.raises(PreconditionError):
        CutoffProfile(c=0.2)
    with pytest.raises(PreconditionError):
        CutoffProfile(c=0.0)


def test_lattice_weight_support():
    psi = LatticeWeight()
    v = np.array([-1.5, -1.0, 0.0, 0.5, 1.0, 1.5])
    out = psi.axis(v)
    assert out[2] == pytest.approx(1.0)
    assert np.all(out[[0, 1, 4, 5]] == 0.0)
    assert np.all(out >= 0.0)
