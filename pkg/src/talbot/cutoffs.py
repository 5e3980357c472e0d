"""Smooth cutoff profiles and the oscillatory quadrature used on them.

Two kinds of cutoffs appear in the counterexample data:

* frequency bumps phi with Fourier transform supported in B(0, c) for a
  small c; realized here as the autocorrelation of a standard C-infinity
  bump, which keeps the physical side nonnegative;
* a lattice weight psi, a plain compactly supported bump on the physical
  side (product form over coordinates), truncating lattice sums.

All integrals over the compact Fourier support go through an adaptive
Gauss-Legendre rule with target tolerance 1e-8.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import PreconditionError

QUAD_TOL = 1e-8
DEFAULT_C = 0.01


@lru_cache(maxsize=64)
def _gl_rule(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def gl_nodes(order: int, a: float, b: float):
    """Gauss-Legendre nodes and weights on [a, b]."""
    x, w = _gl_rule(order)
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * x, half * w


def adaptive_quad(f, a: float, b: float, tol: float = QUAD_TOL,
                  max_panels: int = 4096):
    """Integral of a vectorized (possibly complex) integrand by adaptive
    panel bisection, comparing 24- and 48-point Gauss rules per panel."""
    stack = [(a, b)]
    total = 0.0 + 0.0j
    panels = 0
    while stack:
        lo, hi = stack.pop()
        panels += 1
        if panels > max_panels:
            raise PreconditionError("quadrature failed to converge")
        x1, w1 = gl_nodes(24, lo, hi)
        x2, w2 = gl_nodes(48, lo, hi)
        c1 = np.sum(w1 * f(x1))
        c2 = np.sum(w2 * f(x2))
        if abs(c2 - c1) <= tol * max(1.0, abs(c2)) * (hi - lo) / (b - a):
            total += c2
        else:
            mid = 0.5 * (lo + hi)
            stack.append((lo, mid))
            stack.append((mid, hi))
    return total


def _bump(v: np.ndarray) -> np.ndarray:
    """exp(-1/(1-v^2)) on |v| < 1, zero outside."""
    v = np.asarray(v, dtype=float)
    out = np.zeros_like(v)
    inside = np.abs(v) < 1.0
    vi = v[inside]
    out[inside] = np.exp(-1.0 / (1.0 - vi * vi))
    return out


class CutoffProfile:
    """Frequency bump with hat(phi) = eta * eta (convolution), where
    eta(u) = exp(-1/(1-(2u/c)^2)) lives on |u| < c/2.  The physical
    side is then the square of a real even function, hence nonnegative.
    """

    def __init__(self, c: float = DEFAULT_C, order: int = 96):
        if not 0 < c <= 0.05:
            raise PreconditionError("Fourier support radius must be in (0, 0.05]")
        self.c = c
        self.name = "autocorrelated-bump"
        self._u, self._w = gl_nodes(order, -c / 2, c / 2)
        self._eta_u = _bump(2 * self._u / c)
        # normalize so integral of eta = 1, hence phi(0) = 1
        self._eta_norm = float(np.sum(self._w * self._eta_u))
        self._eta_u /= self._eta_norm

    # -- Fourier side -----------------------------------------------------

    def fourier(self, xi) -> np.ndarray:
        """hat(phi)(xi), supported in |xi| <= c."""
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        vals = self._w * self._eta_u
        out = _bump(2 * (xi[:, None] - self._u[None, :]) / self.c) @ vals
        return out / self._eta_norm

    def fourier_l1(self) -> float:
        """integral of hat(phi) = (integral of eta)^2."""
        return float(np.sum(self._w * self._eta_u)) ** 2

    def fourier_l2sq(self) -> float:
        """integral of hat(phi)^2 over the support."""
        xs, ws = gl_nodes(192, -self.c, self.c)
        return float(np.sum(ws * self.fourier(xs) ** 2))

    # -- physical side ----------------------------------------------------

    def _eta_phys(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        ph = np.exp(2j * np.pi * x[:, None] * self._u[None, :])
        return np.real(ph @ (self._w * self._eta_u))

    def physical(self, x) -> np.ndarray:
        """phi(x) = eta(x)^2 >= 0 with eta the inverse transform of the
        base bump."""
        return self._eta_phys(x) ** 2

    def at_zero(self) -> float:
        return self.fourier_l1()

    def tail_bound(self, x: float) -> float:
        """|phi(x)| <= min(||eta||_1, C2/(2 pi x)^2)^2 from two
        integrations by parts on eta."""
        l1 = float(np.sum(self._w * self._eta_u))
        if x == 0:
            return l1 ** 2
        grid = np.linspace(-self.c / 2, self.c / 2, 20001)
        vals = _bump(2 * grid / self.c) / self._eta_norm
        d2 = np.gradient(np.gradient(vals, grid), grid)
        c2 = float(np.trapezoid(np.abs(d2), grid))
        return min(l1, c2 / (2 * math.pi * abs(x)) ** 2) ** 2

    def oscillatory(self, phase, tol: float = QUAD_TOL) -> complex:
        """integral of hat(phi)(xi) e^{2 pi i phase(xi)} over the support;
        phase is vectorized real-valued."""
        def f(xi):
            return self.fourier(xi) * np.exp(2j * np.pi * phase(xi))
        return adaptive_quad(f, -self.c, self.c, tol=tol)


class LatticeWeight:
    """Physical-side product bump psi(v) = prod_j exp(1 - 1/(1 - v_j^2)),
    supported in the unit cube, psi(0) = 1."""

    name = "product-bump"
    support_radius = 1.0

    def __call__(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        vals = np.e * _bump(v)
        if v.ndim <= 1:
            return vals
        return np.prod(vals, axis=-1)

    def axis(self, v) -> np.ndarray:
        """The 1D factor, vectorized."""
        return np.e * _bump(np.asarray(v, dtype=float))
