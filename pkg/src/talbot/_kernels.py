"""Numeric kernels for exponential-sum tables.

Two interchangeable strategies:

* ``direct`` gathers precomputed roots of unity and reduces them with
  numpy's pairwise summation.  Cost ~ q^(2d+1) element operations; it is
  the reference semantics (one unit-modulus phase per lattice point).
* ``dft``   evaluates the same table as d-dimensional discrete Fourier
  transforms written as matrix products against the exact root-of-unity
  matrix, so the heavy lifting runs inside BLAS.  Cost ~ q^(d+2).

Both are exact in exact arithmetic and deterministic (single reduction
order, no thread-count dependence); they agree to ~1e-10 relative in
floats.  Selection: TALBOT_KERNEL=direct|dft|auto, default auto.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import BudgetError
from .intpoly import IntPoly

#: refuse anything above this many elementary operations unless forced
DEFAULT_BUDGET = 1e10

#: direct strategy above this cost is pointless when dft is available
_AUTO_DIRECT_LIMIT = 2e8


def roots_of_unity(q: int) -> np.ndarray:
    """e(j/q) for j = 0..q-1 with exact 2*pi*j/q arguments."""
    j = np.arange(q)
    return np.exp(2j * np.pi * j / q)


def field_grid(q: int, d: int) -> np.ndarray:
    """All points of F_q^d as an int64 array of shape (q^d, d)."""
    axes = np.indices((q,) * d).reshape(d, -1).T
    return np.ascontiguousarray(axes, dtype=np.int64)


def active_backend() -> str:
    env = os.environ.get("TALBOT_KERNEL", "auto").lower()
    if env not in ("auto", "direct", "dft"):
        raise ValueError(f"TALBOT_KERNEL={env!r} (want auto, direct or dft)")
    return env


def estimate_ops(q: int, d: int, strategy: str) -> float:
    if strategy == "direct":
        return float(q) ** (2 * d + 1)
    return float(q) ** (d + 2)


def choose_strategy(q: int, d: int) -> str:
    env = active_backend()
    if env != "auto":
        return env
    return "direct" if estimate_ops(q, d, "direct") <= _AUTO_DIRECT_LIMIT else "dft"


def table_values(poly: IntPoly, q: int, *, strategy: str | None = None,
                 budget: float = DEFAULT_BUDGET, force: bool = False) -> np.ndarray:
    """Full table of S(p) for p in F_q^(d+1), shape (q,)*(d+1).

    Index order: values[p1, p'1, ..., p'd].
    """
    d = poly.num_vars
    strat = strategy or choose_strategy(q, d)
    cost = estimate_ops(q, d, strat)
    if cost > budget and not force:
        raise BudgetError(cost, budget, f"sum table q={q} d={d} ({strat})")
    grid = field_grid(q, d)
    wvals = poly.eval_mod(grid, q).reshape((q,) * d)  # W(r') mod q
    roots = roots_of_unity(q)
    if strat == "direct":
        return _table_direct(wvals, q, d, roots)
    return _table_dft(wvals, q, d, roots)


def _table_direct(wvals: np.ndarray, q: int, d: int, roots: np.ndarray) -> np.ndarray:
    out = np.empty((q,) * (d + 1), dtype=np.complex128)
    ps = np.arange(q, dtype=np.int64)
    rs = np.arange(q, dtype=np.int64)
    lin = np.outer(ps, rs) % q  # (p, r) -> p*r mod q
    if d == 1:
        for p1 in range(q):
            exps = (lin + (p1 * wvals[np.newaxis, :]) % q) % q
            out[p1] = roots[exps].sum(axis=-1)
        return out
    if d == 2:
        p3r3 = lin[None, :, :]  # (1, p3, r3)
        for p1 in range(q):
            base = (p1 * wvals) % q                       # (r2, r3)
            for p2 in range(q):
                off = (lin[p2][:, None] + base) % q       # (r2, r3)
                exps = (off[:, None, :] + p3r3) % q       # (r2, p3, r3)
                out[p1, p2] = roots[exps].sum(axis=(0, 2))
        return out
    raise NotImplementedError("direct tables implemented for d <= 2")


def _table_dft(wvals: np.ndarray, q: int, d: int, roots: np.ndarray) -> np.ndarray:
    F = roots[np.outer(np.arange(q), np.arange(q)) % q]  # DFT matrix, +i sign
    out = np.empty((q,) * (d + 1), dtype=np.complex128)
    if d == 1:
        X = roots[(np.arange(q)[:, None] * wvals[None, :]) % q]  # (p1, r)
        np.matmul(X, F.T, out=out)
        return out
    if d == 2:
        for p1 in range(q):
            X = roots[(p1 * wvals) % q]
            out[p1] = F @ X @ F.T
        return out
    raise NotImplementedError("dft tables implemented for d <= 2")
