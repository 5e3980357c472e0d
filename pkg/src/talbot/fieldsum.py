"""Complete exponential sums over prime fields.

Central object: the table of

    S(p) = sum_{r in F_q^d} e((p'.r + p1*W(r)) / q),   p = (p1, p'),

for a fixed integer polynomial W in d variables.  On top of it sit the
square-root cancellation check (Weil/Deligne bound), the Plancherel
identity, the large-sum set G(q), a gradient nonsingularity scan, and
the block-summation lemma that transfers these complete sums to smooth
weighted sums over boxes of side L >> q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import BudgetError, PreconditionError
from .intpoly import IntPoly
from .primes import is_prime

DEFAULT_C1 = 0.1
DEFAULT_BUDGET = _kernels.DEFAULT_BUDGET


def _require_prime(q: int) -> None:
    if not is_prime(q):
        raise PreconditionError(f"q={q} is not prime")


def poly_eval_mod(poly: IntPoly, point, q: int):
    """W(point) mod q with modular reduction at every multiply."""
    _require_prime(q)
    return poly.eval_mod(point, q)


def exp_sum(W_k: IntPoly, p, q: int, *, budget: float = _kernels.DEFAULT_BUDGET,
            force: bool = False) -> complex:
    """S(p) for a single frequency p = (p1, p'), by direct summation.

    Unit-modulus phases are read from the exact roots-of-unity table and
    reduced with numpy's pairwise summation, so the result is
    bit-reproducible regardless of parallelism elsewhere.
    """
    _require_prime(q)
    d = W_k.num_vars
    p = [int(v) % q for v in np.atleast_1d(np.asarray(p, dtype=np.int64))]
    if len(p) != d + 1:
        raise PreconditionError(f"p must have {d + 1} components, got {len(p)}")
    cost = float(q) ** d
    if cost > budget and not force:
        raise BudgetError(cost, budget, f"exp_sum q={q} d={d}")
    grid = _kernels.field_grid(q, d)
    wv = W_k.eval_mod(grid, q)
    p1, pp = p[0], np.asarray(p[1:], dtype=np.int64)
    exps = (grid @ pp + p1 * wv) % q
    return complex(np.sum(_kernels.roots_of_unity(q)[exps]))


@dataclass
class SumTable:
    """All q^(d+1) values S(p), indexed values[p1, p'1, ..., p'd]."""

    q: int
    dim: int
    poly: IntPoly
    values: np.ndarray
    c1: float = DEFAULT_C1

    def __post_init__(self):
        if self.values.shape != (self.q,) * (self.dim + 1):
            raise PreconditionError("table shape does not match q, d")

    def at(self, p) -> complex:
        idx = tuple(int(v) % self.q for v in np.atleast_1d(p))
        return complex(self.values[idx])

    def abs_values(self) -> np.ndarray:
        return np.abs(self.values)


def build_sum_table(W_k: IntPoly, q: int, c1: float = DEFAULT_C1, *,
                    strategy: str | None = None,
                    budget: float = _kernels.DEFAULT_BUDGET,
                    force: bool = False) -> SumTable:
    """Tabulate S(p) over all p in F_q^(d+1).

    Strategy 'direct' sums q^d phases per entry; 'dft' evaluates the
    same sums as exact-root DFT matrix products (the default for
    anything large).  Cost of the chosen strategy is checked against the
    budget and the call refuses with the estimate when over, unless
    forced.
    """
    _require_prime(q)
    values = _kernels.table_values(W_k, q, strategy=strategy,
                                   budget=budget, force=force)
    # the p=0 entry is a sum of ones; pin it exactly
    values[(0,) * (W_k.num_vars + 1)] = float(q) ** W_k.num_vars
    # p1=0, p' != 0 rows are geometric sums that vanish exactly
    zero_row = np.zeros((q,) * W_k.num_vars, dtype=np.complex128)
    zero_row[(0,) * W_k.num_vars] = float(q) ** W_k.num_vars
    values[0] = zero_row
    return SumTable(q=q, dim=W_k.num_vars, poly=W_k, values=values, c1=c1)


def weil_verify(table: SumTable, k: int) -> dict:
    """Check |S(p)| <= (k-1)^d q^(d/2) for all p with p1 != 0.

    Refuses when q | k (hypothesis of the square-root bound fails); the
    gradient nonsingularity hypothesis is the caller's to check or
    waive.
    """
    q, d = table.q, table.dim
    if k % q == 0:
        raise PreconditionError(f"q={q} divides k={k}: the bound's hypothesis fails")
    bound = (k - 1) ** d * q ** (d / 2)
    mags = table.abs_values()[1:]  # p1 = 1..q-1
    max_mag = float(mags.max())
    violations = []
    if max_mag > bound * (1 + 1e-9):
        where = np.argwhere(mags > bound * (1 + 1e-9))
        for idx in where[:100]:
            p = (int(idx[0]) + 1, *map(int, idx[1:]))
            violations.append((p, float(mags[tuple(idx)])))
    return {"max_ratio": max_mag / bound, "bound": bound,
            "max_abs": max_mag, "violations": violations}


def plancherel_verify(table: SumTable) -> float:
    """Relative deviation of sum_p |S(p)|^2 from q^(2(d+1)-1)."""
    q, d = table.q, table.dim
    target = float(q) ** (2 * (d + 1) - 1)
    total = float(np.sum(table.abs_values() ** 2))
    return abs(total - target) / target


@dataclass
class GqSet:
    """Frequencies where the sum is as large as the square-root bound allows.

    members() iterates tuples; `mask` is the boolean table indexed like
    SumTable.values (kept as an array because q^(d+1) tuples get big).
    """

    q: int
    c1: float
    mask: np.ndarray
    density: float = field(init=False)

    def __post_init__(self):
        self.density = float(self.mask.mean())

    def __contains__(self, p) -> bool:
        idx = tuple(int(v) % self.q for v in np.atleast_1d(p))
        return bool(self.mask[idx])

    def members(self):
        for idx in np.argwhere(self.mask):
            yield tuple(int(v) for v in idx)

    def __len__(self) -> int:
        return int(self.mask.sum())


def compute_Gq(table: SumTable, c1: float | None = None) -> GqSet:
    """G(q) = {p : |S(p)| >= c1 q^(d/2)}; density is the measured stand-in
    for the existential constant of the large-sum lemma."""
    c1 = table.c1 if c1 is None else float(c1)
    thresh = c1 * table.q ** (table.dim / 2)
    return GqSet(q=table.q, c1=c1, mask=table.abs_values() >= thresh)


def grad_nonsingular_check(W_k: IntPoly, q: int, *,
                           budget: float = _kernels.DEFAULT_BUDGET) -> bool:
    """True iff grad W_k vanishes nowhere on F_q^d minus the origin.

    This scans the base field only.  It is necessary but weaker than
    nonsingularity over the algebraic closure, which no finite scan can
    decide; the standard diagonal families are certified by hand in the
    fixtures instead.
    """
    _require_prime(q)
    if not W_k.is_homogeneous():
        raise PreconditionError("gradient check expects a homogeneous polynomial")
    d = W_k.num_vars
    if float(q) ** d > budget:
        raise BudgetError(float(q) ** d, budget, "gradient scan")
    grid = _kernels.field_grid(q, d)
    nonzero = ~np.all(grid == 0, axis=1)
    all_zero = np.ones(grid.shape[0], dtype=bool)
    for i in range(d):
        all_zero &= W_k.partial(i).eval_mod(grid, q) == 0
    return not bool(np.any(all_zero & nonzero))


# --------------------------------------------------------------- block sums


def _bspline(x: np.ndarray, order: int) -> np.ndarray:
    """Cardinal B-spline of the given order on its support [0, order]."""
    out = np.zeros_like(x, dtype=float)
    for j in range(order + 1):
        out += (-1) ** j * math.comb(order, j) * \
            np.maximum(x - j, 0.0) ** (order - 1)
    out = out / math.factorial(order - 1)
    out[x >= order] = 0.0
    return out


def smooth_weight(L: float, d: int, kind: str = "bump",
                  order: int = 4) -> "SampledWeight":
    """A smooth nonnegative weight on Z^d supported in |m| < L.

    'bump' is the compactly supported exp(-1/(1-|m/L|^2)); 'gaussian' is
    a Gaussian profile truncated at radius L (three sigmas inside, so
    the truncation error is far below the lemma's error term); 'spline'
    is a tensor product of cardinal B-splines of the given order, whose
    finite smoothness makes the error track the Laplacian bound's
    polynomial rate instead of beating it.
    """
    rng = np.arange(-math.ceil(L) + 1, math.ceil(L))
    grid = np.stack(np.meshgrid(*([rng] * d), indexing="ij"), axis=-1)
    r2 = np.sum((grid / L) ** 2, axis=-1)
    if kind == "bump":
        vals = np.zeros_like(r2)
        inside = r2 < 1.0
        vals[inside] = np.exp(-1.0 / (1.0 - r2[inside]))
    elif kind == "gaussian":
        vals = np.where(r2 < 1.0, np.exp(-4.5 * r2), 0.0)
    elif kind == "spline":
        # Knots are offset by an irrational phase; aligned knots make the
        # weighted sum reproduce the complete-sum main term exactly and
        # hide the generic error rate.
        delta = 0.5 / math.pi
        axes = _bspline(delta + (order - 2 * delta) * (grid / L + 1.0) / 2.0,
                        order)
        vals = np.prod(axes, axis=-1)
    else:
        raise PreconditionError(f"unknown weight kind {kind!r}")
    return SampledWeight(L=float(L), d=d, points=grid.reshape(-1, d),
                         values=vals.reshape(-1))


@dataclass
class SampledWeight:
    L: float
    d: int
    points: np.ndarray  # (N, d) int
    values: np.ndarray  # (N,) float

    def laplacian_power_sup(self, N: int) -> float:
        """sup |discrete-Laplacian^N zeta|, for the lemma's hypothesis report."""
        side = 2 * math.ceil(self.L) - 1
        arr = self.values.reshape((side,) * self.d)
        for _ in range(N):
            out = -2 * self.d * arr
            for ax in range(self.d):
                out = out + np.roll(arr, 1, axis=ax) + np.roll(arr, -1, axis=ax)
            arr = out
        return float(np.abs(arr).max())


def block_sum_verify(zeta: SampledWeight, f: IntPoly, q: int, N: int) -> dict:
    """Compare the smooth weighted sum against its complete-sum main term.

        lhs  = sum_m zeta(m) e(f(m)/q)
        main = (q^-d sum zeta) * sum_{l in F_q^d} e(f(l)/q)

    and report error = |lhs - main| against bound = q^(d/2) (L/q)^(d-2N).
    """
    _require_prime(q)
    d = f.num_vars
    if zeta.d != d:
        raise PreconditionError("weight dimension does not match polynomial")
    if 2 * N <= d:
        raise PreconditionError(f"need N > d/2, got N={N}, d={d}")
    roots = _kernels.roots_of_unity(q)
    fv = f.eval_mod(zeta.points, q)
    lhs = complex(np.sum(zeta.values * roots[fv]))
    grid = _kernels.field_grid(q, d)
    complete = complex(np.sum(roots[f.eval_mod(grid, q)]))
    zsum = float(np.sum(zeta.values))
    main = zsum / float(q) ** d * complete
    error = abs(lhs - main)
    bound = q ** (d / 2) * (zeta.L / q) ** (d - 2 * N)
    return {"lhs": lhs, "main_term": main, "error": error, "bound": bound,
            "ratio": error / bound, "zeta_sum": zsum, "complete_sum": complete}
