"""Slab families around Talbot revival points and their geometry.

A slab is the axis-aligned box

    E_{p,q,R} = B(k R^(k-1)/D^k * p1/q, R^(-1/2)) x B(p'/(Dq), 1/R)

and F_R is the union over primes q in [Q/2, Q] and frequencies p whose
residue mod q lies in the large-sum set G(q).  This module enumerates
those families, rescales them to unit-cell box families used for the
ubiquity argument, and measures them: exact union measures (n <= 2),
exact overlap pair counts, exact grid covering numbers, and log-log
slope fits against the dimension formulas.

Families are stored as numpy arrays (one row per slab), with a Slab
view object for element access.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .primes import primes_in
from .regions import ParamPoint, dilation_line_rhs, dq_from_u

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class FamilyParams:
    R: float
    D: float
    Q: float
    k: int
    n: int
    u1: float
    u2: float


@dataclass(frozen=True)
class Slab:
    center: tuple
    radii: tuple
    p: tuple
    q: int

    def __post_init__(self):
        if any(r <= 0 for r in self.radii):
            raise PreconditionError("slab radii must be positive")

    def lo(self):
        return tuple(c - r for c, r in zip(self.center, self.radii))

    def hi(self):
        return tuple(c + r for c, r in zip(self.center, self.radii))


@dataclass
class SlabFamily:
    centers: np.ndarray          # (N, n) float
    radii: np.ndarray            # (N, n) float
    ps: np.ndarray               # (N, n) int64
    qs: np.ndarray               # (N,) int64
    params: FamilyParams
    kind: str                    # "F_R" | "Omega" | "H_R"

    def __len__(self):
        return self.centers.shape[0]

    def slab(self, i: int) -> Slab:
        return Slab(tuple(self.centers[i]), tuple(self.radii[i]),
                    tuple(int(v) for v in self.ps[i]), int(self.qs[i]))

    def boxes(self):
        """(lo, hi) corner arrays."""
        return self.centers - self.radii, self.centers + self.radii


@dataclass(frozen=True)
class DilationExponents:
    a1: float
    a2: float
    epsilon: float

    def __post_init__(self):
        if self.epsilon <= 0:
            raise PreconditionError("epsilon must be positive")


def prime_window(Q: float) -> list[int]:
    """Primes in [Q/2, Q]; the degenerate single layer q=1 when Q < 2."""
    if Q < 2:
        return [1]
    qs = primes_in(math.ceil(Q / 2), math.floor(Q))
    return qs if qs else [1]


def _gq_members(gq_tables, q: int, n: int):
    """Boolean residue mask of shape (q,)*n for the layer q."""
    if q == 1:
        return np.ones((1,) * n, dtype=bool)
    if q not in gq_tables:
        raise PreconditionError(f"missing G(q) table for q={q}")
    gq = gq_tables[q]
    mask = np.asarray(gq.mask, dtype=bool)
    if mask.shape != (q,) * n:
        raise PreconditionError(f"G({q}) mask has wrong shape {mask.shape}")
    return mask


def admissible_family(k: int, n: int, R: float, u1: float, u2: float,
                      gq_tables: dict) -> SlabFamily:
    """All slabs of F_R meeting [-1, 1]^n.

    Slab centers for fixed q are k R^(k-1)/(D^k q) periodic in x1 and
    1/(Dq) periodic in each remaining axis; only frequencies with
    p mod q in G(q) contribute.
    """
    if n != 2:
        raise PreconditionError("family enumeration implemented for n = 2")
    point = ParamPoint(u1, u2, k, n)
    D, Q = dq_from_u(point, R)
    r1, r2 = R ** -0.5, 1.0 / R
    rows_c, rows_p, rows_q = [], [], []
    for q in prime_window(Q):
        mask = _gq_members(gq_tables, q, n)
        s1 = k * R ** (k - 1) / (D ** k * q)
        p1_lo = math.ceil((-1 - r1) / s1)
        p1_hi = math.floor((1 + r1) / s1)
        s2 = 1.0 / (D * q)
        p2_all = np.arange(math.ceil((-1 - r2) / s2), math.floor((1 + r2) / s2) + 1,
                           dtype=np.int64)
        for p1 in range(p1_lo, p1_hi + 1):
            # The revival carrier at t = -p1/(D^k q) samples the residue
            # (-p1, p2), so membership is tested on that row.
            row = mask[-p1 % q]
            p2 = p2_all[row[p2_all % q]]
            if p2.size == 0:
                continue
            c = np.empty((p2.size, 2))
            c[:, 0] = s1 * p1
            c[:, 1] = s2 * p2
            rows_c.append(c)
            pp = np.empty((p2.size, 2), dtype=np.int64)
            pp[:, 0] = p1
            pp[:, 1] = p2
            rows_p.append(pp)
            rows_q.append(np.full(p2.size, q, dtype=np.int64))
    if rows_c:
        centers = np.concatenate(rows_c)
        ps = np.concatenate(rows_p)
        qs = np.concatenate(rows_q)
    else:
        centers = np.empty((0, 2))
        ps = np.empty((0, 2), dtype=np.int64)
        qs = np.empty(0, dtype=np.int64)
    radii = np.tile(np.array([r1, r2]), (centers.shape[0], 1))
    return SlabFamily(centers, radii, ps, qs,
                      FamilyParams(R, D, Q, k, n, u1, u2), "F_R")


def family_count_target(k: int, n: int, R: float, u1: float, u2: float) -> float:
    """The asymptotic slab count R^((n+1/(k-1))u2 + ((k-2)/(k-1))u1 - 1)."""
    return R ** ((n + 1 / (k - 1)) * u2 + (k - 2) / (k - 1) * u1 - 1)


# ------------------------------------------------------------ unit-cell sets


def unit_cell_radii(params: FamilyParams, a: DilationExponents) -> tuple[float, float]:
    """Box half-widths (h1, h2) of the dilated unit-cell family:
    h1 = D^k/(k R^(k-1) R^a1) = R^(u1-a1)/(kQ),  h2 = D/R^a2 = R^(u2-a2)/Q."""
    R, Q, k = params.R, params.Q, params.k
    return R ** (params.u1 - a.a1) / (k * Q), R ** (params.u2 - a.a2) / Q


def _check_dilation(params: FamilyParams, a: DilationExponents):
    p = ParamPoint(params.u1, params.u2, params.k, params.n)
    if not (params.u1 - 1e-9 <= a.a1 <= 0.5 + 1e-9
            and params.u2 - 1e-9 <= a.a2 <= 1 + 1e-9):
        raise PreconditionError("dilation exponents outside the admissible box")
    rhs = dilation_line_rhs(p, a.epsilon)
    if abs(a.a1 + (params.n - 1) * a.a2 - rhs) > 1e-9:
        raise PreconditionError("dilation exponents off the admissible line")


def omega_family(gq_tables: dict, qs: list[int], n: int, h1: float, h2: float,
                 params: FamilyParams, kind: str = "Omega") -> SlabFamily:
    """Unit-cell family: boxes B(p1/q, h1) x B(p'/q, h2)^(n-1) for every
    layer q and every residue p in G(q) cap [0, q)^n."""
    rows_c, rows_p, rows_q = [], [], []
    for q in qs:
        mask = _gq_members(gq_tables, q, n)
        pts = np.argwhere(mask).astype(np.int64)
        if pts.size == 0:
            continue
        rows_c.append(pts / q)
        rows_p.append(pts)
        rows_q.append(np.full(pts.shape[0], q, dtype=np.int64))
    centers = np.concatenate(rows_c) if rows_c else np.empty((0, n))
    ps = np.concatenate(rows_p) if rows_p else np.empty((0, n), dtype=np.int64)
    qcol = np.concatenate(rows_q) if rows_q else np.empty(0, dtype=np.int64)
    radii = np.tile(np.array([h1] + [h2] * (n - 1)), (centers.shape[0], 1))
    return SlabFamily(centers, radii, ps, qcol, params, kind)


def dilated_unit_cell(family: SlabFamily, a: DilationExponents) -> SlabFamily:
    """Rescale F_R to the unit-cell family Omega_{R,a} of boxes
    B(p1/q, h1) x B(p'/q, h2) over the residues appearing in the family."""
    _check_dilation(family.params, a)
    h1, h2 = unit_cell_radii(family.params, a)
    n = family.params.n
    residues = {}
    for q in np.unique(family.qs):
        sel = family.qs == q
        res = np.unique(family.ps[sel] % q, axis=0)
        mask = np.zeros((q,) * n, dtype=bool)
        mask[tuple(res.T)] = True
        residues[int(q)] = _Residues(mask)
    return omega_family(residues, sorted(residues), n, h1, h2, family.params)


class _Residues:
    def __init__(self, mask):
        self.mask = mask


def ubiquity_X(n_layers: int, Q: float, n: int, h1: float, h2: float) -> float:
    """The saturation parameter X = |P_Q| Q^n h1 h2^(n-1); the unit-cell
    union measure is bounded below by c X/(1+X)."""
    return n_layers * Q ** n * h1 * h2 ** (n - 1)


# ---------------------------------------------------------------- measures


def _merged_length(lo: np.ndarray, hi: np.ndarray) -> float:
    """Total length of a union of closed intervals."""
    if lo.size == 0:
        return 0.0
    order = np.argsort(lo, kind="stable")
    s, e = lo[order], hi[order]
    reach = np.maximum.accumulate(e)
    prev = np.concatenate(([s[0]], reach[:-1]))
    return float(np.sum(np.maximum(0.0, e - np.maximum(s, prev))))


def _merged_cells(j0: np.ndarray, j1: np.ndarray) -> int:
    """Number of integers covered by a union of integer ranges [j0, j1]."""
    if j0.size == 0:
        return 0
    order = np.argsort(j0, kind="stable")
    s, e = j0[order], j1[order] + 1
    reach = np.maximum.accumulate(e)
    prev = np.concatenate(([s[0]], reach[:-1]))
    return int(np.sum(np.maximum(0, e - np.maximum(s, prev))))


def box_union_measure(lo: np.ndarray, hi: np.ndarray) -> float:
    """Exact Lebesgue measure of a union of boxes, n <= 2 (sweep)."""
    lo = np.atleast_2d(np.asarray(lo, dtype=float))
    hi = np.atleast_2d(np.asarray(hi, dtype=float))
    n = lo.shape[1]
    if n == 1:
        return _merged_length(lo[:, 0], hi[:, 0])
    if n != 2:
        raise PreconditionError("exact sweep implemented for n <= 2")
    cuts = np.unique(np.concatenate([lo[:, 0], hi[:, 0]]))
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        active = (lo[:, 0] <= a) & (hi[:, 0] >= b)
        if active.any():
            total += (b - a) * _merged_length(lo[active, 1], hi[active, 1])
    return total


def wrap_boxes_unit(lo: np.ndarray, hi: np.ndarray):
    """Fold boxes into the torus [0,1)^n, splitting at the seams."""
    pieces = [(lo.astype(float).copy(), hi.astype(float).copy())]
    n = lo.shape[1]
    for axis in range(n):
        nxt = []
        for plo, phi in pieces:
            shift = np.floor(plo[:, axis])
            plo[:, axis] -= shift
            phi[:, axis] -= shift
            over = phi[:, axis] > 1.0
            if over.any():
                right_lo, right_hi = plo[over].copy(), phi[over].copy()
                right_lo[:, axis] = 0.0
                right_hi[:, axis] = right_hi[:, axis] - 1.0
                phi = phi.copy()
                phi[over, axis] = 1.0
                nxt.append((right_lo, np.minimum(right_hi, 1.0)))
            nxt.append((plo, phi))
        pieces = nxt
    los = np.concatenate([p[0] for p in pieces])
    his = np.concatenate([p[1] for p in pieces])
    keep = np.all(his > los, axis=1)
    return los[keep], his[keep]


def union_measure(family: SlabFamily, method: str = "exact-sweep",
                  samples: int = 100_000, seed: int = 0,
                  wrap_unit: bool = False):
    """Lebesgue measure of the family union, with a rigorous error bar.

    exact-sweep (n <= 2): error 0.  monte-carlo: uniform sampling of the
    bounding box with a CLT standard error, any n.
    """
    lo, hi = family.boxes()
    if wrap_unit:
        lo, hi = wrap_boxes_unit(lo, hi)
    if len(lo) == 0:
        return 0.0, 0.0
    if method == "exact-sweep":
        return box_union_measure(lo, hi), 0.0
    if method != "monte-carlo":
        raise PreconditionError(f"unknown measure method {method!r}")
    if samples < 100:
        raise PreconditionError("monte-carlo needs at least 100 samples")
    rng = np.random.default_rng(seed)
    blo = lo.min(axis=0)
    bhi = hi.max(axis=0)
    vol = float(np.prod(bhi - blo))
    hits = 0
    batch = max(1, min(samples, 10_000_000 // max(1, len(lo))))
    done = 0
    while done < samples:
        m = min(batch, samples - done)
        x = rng.uniform(blo, bhi, size=(m, lo.shape[1]))
        inside = np.zeros(m, dtype=bool)
        for j in range(0, len(lo), 4096):
            sub_lo, sub_hi = lo[j:j + 4096], hi[j:j + 4096]
            todo = ~inside
            if not todo.any():
                break
            xt = x[todo]
            ok = np.any(np.all((xt[:, None, :] >= sub_lo) & (xt[:, None, :] <= sub_hi),
                               axis=2), axis=1)
            idx = np.flatnonzero(todo)
            inside[idx[ok]] = True
        hits += int(inside.sum())
        done += m
    frac = hits / samples
    err = vol * math.sqrt(max(frac * (1 - frac), 1.0 / samples) / samples)
    return vol * frac, err


# ------------------------------------------------------------ overlap pairs


def _interval_pair_count(alo, ahi, blo_sorted, bhi_sorted) -> int:
    """Ordered pairs (i, j) of closed intervals with A_i meeting B_j."""
    c_lo = np.searchsorted(blo_sorted, ahi, side="right")
    c_hi = np.searchsorted(bhi_sorted, alo, side="left")
    return int(np.sum(c_lo - c_hi))


def overlap_pair_count(family: SlabFamily):
    """Exact number of ordered index pairs (j, j') with intersecting
    closed boxes, diagonal included, and its ratio to the family size.
    A fully disjoint family gives count = |J|."""
    N = len(family)
    if N == 0:
        return 0, 0.0
    lo, hi = family.boxes()
    n = family.params.n
    if n == 2:
        key = np.round(np.stack([lo[:, 0], hi[:, 0]], axis=1), 15)
        uniq, inv = np.unique(key, axis=0, return_inverse=True)
        groups = []
        for g in range(uniq.shape[0]):
            idx = np.flatnonzero(inv == g)
            groups.append((uniq[g, 0], uniq[g, 1],
                           lo[idx, 1], hi[idx, 1],
                           np.sort(lo[idx, 1]), np.sort(hi[idx, 1])))
        count = 0
        for ga in groups:
            for gb in groups:
                if ga[0] <= gb[1] and gb[0] <= ga[1]:
                    count += _interval_pair_count(ga[2], ga[3], gb[4], gb[5])
    else:
        if N > 20000:
            raise PreconditionError("brute-force pair count limited to 20000 boxes")
        count = 0
        for j in range(0, N, 512):
            a_lo, a_hi = lo[j:j + 512], hi[j:j + 512]
            meet = np.all((a_lo[:, None, :] <= hi) & (lo <= a_hi[:, None, :]), axis=2)
            count += int(meet.sum())
    return count, count / N


# ---------------------------------------------------------------- coverings


def covering_count(family: SlabFamily, radius: float,
                   strategy: str = "fine-balls") -> int:
    """Number of radius-balls in a grid cover of the family union.

    The grid cell side is 2*radius/sqrt(n) so each cell fits inside one
    ball; the count is the exact number of cells meeting the union.
    fine-balls expects radius 1/R, sheets expects radius R^(-1/2).
    """
    R = family.params.R
    want = {"fine-balls": 1.0 / R, "sheets": R ** -0.5}.get(strategy)
    if want is None:
        raise PreconditionError(f"unknown covering strategy {strategy!r}")
    if abs(radius - want) > 1e-9 * want:
        raise PreconditionError(f"{strategy} covering expects radius {want!r}")
    n = family.params.n
    if n != 2:
        raise PreconditionError("covering count implemented for n = 2")
    if len(family) == 0:
        return 0
    delta = 2 * radius / math.sqrt(n)
    lo, hi = family.boxes()
    i0 = np.floor(lo[:, 0] / delta).astype(np.int64)
    i1 = np.floor(hi[:, 0] / delta).astype(np.int64)
    j0 = np.floor(lo[:, 1] / delta).astype(np.int64)
    j1 = np.floor(hi[:, 1] / delta).astype(np.int64)
    cuts = np.unique(np.concatenate([i0, i1 + 1]))
    total = 0
    for a, b in zip(cuts[:-1], cuts[1:]):
        active = (i0 <= a) & (i1 >= a)
        if active.any():
            total += int(b - a) * _merged_cells(j0[active], j1[active])
    return total


def dim_slope_estimate(scales):
    """(slope, stderr) of log count against log(1/radius) by least
    squares.  scales: iterable of (radius, count) pairs, >= 4 of them."""
    pts = [(float(r), float(c)) for r, c in scales]
    if len(pts) < 4:
        raise PreconditionError("need at least 4 scales for a slope fit")
    if any(c <= 0 or r <= 0 for r, c in pts):
        raise PreconditionError("radii and counts must be positive")
    x = np.log([1.0 / r for r, _ in pts])
    y = np.log([c for _, c in pts])
    A = np.vstack([x, np.ones_like(x)]).T
    coef, res, _, _ = np.linalg.lstsq(A, y, rcond=None)
    dof = len(pts) - 2
    ss = float(res[0]) if res.size else float(np.sum((y - A @ coef) ** 2))
    var = ss / dof / float(np.sum((x - x.mean()) ** 2))
    return float(coef[0]), math.sqrt(max(var, 0.0))


# ------------------------------------------------------------- point lookup


def slab_containing(k: int, n: int, R: float, u1: float, u2: float,
                    gq_tables: dict, x) -> tuple[int, tuple] | None:
    """The (q, p) tag of a slab of F_R containing x, or None.  Rounds x
    to the nearest lattice frequency per layer instead of enumerating."""
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise PreconditionError(f"point must have {n} coordinates")
    D, Q = dq_from_u(ParamPoint(u1, u2, k, n), R)
    r1, r2 = R ** -0.5, 1.0 / R
    for q in prime_window(Q):
        mask = _gq_members(gq_tables, q, n)
        s1 = k * R ** (k - 1) / (D ** k * q)
        p1 = round(x[0] / s1)
        if abs(x[0] - s1 * p1) > r1:
            continue
        pp = np.rint(x[1:] * D * q).astype(np.int64)
        if np.any(np.abs(x[1:] - pp / (D * q)) > r2):
            continue
        p = (int(p1),) + tuple(int(v) for v in pp)
        if mask[(-p[0] % q,) + tuple(v % q for v in p[1:])]:
            return q, p
    return None
