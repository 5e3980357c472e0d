"""Parameter calculus for the counterexample family.

The lattice datum is governed by two separation exponents (u1, u2) tied
to the modulation depth D and the prime window Q by

    R^u1 = D^k Q / R^(k-1),      R^u2 = D Q.

This module encodes the admissible domain of those exponents, the
above/below split that decides which covering strategy is sharp, the
resulting dimension formulas, the piecewise Sobolev-exponent curves
(power and saddle symbols), the positive-result thresholds they are
compared against, and CSV emission of all of it for plotting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PreconditionError


@dataclass(frozen=True)
class ParamPoint:
    u1: float
    u2: float
    k: int
    n: int

    def __post_init__(self):
        if self.k < 2 or self.n < 2:
            raise PreconditionError("need k >= 2 and n >= 2")


# ------------------------------------------------------------------ domain D


def in_domain_D(p: ParamPoint) -> tuple[bool, list[str]]:
    """Membership in the admissible exponent domain, with the failing
    constraints named.  Constraints:

      box:          0 <= u1 <= 1/2,  1/2 <= u2 <= 1
      Q >= 1:       k u2 - u1 >= k - 1
      shrinking:    u2 - u1 <= 1 - 1/k
      disjointness: ((k-2)/(k-1)) u1 + ((n(k-1)+1)/(k-1)) u2 <= n + 1/2
    """
    u1, u2, k, n = p.u1, p.u2, p.k, p.n
    bad = []
    if not 0 <= u1 <= 0.5:
        bad.append("u1-box")
    if not 0.5 <= u2 <= 1:
        bad.append("u2-box")
    if k * u2 - u1 < k - 1 - 1e-12:
        bad.append("Q>=1")
    if u2 - u1 > 1 - 1 / k + 1e-12:
        bad.append("shrinking-cell")
    if ((k - 2) * u1 + (n * (k - 1) + 1) * u2) / (k - 1) > n + 0.5 + 1e-12:
        bad.append("disjointness")
    return not bad, bad


def restriction_lower_ok(p: ParamPoint) -> bool:
    """The extra inequality every admissible point satisfies:
    (k-2)/(k-1) u1 + (n(k-1)+1)/(k-1) u2 >= n - (n-1)/k."""
    lhs = ((p.k - 2) * p.u1 + (p.n * (p.k - 1) + 1) * p.u2) / (p.k - 1)
    return lhs >= p.n - (p.n - 1) / p.k - 1e-12


def _require_domain(p: ParamPoint):
    ok, bad = in_domain_D(p)
    if not ok:
        raise PreconditionError(f"(u1,u2)=({p.u1},{p.u2}) outside domain: {bad}")


def classify_above_below(p: ParamPoint) -> str:
    """Which dimension formula applies.

    'above' iff (n-1-k/(k-1)) u2 - ((k-2)/(k-1)) u1 < n - 5/2 strictly;
    ties go below.  For k=2 every admissible point is above.
    """
    _require_domain(p)
    lhs = (p.n - 1 - p.k / (p.k - 1)) * p.u2 - (p.k - 2) / (p.k - 1) * p.u1
    return "above" if lhs < p.n - 2.5 else "below"


def dq_from_u(p: ParamPoint, R: float) -> tuple[float, float]:
    """D = R^(1-(u2-u1)/(k-1)),  Q = R^((k u2 - u1)/(k-1) - 1)."""
    _require_domain(p)
    if R <= 1:
        raise PreconditionError("need R > 1")
    D = R ** (1 - (p.u2 - p.u1) / (p.k - 1))
    Q = R ** ((p.k * p.u2 - p.u1) / (p.k - 1) - 1)
    return D, Q


def u_from_dq(k: int, n: int, D: float, Q: float, R: float) -> tuple[float, float]:
    """Inverse of dq_from_u (exponent arithmetic)."""
    lr = math.log(R)
    u1 = (k * math.log(D) + math.log(Q)) / lr - (k - 1)
    u2 = (math.log(D) + math.log(Q)) / lr
    return u1, u2


def dim_F(p: ParamPoint) -> float:
    """Hausdorff dimension of the divergence set at this exponent pair."""
    _require_domain(p)
    k, n, u1, u2 = p.k, p.n, p.u1, p.u2
    if classify_above_below(p) == "above":
        return ((k - 2) * u1 + (n * (k - 1) + 1) * u2) / (k - 1) - 0.5
    return n - 3 + 2 * (k * u2 + (k - 2) * u1) / (k - 1)


# ----------------------------------------------------------- piecewise curves


@dataclass
class PiecewiseCurve:
    """Continuous nonincreasing piecewise-affine curve s(alpha)."""

    breakpoints: list[float]                  # len = segments + 1, sorted
    segments: list[tuple[float, float]]       # (slope, intercept) per piece
    labels: list[str]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.breakpoints) != len(self.segments) + 1:
            raise PreconditionError("breakpoints/segments mismatch")
        for lo, hi in zip(self.breakpoints, self.breakpoints[1:]):
            if hi < lo - 1e-15:
                raise PreconditionError("breakpoints not sorted")

    def segment_index(self, alpha: float) -> int:
        if not self.breakpoints[0] - 1e-12 <= alpha <= self.breakpoints[-1] + 1e-12:
            raise PreconditionError(
                f"alpha={alpha} outside [{self.breakpoints[0]}, {self.breakpoints[-1]}]")
        for i, hi in enumerate(self.breakpoints[1:]):
            if alpha <= hi + 1e-12:
                return i
        return len(self.segments) - 1

    def value(self, alpha: float) -> float:
        m, b = self.segments[self.segment_index(alpha)]
        return m * alpha + b

    def label(self, alpha: float) -> str:
        return self.labels[self.segment_index(alpha)]

    def max_jump(self) -> float:
        worst = 0.0
        for i, bp in enumerate(self.breakpoints[1:-1], start=1):
            left = self.segments[i - 1][0] * bp + self.segments[i - 1][1]
            right = self.segments[i][0] * bp + self.segments[i][1]
            worst = max(worst, abs(left - right))
        return worst

    def is_nonincreasing(self) -> bool:
        return all(m <= 1e-15 for m, _ in self.segments)


def sobolev_curve(k: int, n: int) -> PiecewiseCurve:
    """The full counterexample curve s(alpha) for the power symbol.

    Branch (i) optimizes along u1 = 1/2, branch (ii) along Q = 1 in the
    above region, branch (iii) (only k > 2(n-1)) along Q = 1 in the
    below region.
    """
    if k < 2 or n < 2:
        raise PreconditionError("need k >= 2, n >= 2")
    M1 = n * (k - 1) + 1
    b_i = n - (n - 1) / (2 * k)          # branch (i)/(ii) breakpoint
    seg_i = (-((n - 1) * (k - 1)) / (2 * M1),
             0.25 + (n - 1) / (4 * M1) + ((n - 1) * (k - 1)) / (2 * M1) * n)
    M2 = n + k - 1
    seg_ii = (-(n - 1) / (2 * M2),
              0.25 + (n - 1) / (4 * M2) + (n - 1) / (2 * M2) * n)
    if k > 2 * (n - 1):
        lo_ii = n - (n - 1) / (k - n + 1)
        lo_iii = n - (k + n - 1) / (2 * k - n + 1)
        seg_iii = (-(n - 1) / (4 * k),
                   0.25 + (n - 1) / (4 * k) + (n - 1) / (4 * k) * n)
        return PiecewiseCurve(
            breakpoints=[lo_iii, lo_ii, b_i, float(n)],
            segments=[seg_iii, seg_ii, seg_i],
            labels=["iii", "ii", "i"],
            meta={"k": k, "n": n, "kind": "power"})
    lo_ii = n - 0.5 - (n - 1) / k
    return PiecewiseCurve(
        breakpoints=[lo_ii, b_i, float(n)],
        segments=[seg_ii, seg_i],
        labels=["ii", "i"],
        meta={"k": k, "n": n, "kind": "power"})


def sobolev_from_alpha(k: int, n: int, alpha: float):
    """(s, branch, u_point): the divergence exponent at fractal dimension
    alpha and the admissible (u1, u2) realizing it."""
    curve = sobolev_curve(k, n)
    idx = curve.segment_index(alpha)
    branch = curve.labels[idx]
    s = curve.value(alpha)
    if branch == "i":
        u1 = 0.5
        u2 = (alpha + 1 / (2 * (k - 1))) * (k - 1) / (n * (k - 1) + 1)
    elif branch == "ii":
        u1 = (n - 1 - k * (n - alpha - 0.5)) / (n + k - 1)
        u2 = 1 - (n - alpha + 0.5) / (n + k - 1)
    else:
        u1 = 0.5 - (n - alpha) / 2
        u2 = 1 - (n - alpha + 1) / (2 * k)
    return s, branch, (u1, u2)


def sobolev_exponent_u2(n: int, u2: float) -> float:
    """s(u2) = 1/4 + (n-1)(1-u2)/2, the on-slab amplitude exponent."""
    return 0.25 + (n - 1) * (1 - u2) / 2


def saddle_curve(n: int, m: int) -> PiecewiseCurve:
    """Counterexample curve for the signature-(m, n-m) saddle symbol."""
    if not 1 <= m <= n // 2:
        raise PreconditionError(f"need 1 <= m <= n/2, got m={m}, n={n}")
    nondisp = (-0.5, (n + 1) / 2)
    if 2 * m <= n - 2:
        lo, mid = n / 2, n - m + 1
        talbot = (-(n - 2 * m) / (2 * (n - 2 * m + 2)),
                  (n + (n - 2 * m) * n) / (2 * (n - 2 * m + 2)))
        return PiecewiseCurve([lo, mid, float(n)], [talbot, nondisp],
                              ["talbot", "nondispersive"],
                              meta={"n": n, "m": m, "kind": "saddle"})
    if n % 2 == 1 and 2 * m == n - 1:
        lo, mid = (n + 1) / 2, (n + 3) / 2
        odd = (-0.25, (n + m + 1) / 4)
        return PiecewiseCurve([lo, mid, float(n)], [odd, nondisp],
                              ["odd-talbot", "nondispersive"],
                              meta={"n": n, "m": m, "kind": "saddle"})
    # n even, m = n/2: the degenerate Talbot branch is the constant n/4
    lo, mid = n / 2, n / 2 + 1
    return PiecewiseCurve([lo, mid, float(n)], [(0.0, n / 4), nondisp],
                          ["talbot", "nondispersive"],
                          meta={"n": n, "m": m, "kind": "saddle"})


def saddle_sobolev(n: int, m: int, alpha: float) -> tuple[float, str]:
    curve = saddle_curve(n, m)
    idx = curve.segment_index(alpha)
    return curve.value(alpha), curve.labels[idx]


def positive_thresholds(n: int, symbol_class: str, alpha: float,
                        beta: float | None = None) -> float:
    """Upper thresholds above which pointwise convergence holds a.e.
    with respect to alpha-dimensional measures."""
    if not 0 <= alpha <= n:
        raise PreconditionError("alpha must lie in [0, n]")
    if symbol_class == "nonsingular-P":
        return (n - alpha + 1) / 2
    if symbol_class == "dispersive":
        if beta is None:
            raise PreconditionError("dispersive class needs beta")
        return (n - alpha) / 2 if alpha < beta else (n - alpha + 1) / 2
    if symbol_class == "nonsingular-Hessian":
        if alpha <= n / 2:
            return (n - alpha) / 2
        if alpha <= n / 2 + 1:
            return n / 4
        return (n - alpha + 1) / 2
    if symbol_class == "positive-definite":
        if alpha <= n / 2:
            return (n - alpha) / 2
        if alpha <= (n + 1) / 2:
            return n / 4
        return n / (2 * (n + 1)) * (1 + n - alpha)
    raise PreconditionError(f"unknown symbol class {symbol_class!r}")


# ------------------------------------------------- dilation exponent segment


def dilation_segment(p: ParamPoint, eps: float):
    """Endpoints of the admissible dilation segment, or None if empty.

    The segment is the line a1 + (n-1) a2 = rhs(u, eps) clipped to the
    box [u1, 1/2] x [u2, 1]; rhs is chosen so the dilated boxes have
    volume comparable to Q^-(n+1-eps) per unit cell.
    """
    _require_domain(p)
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    k, n, u1, u2 = p.k, p.n, p.u1, p.u2
    rhs = ((k - 2 + eps) * u1 + (n * (k - 1) + 1 - k * eps) * u2) / (k - 1) - (1 - eps)
    a2_lo = max(u2, (rhs - 0.5) / (n - 1))
    a2_hi = min(1.0, (rhs - u1) / (n - 1))
    if a2_lo > a2_hi + 1e-12:
        return None
    return ((rhs - (n - 1) * a2_lo, a2_lo), (rhs - (n - 1) * a2_hi, a2_hi))


def dilation_line_rhs(p: ParamPoint, eps: float) -> float:
    k, n, u1, u2 = p.k, p.n, p.u1, p.u2
    return ((k - 2 + eps) * u1 + (n * (k - 1) + 1 - k * eps) * u2) / (k - 1) - (1 - eps)


# --------------------------------------------------------------- CSV emission


def domain_polygon(k: int, n: int) -> list[tuple[float, float]]:
    """Vertices of the admissible domain, counterclockwise."""
    poly = [(0.0, 0.5), (0.5, 0.5), (0.5, 1.0), (0.0, 1.0)]
    halfplanes = [
        (1.0, -float(k), -(k - 1.0)),                        # u1 - k u2 <= -(k-1)
        (-1.0, 1.0, 1.0 - 1.0 / k),                          # u2 - u1 <= 1 - 1/k
        ((k - 2) / (k - 1), (n * (k - 1) + 1) / (k - 1), n + 0.5),
    ]
    for a, b, c in halfplanes:
        poly = _clip(poly, a, b, c)
        if not poly:
            return []
    return poly


def _clip(poly, a, b, c):
    """Keep the part of the polygon with a*x + b*y <= c."""
    out = []
    for i, p in enumerate(poly):
        q = poly[(i + 1) % len(poly)]
        fp = a * p[0] + b * p[1] - c
        fq = a * q[0] + b * q[1] - c
        if fp <= 1e-12:
            out.append(p)
        if (fp < -1e-12 < fq) or (fq < -1e-12 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    # drop duplicates introduced by touching edges
    dedup = []
    for p in out:
        if not dedup or (abs(p[0] - dedup[-1][0]) > 1e-12 or abs(p[1] - dedup[-1][1]) > 1e-12):
            dedup.append(p)
    if len(dedup) > 1 and abs(dedup[0][0] - dedup[-1][0]) < 1e-12 \
            and abs(dedup[0][1] - dedup[-1][1]) < 1e-12:
        dedup.pop()
    return dedup


def curve_emit(k: int, n: int, what: str, m: int | None = None,
               samples: int = 64) -> tuple[list[str], list[list]]:
    """(header, rows) for the requested figure data."""
    if what == "thm14":
        curve = sobolev_curve(k, n)
        header = ["alpha", "s", "branch", "u1", "u2", "is_breakpoint"]
        rows = []
        for alpha, is_bp in _sample_curve(curve, samples):
            s, branch, (u1, u2) = sobolev_from_alpha(k, n, alpha)
            rows.append([alpha, s, branch, u1, u2, int(is_bp)])
        return header, rows
    if what == "thm16":
        if m is None:
            raise PreconditionError("thm16 emission needs the saddle index m")
        curve = saddle_curve(n, m)
        header = ["alpha", "s", "branch", "is_breakpoint"]
        rows = []
        for alpha, is_bp in _sample_curve(curve, samples):
            s, branch = saddle_sobolev(n, m, alpha)
            rows.append([alpha, s, branch, int(is_bp)])
        return header, rows
    if what == "regions":
        header = ["vertex", "u1", "u2"]
        return header, [[i, v[0], v[1]] for i, v in enumerate(domain_polygon(k, n))]
    if what == "dimension-surface":
        header = ["u1", "u2", "region", "dim"]
        rows = []
        grid = max(samples, 8)
        for i in range(grid + 1):
            for j in range(grid + 1):
                u1 = 0.5 * i / grid
                u2 = 0.5 + 0.5 * j / grid
                p = ParamPoint(u1, u2, k, n)
                ok, _ = in_domain_D(p)
                if not ok:
                    continue
                rows.append([u1, u2, classify_above_below(p), dim_F(p)])
        return header, rows
    raise PreconditionError(f"unknown curve kind {what!r}")


def _sample_curve(curve: PiecewiseCurve, samples: int):
    pts = []
    for lo, hi in zip(curve.breakpoints, curve.breakpoints[1:]):
        for t in range(samples):
            pts.append((lo + (hi - lo) * t / samples, False))
    for bp in curve.breakpoints:
        pts.append((bp, True))
    seen = set()
    out = []
    for alpha, is_bp in sorted(pts):
        key = round(alpha, 14)
        if key in seen:
            continue
        seen.add(key)
        out.append((alpha, is_bp))
    return out
