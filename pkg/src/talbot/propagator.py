"""Counterexample data and their exact time evolution.

The power-symbol datum is a tensor product

    f_R(x) = g(x1) h(x'),
    g(x1) = phi1(R^(1/2) x1) e(R x1),
    h(x') = sum_{m'} psi(D m'/R) e(D m' . x') phi2-bump factors,

whose evolution under e^{it(D1^k + W(D'))} factors exactly into a 1D
oscillatory integral for the modulated axis and lattice sums of 1D
integrals for the remaining axes (diagonal W).  Saddle-form symbols get
the analogous rod data; their evolutions factor into coupled-pair 2D
quadratures times 1D lattice sums.

All quadratures run over the compact Fourier supports of the cutoffs,
so every value here is exact up to the quadrature tolerance: no grids,
no FFTs, no truncation other than the lattice cutoffs in the data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cutoffs import CutoffProfile, LatticeWeight, gl_nodes
from .errors import BudgetError, PreconditionError
from .intpoly import IntPoly
from .primes import largest_prime_in
from .regions import ParamPoint, dq_from_u, in_domain_D

LATTICE_BUDGET = 1_000_000
TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class Symbol:
    kind: str                       # "power" | "saddle"
    n: int
    k: int | None = None            # power: axis-1 degree
    W: IntPoly | None = None        # power: polynomial in n-1 variables
    m: int | None = None            # saddle: signature index

    def __post_init__(self):
        if self.kind == "power":
            if self.k is None or self.k < 2:
                raise PreconditionError("power symbol needs k >= 2")
            if self.W is None or self.W.num_vars != self.n - 1:
                raise PreconditionError("W must have n-1 variables")
            if self.W.degree != self.k:
                raise PreconditionError("deg W must equal k")
        elif self.kind == "saddle":
            if self.m is None or not 1 <= self.m <= self.n / 2:
                raise PreconditionError("saddle index must satisfy 1 <= m <= n/2")
        else:
            raise PreconditionError(f"unknown symbol kind {self.kind!r}")

    def diagonal_terms(self):
        """Per-variable [(exponent, coeff), ...] when W is diagonal."""
        per_var = [[] for _ in range(self.W.num_vars)]
        for exps, coeff in self.W.terms:
            active = [j for j, e in enumerate(exps) if e > 0]
            if len(active) != 1:
                raise PreconditionError("lattice factorization needs diagonal W")
            j = active[0]
            per_var[j].append((exps[j], coeff))
        return per_var


@dataclass
class CombDatum:
    symbol: Symbol
    R: float
    D: float
    Q: float
    q: int
    u1: float
    u2: float
    phi1: CutoffProfile
    phi2: CutoffProfile
    psi: LatticeWeight
    variant: str = "power"          # power | sharp | talbot | odd

    @property
    def n(self):
        return self.symbol.n

    @property
    def k(self):
        return self.symbol.k

    def lattice_halfwidth(self) -> int:
        if self.variant == "odd":
            return int(self.R ** 0.5 / self.D)
        return int(self.R / self.D)

    def lattice_dims(self) -> int:
        if self.variant == "power":
            return self.n - 1
        if self.variant == "sharp":
            return self.symbol.m - 1
        if self.variant == "talbot":
            return self.n - 2 * self.symbol.m
        return 1


@dataclass
class GridSample:
    points: list                    # (x tuple, t) pairs
    values: np.ndarray              # complex amplitudes
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.points) != len(self.values):
            raise PreconditionError("points/values length mismatch")


def _pick_q(Q: float) -> int:
    if Q < 2:
        return 1
    q = largest_prime_in(math.ceil(Q / 2), math.floor(Q))
    return q if q else 1


def build_comb_datum(symbol: Symbol, R: float, u1: float, u2: float,
                     cutoffs=None, variant: str | None = None) -> CombDatum:
    """Fix the scale parameters of a datum: D and Q from (u1, u2), and
    the largest prime q in [Q/2, Q] (q = 1 when Q < 2)."""
    if R < 2 or abs(math.log2(R) - round(math.log2(R))) > 1e-12:
        raise PreconditionError("R must be a power of 2, R >= 2")
    if cutoffs is None:
        cutoffs = (CutoffProfile(), CutoffProfile(), LatticeWeight())
    phi1, phi2, psi = cutoffs
    if symbol.kind == "power":
        point = ParamPoint(u1, u2, symbol.k, symbol.n)
        D, Q = dq_from_u(point, R)
        var = "power"
    else:
        if not (0 <= u1 <= 1 and 0 <= u2 <= 1):
            raise PreconditionError("saddle exponents must lie in [0,1]^2")
        if 2 * u2 - u1 - 1 < -1e-12:
            raise PreconditionError("saddle needs Q >= 1: 2 u2 - u1 >= 1")
        if u2 - u1 > 0.5 + 1e-12:
            raise PreconditionError("saddle shrinking cell needs u2 - u1 <= 1/2")
        Q = R ** (2 * u2 - u1 - 1)
        D = R ** (u1 - u2 + 1)
        var = variant or "talbot"
        if var not in ("sharp", "talbot", "odd"):
            raise PreconditionError(f"unknown saddle variant {var!r}")
        if var == "odd" and (symbol.n % 2 == 0 or 2 * symbol.m != symbol.n - 1):
            raise PreconditionError("odd variant needs n odd and m = (n-1)/2")
    return CombDatum(symbol, float(R), D, Q, _pick_q(Q), u1, u2,
                     phi1, phi2, psi, var)


# ------------------------------------------------------------------- norms


def _psi_axis_sq_sum(datum: CombDatum) -> float:
    M = datum.lattice_halfwidth()
    m = np.arange(-M, M + 1)
    return float(np.sum(datum.psi.axis(datum.D * m / datum.R) ** 2))


def datum_norm(datum: CombDatum) -> float:
    """Exact L2 norm from the tensor factorization; the Fourier bumps at
    distinct lattice frequencies are disjoint, so cross terms vanish."""
    if datum.variant == "power":
        axis1 = datum.R ** -0.5 * datum.phi1.fourier_l2sq()
        lattice = _psi_axis_sq_sum(datum) ** (datum.n - 1)
        return math.sqrt(axis1 * lattice * datum.phi2.fourier_l2sq() ** (datum.n - 1))
    m, n = datum.symbol.m, datum.n
    M = datum.lattice_halfwidth()
    count = float(2 * M + 1) ** datum.lattice_dims()
    scale = datum.R if datum.variant == "sharp" else datum.R ** m
    return math.sqrt(scale * count * datum.phi1.fourier_l2sq() ** n)


def predicted_norm(datum: CombDatum) -> float:
    R, D = datum.R, datum.D
    if datum.variant == "power":
        return R ** -0.25 * (R / D) ** ((datum.n - 1) / 2)
    m = datum.symbol.m
    if datum.variant == "sharp":
        return R ** 0.5 * (R / D) ** ((m - 1) / 2)
    if datum.variant == "talbot":
        return R ** (m / 2) * (R / D) ** ((datum.n - 2 * m) / 2)
    return R ** (m / 2) * (R ** 0.5 / D) ** 0.5


def predicted_ratio(datum: CombDatum) -> float:
    """The target for |T_t f(x)| / ||f||_2 at on-slab rational points."""
    R, D, Q = datum.R, datum.D, datum.Q
    if datum.variant == "power":
        return R ** 0.25 * (R / (D * Q)) ** ((datum.n - 1) / 2)
    m = datum.symbol.m
    if datum.variant == "sharp":
        return R ** 0.5 * (R / D) ** ((m - 1) / 2)
    if datum.variant == "talbot":
        return R ** (m / 2) * (R / (D * Q)) ** ((datum.n - 2 * m) / 2)
    return R ** (m / 2) * (R ** 0.5 / D) ** 0.5


# -------------------------------------------------------- power evolution


def evolve_axis1(datum: CombDatum, x1: float, t: float,
                 enforce_window: bool = True) -> complex:
    """T_t g(x1), exactly, from the binomial expansion of (R+R^(1/2)w)^k:

    e(x1 R + t R^k) Int phi1^(w) e(R^(1/2) w (x1 + t k R^(k-1))
                                   + t sum_{j>=2} C(k,j) w^j R^(k-j/2)) dw
    """
    if datum.variant != "power":
        raise PreconditionError("axis-1 evolution applies to power data")
    R, k = datum.R, datum.k
    if enforce_window and abs(t) >= R ** (1 - k):
        raise PreconditionError("need |t| < 1/R^(k-1) for the axis-1 window")
    y = x1 + t * k * R ** (k - 1)
    coeffs = [t * math.comb(k, j) * R ** (k - j / 2) for j in range(2, k + 1)]

    def phase(w):
        acc = R ** 0.5 * y * w
        wj = w
        for cj in coeffs:
            wj = wj * w
            acc = acc + cj * wj
        return acc

    lead = np.exp(TWO_PI_I * (x1 * R % 1.0)) * np.exp(TWO_PI_I * (t * R ** k % 1.0))
    return complex(lead * datum.phi1.oscillatory(phase))


def _axis_lattice_sum(datum: CombDatum, xj: float, t: float, terms) -> complex:
    """sum_m psi(Dm/R) e(xj D m) Int phi2^(w) e(xj w + t W_j(Dm+w)) dw."""
    D, R = datum.D, datum.R
    M = datum.lattice_halfwidth()
    if 2 * M + 1 > LATTICE_BUDGET:
        raise BudgetError(2 * M + 1, LATTICE_BUDGET)
    ms = np.arange(-M, M + 1)
    weights = datum.psi.axis(D * ms / R)
    total = 0.0 + 0.0j
    for mm, wt in zip(ms, weights):
        if wt == 0.0:
            continue
        base = D * float(mm)
        # split the Talbot carrier t W_j(Dm) off the phase and reduce it
        # mod 1, leaving only small binomial corrections in the integral
        carrier = sum(coeff * base ** e for e, coeff in terms) * t
        lead = np.exp(TWO_PI_I * ((xj * base + carrier) % 1.0))
        corr = [(j, t * coeff * math.comb(e, j) * base ** (e - j))
                for e, coeff in terms for j in range(1, e + 1)]

        def phase(w, corr=corr):
            acc = xj * w
            for j, cj in corr:
                acc = acc + cj * w ** j
            return acc

        total += wt * lead * datum.phi2.oscillatory(phase)
    return complex(total)


def evolve_lattice(datum: CombDatum, xp, t: float) -> complex:
    """T_t h(x') for diagonal W: an exact product of per-axis lattice
    sums, each term an oscillatory quadrature over the phi2 support."""
    if datum.variant != "power":
        raise PreconditionError("lattice evolution applies to power data")
    xp = np.atleast_1d(np.asarray(xp, dtype=float))
    if xp.shape != (datum.n - 1,):
        raise PreconditionError(f"x' must have {datum.n - 1} coordinates")
    per_var = datum.symbol.diagonal_terms()
    value = 1.0 + 0.0j
    for j in range(datum.n - 1):
        value *= _axis_lattice_sum(datum, float(xp[j]), t, per_var[j])
    return value


def evolve_at(datum: CombDatum, points) -> GridSample:
    """Evaluate T_t f at (x, t) points via the exact tensor split."""
    values = []
    pts = []
    for x, t in points:
        x = tuple(float(v) for v in np.atleast_1d(x))
        if datum.variant == "power":
            v = evolve_axis1(datum, x[0], t) * evolve_lattice(datum, x[1:], t)
        else:
            v = _saddle_value(datum, x, t)
        values.append(v)
        pts.append((x, float(t)))
    meta = {"R": datum.R, "D": datum.D, "Q": datum.Q, "q": datum.q,
            "variant": datum.variant}
    return GridSample(pts, np.asarray(values, dtype=complex), meta)


def on_slab_point(datum: CombDatum, p, x1: float | None = None):
    """The rational evaluation point of a slab tag p = (p1, p'):
    t = -p1/(D^k q) so the axis-1 revival x1 + t k R^(k-1) = 0 lands on
    the slab center, and x' = p'/(Dq).  x1 defaults to the slab center;
    |S| is unchanged under the p1 sign flip for homogeneous W, so the
    G(q) membership of the tag transfers to the phase frequency."""
    p = tuple(int(v) for v in p)
    t = -p[0] / (datum.D ** datum.k * datum.q)
    if x1 is None:
        x1 = datum.k * datum.R ** (datum.k - 1) * p[0] / (datum.D ** datum.k * datum.q)
    xp = tuple(v / (datum.D * datum.q) for v in p[1:])
    return (float(x1),) + xp, t


# --------------------------------------------------------- multiscale scan


def divergence_scan(scales, u1: float, u2: float, s_target: float, x,
                    symbol: Symbol, gq_tables: dict, cutoffs=None):
    """Per-scale weighted contributions m |T_t f_{R_m}(x)| / (R_m^s |f|)
    at the revival time t = p1/(D_M^k q) of the slab of F_M containing x.

    The scale M is the largest one whose family contains x; off-scale
    axis-1 factors are evaluated outside the time window on purpose.
    """
    from .slabgeo import slab_containing
    x = tuple(float(v) for v in np.atleast_1d(x))
    data = {R: build_comb_datum(symbol, R, u1, u2, cutoffs) for R in scales}
    hit = None
    for R in sorted(scales, reverse=True):
        tag = slab_containing(symbol.k, symbol.n, R, u1, u2, gq_tables, x)
        if tag is not None:
            hit = (R, tag)
            break
    if hit is None:
        raise PreconditionError("point lies in no slab family at these scales")
    R_M, (q, p) = hit
    dM = data[R_M]
    t = -p[0] / (dM.D ** dM.k * q)
    rows = []
    for R in sorted(scales):
        d = data[R]
        amp = abs(evolve_axis1(d, x[0], t, enforce_window=False)
                  * evolve_lattice(d, x[1:], t))
        m = int(round(math.log2(R)))
        rows.append({
            "R": R,
            "m": m,
            "weight": m * amp / (R ** s_target * datum_norm(d)),
            "is_main": R == R_M,
            "t": t,
            "tag": (q, p) if R == R_M else None,
        })
    return rows


# ----------------------------------------------------------- saddle forms


def _pair_quad(phi: CutoffProfile, A1: float, A2: float, B: float,
               order: int = 48) -> complex:
    """Int phi^(wa) phi^(wb) e(A1 wa + A2 wb + B wa wb) dwa dwb."""
    xs, ws = gl_nodes(order, -phi.c, phi.c)
    vals = phi.fourier(xs) * ws
    ph = np.exp(TWO_PI_I * (A1 * xs[:, None] + A2 * xs[None, :]
                            + B * xs[:, None] * xs[None, :]))
    return complex(vals @ ph @ vals)


def _elliptic_lattice_sum(datum: CombDatum, xj: float, t: float) -> complex:
    """sum_l e(xj D l - t D^2 l^2) Int phi^(w) e((xj - 2tDl) w - t w^2) dw,
    the exact elliptic-axis factor of the saddle evolutions."""
    D = datum.D
    L = datum.lattice_halfwidth()
    if 2 * L + 1 > LATTICE_BUDGET:
        raise BudgetError(2 * L + 1, LATTICE_BUDGET)
    total = 0.0 + 0.0j
    phi = datum.phi1
    for l in range(-L, L + 1):
        lead = np.exp(TWO_PI_I * ((xj * D * l - t * (D * l) ** 2) % 1.0))

        def phase(w, l=l):
            return (xj - 2 * t * D * l) * w - t * w * w

        total += lead * phi.oscillatory(phase)
    return complex(total)


def _saddle_value(datum: CombDatum, x, t: float) -> complex:
    sym = datum.symbol
    m, n, R, D = sym.m, sym.n, datum.R, datum.D
    if len(x) != n:
        raise PreconditionError(f"point must have {n} coordinates")
    x1, xq, xm1 = x[0], x[1:m], x[m]
    phi = datum.phi1
    # modulated pair (w1, w_{m+1}) with coupling t R w1 w_{m+1}
    value = _pair_quad(phi, x1, R * (xm1 + R * t), t * R)
    value *= np.exp(TWO_PI_I * ((R * x1) % 1.0))
    if datum.variant == "sharp":
        xpp, xppp = x[m + 1:2 * m], x[2 * m:]
        prefactor = R
        L = datum.lattice_halfwidth()
        for i in range(m - 1):
            s = 0.0 + 0.0j
            for l in range(-L, L + 1):
                s += (np.exp(TWO_PI_I * ((xpp[i] * D * l) % 1.0))
                      * _pair_quad(phi, xq[i] + t * D * l, xpp[i], t))
            value *= s
        for xj in xppp:
            value *= phi.oscillatory(lambda w, xj=xj: xj * w - t * w * w)
    else:
        # talbot / odd: the x'' block is scaled by R and pairs with x'
        xpp, xppp = x[m + 1:2 * m], x[2 * m:]
        prefactor = R ** m
        for i in range(m - 1):
            value *= _pair_quad(phi, xq[i], R * xpp[i], t * R)
        for xj in xppp:
            value *= _elliptic_lattice_sum(datum, xj, t)
    return prefactor * value


def saddle_evolve(datum: CombDatum, points) -> GridSample:
    """Evolution of the saddle data; same factored structure as the
    power case, with coupled-pair 2D quadratures on the hyperbolic
    blocks and Gauss-sum lattice phases on the elliptic block."""
    if datum.variant == "power":
        raise PreconditionError("saddle evolution needs a saddle datum")
    for x, t in points:
        if abs(t) > 1.0 / datum.R + 1e-15:
            raise PreconditionError("saddle evaluation needs |t| <= 1/R")
    return evolve_at(datum, points)


def saddle_on_slab_point(datum: CombDatum, p_m1: int, ppp, x1: float = 0.0):
    """Rational saddle revival point: t = p_{m+1}/(D^2 q), x''' = p'''/(Dq),
    x_{m+1} = -Rt, all other coordinates zero."""
    q, D, R = datum.q, datum.D, datum.R
    m, n = datum.symbol.m, datum.n
    t = p_m1 / (D ** 2 * q)
    x = [0.0] * n
    x[0] = x1
    x[m] = -R * t
    for j, pj in enumerate(tuple(ppp)):
        x[2 * m + j] = pj / (D * q)
    return tuple(x), t
