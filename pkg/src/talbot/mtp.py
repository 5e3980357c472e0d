"""Mass-transference dimension lower bounds for limsup sets.

Rectangle form: a limsup set of boxes with side exponents b, dilated to
exponents a <= b while keeping full measure, has Hausdorff dimension at
least

    min_{A in {b_1..b_n}} [ sum_{K1} 1 + sum_{K2} (1 - (b_j - a_j)/A)
                            + sum_{K3} a_j / A ]

with K1 = {j : a_j >= A},  K2 = {j : b_j <= A} \\ K1,  K3 = the rest.
Rational inputs are evaluated in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import PreconditionError


def _exactify(x):
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float) and x == int(x):
        return Fraction(int(x))
    return x


@dataclass(frozen=True)
class ExponentPair:
    """Original radii exponents b and dilated exponents a, b_i >= a_i >= 0."""

    b: tuple
    a: tuple

    def __post_init__(self):
        if len(self.b) != len(self.a) or not self.b:
            raise PreconditionError("a and b must be nonempty and equally long")
        for ai, bi in zip(self.a, self.b):
            if ai < 0 or bi < ai:
                raise PreconditionError(
                    f"need 0 <= a_i <= b_i componentwise, got a={self.a} b={self.b}")


def mtp_lower_bound(e: ExponentPair):
    """Exact minimum over the candidate set A in {b_1, ..., b_n}.

    Returns a Fraction when all inputs are rational, otherwise a float.
    """
    a = [_exactify(x) for x in e.a]
    b = [_exactify(x) for x in e.b]
    best = None
    for A in sorted(set(b)):
        if A <= 0:
            raise PreconditionError("b components must be positive")
        total = 0
        for aj, bj in zip(a, b):
            if aj >= A:
                total += 1
            elif bj <= A:
                total += 1 - (bj - aj) / A
            else:
                total += aj / A
        if best is None or total < best:
            best = total
    return best


def slab_dim_bound(n: int, a1, a2):
    """Specialization to boxes with exponents b = (1/2, 1, ..., 1).

        min{ a1 + (n-1) a2 + 1/2,  n - 1 + 2 a1 }

    Returns (value, active_branch); branch 1 is the first expression.
    The two agree with mtp_lower_bound on this b exactly.
    """
    if n < 2:
        raise PreconditionError("need n >= 2")
    a1, a2 = _exactify(a1), _exactify(a2)
    if a2 < Fraction(1, 2):
        raise PreconditionError("slab bound assumes a2 >= 1/2")
    half = Fraction(1, 2) if isinstance(a1, Fraction) and isinstance(a2, Fraction) else 0.5
    v1 = a1 + (n - 1) * a2 + half
    v2 = n - 1 + 2 * a1
    if v1 <= v2:
        return v1, 1
    return v2, 2


def jarnik_dim(tau):
    """dim of {x : |x - p/q| < q^(-tau) infinitely often} = 2/tau."""
    tau = _exactify(tau)
    if tau < 2:
        raise PreconditionError("Jarnik exponent needs tau >= 2")
    if isinstance(tau, Fraction):
        return Fraction(2) / tau
    return 2.0 / tau


def jarnik_via_mtp(tau):
    """Rederive 2/tau from the rectangle bound in one dimension.

    Balls B(p/q, q^-tau) dilated by exponent 2/tau give B(p/q, q^-2),
    which cover full measure; the bound with b=(tau/2,) normalized to
    radius parameter q^-2 returns (2/tau) exactly.
    """
    tau = _exactify(tau)
    if tau < 2:
        raise PreconditionError("Jarnik exponent needs tau >= 2")
    one = Fraction(1) if isinstance(tau, Fraction) else 1.0
    return mtp_lower_bound(ExponentPair(b=(tau / 2,), a=(one,)))
