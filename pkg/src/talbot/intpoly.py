"""Integer polynomials in several variables.

Just enough structure for the exponential-sum and evolution code: exact
integer coefficients, evaluation mod q with reduction at every step,
partial derivatives, and vectorized evaluation over integer or real
grids.  Not a computer-algebra system.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError


@dataclass(frozen=True)
class IntPoly:
    """Sum of integer monomials  coeff * x1^e1 * ... * xd^ed."""

    num_vars: int
    terms: tuple[tuple[tuple[int, ...], int], ...]  # ((exponents), coeff)
    degree: int = field(init=False)

    def __post_init__(self):
        seen = set()
        for exps, coeff in self.terms:
            if len(exps) != self.num_vars:
                raise PreconditionError(
                    f"exponent vector {exps} does not have {self.num_vars} entries")
            if exps in seen:
                raise PreconditionError(f"duplicate exponent vector {exps}")
            if any(e < 0 for e in exps):
                raise PreconditionError("negative exponent")
            seen.add(exps)
        deg = max((sum(e) for e, c in self.terms if c != 0), default=0)
        object.__setattr__(self, "degree", deg)

    # ---------------------------------------------------------------- algebra

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e, c in self.terms if c != 0}
        return len(degs) <= 1

    def partial(self, var: int) -> "IntPoly":
        out: dict[tuple[int, ...], int] = {}
        for exps, coeff in self.terms:
            e = exps[var]
            if e == 0 or coeff == 0:
                continue
            new = list(exps)
            new[var] = e - 1
            key = tuple(new)
            out[key] = out.get(key, 0) + coeff * e
        terms = tuple(sorted((k, v) for k, v in out.items() if v != 0))
        return IntPoly(self.num_vars, terms)

    # ------------------------------------------------------------- evaluation

    def eval_mod(self, point, q: int):
        """Evaluate at an integer point (or array of points) mod q.

        Every multiplication is reduced mod q, so arbitrary integer
        inputs are safe from overflow.  `point` may be a sequence of d
        ints or an integer ndarray whose last axis has length d; the
        result then has the leading shape of `point`.
        """
        pt = np.asarray(point, dtype=np.int64)
        if pt.shape[-1:] != (self.num_vars,):
            raise PreconditionError(
                f"point has {pt.shape[-1] if pt.ndim else 0} coords, "
                f"poly has {self.num_vars} variables")
        pt = pt % q
        acc = np.zeros(pt.shape[:-1], dtype=np.int64)
        for exps, coeff in self.terms:
            if coeff == 0:
                continue
            term = np.full(pt.shape[:-1], coeff % q, dtype=np.int64)
            for i, e in enumerate(exps):
                xi = pt[..., i]
                for _ in range(e):
                    term = term * xi % q
            acc = (acc + term) % q
        if acc.ndim == 0:
            return int(acc)
        return acc

    def eval_real(self, point):
        """Evaluate at real points; same shape conventions as eval_mod."""
        pt = np.asarray(point, dtype=np.float64)
        if pt.shape[-1:] != (self.num_vars,):
            raise PreconditionError("dimension mismatch")
        acc = np.zeros(pt.shape[:-1], dtype=np.float64)
        for exps, coeff in self.terms:
            term = np.full(pt.shape[:-1], float(coeff))
            for i, e in enumerate(exps):
                if e:
                    term = term * pt[..., i] ** e
            acc = acc + term
        return acc

    # ---------------------------------------------------------------- hashing

    def canonical(self) -> str:
        parts = [f"{coeff}*{','.join(map(str, exps))}"
                 for exps, coeff in sorted(self.terms) if coeff != 0]
        return f"d={self.num_vars};" + ";".join(parts)

    def content_hash(self) -> bytes:
        return hashlib.sha256(self.canonical().encode()).digest()

    def __str__(self) -> str:
        names = _var_names(self.num_vars)
        bits = []
        for exps, coeff in sorted(self.terms, key=lambda t: (-sum(t[0]), t[0])):
            if coeff == 0:
                continue
            mono = "*".join(
                f"{names[i]}^{e}" if e > 1 else names[i]
                for i, e in enumerate(exps) if e > 0)
            if not mono:
                bits.append(str(coeff))
            elif coeff == 1:
                bits.append(mono)
            elif coeff == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{coeff}*{mono}")
        return " + ".join(bits).replace("+ -", "- ") or "0"


def _var_names(d: int) -> list[str]:
    return ["x", "y", "z"][:d] if d <= 3 else [f"x{i+1}" for i in range(d)]


_TERM_RE = re.compile(r"^([+-]?\d*)\s*\*?\s*((?:[a-z]\d*(?:\^\d+)?\s*\*?\s*)*)$")
_FACTOR_RE = re.compile(r"([a-z]\d*)(?:\^(\d+))?")


def parse_poly(text: str, num_vars: int | None = None) -> IntPoly:
    """Parse expressions like 'x^3+y^3', '2*x^2*y - y^4', 'x1^2+x2^2'.

    Variable names: x, y, z map to coordinates 0, 1, 2; x1, x2, ... map
    to their index.  num_vars defaults to the highest variable used.
    """
    s = text.replace(" ", "")
    if not s:
        raise PreconditionError("empty polynomial")
    s = s.replace("-", "+-")
    chunks = [c for c in s.split("+") if c]
    raw_terms: list[tuple[dict[str, int], int]] = []
    max_idx = 0
    for chunk in chunks:
        m = _TERM_RE.match(chunk)
        if not m:
            raise PreconditionError(f"cannot parse term {chunk!r}")
        coeff_s, factors = m.group(1), m.group(2)
        coeff = int(coeff_s) if coeff_s not in ("", "+", "-") else (-1 if coeff_s == "-" else 1)
        powers: dict[str, int] = {}
        for name, exp in _FACTOR_RE.findall(factors):
            powers[name] = powers.get(name, 0) + (int(exp) if exp else 1)
        for name in powers:
            max_idx = max(max_idx, _var_index(name) + 1)
        raw_terms.append((powers, coeff))
    d = num_vars if num_vars is not None else max(max_idx, 1)
    acc: dict[tuple[int, ...], int] = {}
    for powers, coeff in raw_terms:
        exps = [0] * d
        for name, e in powers.items():
            idx = _var_index(name)
            if idx >= d:
                raise PreconditionError(f"variable {name} exceeds num_vars={d}")
            exps[idx] += e
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + coeff
    terms = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
    return IntPoly(d, terms)


def _var_index(name: str) -> int:
    if name in ("x", "y", "z"):
        return "xyz".index(name)
    if name[0] == "x" and name[1:].isdigit():
        return int(name[1:]) - 1
    raise PreconditionError(f"unknown variable {name!r}")


def diagonal_power(k: int, d: int) -> IntPoly:
    """x1^k + ... + xd^k, the standard certified-nonsingular family."""
    terms = []
    for i in range(d):
        e = [0] * d
        e[i] = k
        terms.append((tuple(e), 1))
    return IntPoly(d, tuple(sorted(terms)))
