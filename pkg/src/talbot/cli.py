"""Command line entry point.

Subcommands: expsum, gq, blocksum, evolve, saddle, slabs, measure,
cover, mtp, jarnik, regions.  Options can come from a flat key=value
config file (--config), with explicit flags taking precedence.  Every
CSV output starts with a manifest-hash comment and a header row; floats
are written with 17 significant digits so identical configs give
byte-identical files.

Exit codes: 0 success, 2 precondition violation, 1 internal error,
64 usage (unknown flags or subcommand).
"""

from __future__ import annotations

import argparse
import hashlib
import math
import sys

import numpy as np

from . import fieldsum, mtp, propagator, regions, slabgeo
from .errors import PreconditionError
from .intpoly import diagonal_power, parse_poly

EX_USAGE = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}error: {message}")


def load_config(path: str) -> dict:
    """Flat key=value lines; '#' comments and blank lines ignored."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise PreconditionError(f"bad config line: {raw.strip()!r}")
            key, val = line.split("=", 1)
            out[key.strip().replace("-", "_")] = val.strip()
    return out


def save_config(cfg: dict, path: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key in sorted(cfg):
            fh.write(f"{key}={cfg[key]}\n")


def _merge_config(args: argparse.Namespace) -> dict:
    cfg = {}
    if getattr(args, "config", None):
        cfg.update(load_config(args.config))
    for key, val in vars(args).items():
        if key in ("config", "func") or val is None:
            continue
        cfg[key] = val
    return cfg


def manifest_hash(cfg: dict) -> str:
    blob = "\n".join(f"{k}={cfg[k]}" for k in sorted(cfg))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def write_csv(out, header, rows, mhash):
    lines = [f"# manifest={mhash}", ",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _ints(text: str):
    return tuple(int(v) for v in str(text).split(","))


def _floats(text: str):
    return tuple(float(v) for v in str(text).split(","))


def _get(cfg, key, cast, default=None):
    if key not in cfg or cfg[key] is None:
        if default is None:
            raise PreconditionError(f"missing required option --{key}")
        return default
    val = cfg[key]
    if isinstance(val, str):
        return cast(val)
    return val


def _sum_table(cfg):
    poly = parse_poly(_get(cfg, "poly", str))
    q = _get(cfg, "q", int)
    budget = _get(cfg, "budget", float, fieldsum.DEFAULT_BUDGET)
    return fieldsum.build_sum_table(poly, q, budget=budget)


# ------------------------------------------------------------- subcommands


def cmd_expsum(cfg, mhash):
    table = _sum_table(cfg)
    d = table.dim
    if "p" in cfg:
        ps = [_ints(cfg["p"])]
    else:
        ps = [tuple(idx) for idx in np.ndindex(*table.values.shape)]
    header = [f"p{i}" for i in range(d + 1)] + ["re", "im", "abs"]
    rows = []
    for p in ps:
        v = table.at(p)
        rows.append(list(p) + [v.real, v.imag, abs(v)])
    write_csv(cfg.get("out"), header, rows, mhash)
    return 0


def cmd_gq(cfg, mhash):
    table = _sum_table(cfg)
    c1 = _get(cfg, "c1", float, fieldsum.DEFAULT_C1)
    gq = fieldsum.compute_Gq(table, c1)
    header = [f"p{i}" for i in range(table.dim + 1)] + ["abs", "ratio"]
    rows = []
    scale = table.q ** (table.dim / 2)
    for p in gq.members():
        a = abs(table.at(p))
        rows.append(list(p) + [a, a / scale])
    write_csv(cfg.get("out"), header, rows, mhash)
    print(f"density={gq.density:.17g} count={len(gq)} q={table.q} c1={c1:.17g}")
    return 0


def cmd_blocksum(cfg, mhash):
    poly = parse_poly(_get(cfg, "poly", str))
    q = _get(cfg, "q", int)
    L = _get(cfg, "L", int)
    N = _get(cfg, "N", int, max(1, poly.num_vars // 2 + 1))
    zeta = fieldsum.smooth_weight(L, poly.num_vars)
    res = fieldsum.block_sum_verify(zeta, poly, q, N)
    header = ["q", "L", "N", "lhs_abs", "main_abs", "error_abs", "bound", "ratio"]
    rows = [[q, L, N, abs(res["lhs"]), abs(res["main_term"]),
             abs(res["error"]), res["bound"], res["ratio"]]]
    write_csv(cfg.get("out"), header, rows, mhash)
    return 0


def _read_points(path: str, n: int):
    pts = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            cells = line.split(",")
            try:
                vals = [float(c) for c in cells]
            except ValueError:
                continue  # header row
            if len(vals) != n + 1:
                raise PreconditionError(f"point row needs {n + 1} columns")
            pts.append((tuple(vals[:n]), vals[n]))
    return pts


def _emit_sample(cfg, mhash, datum, sample):
    n = datum.n
    target = propagator.predicted_ratio(datum)
    norm = propagator.datum_norm(datum)
    header = [f"x{i + 1}" for i in range(n)] + ["t", "re", "im", "abs",
                                                "predicted", "ratio"]
    rows = []
    for (x, t), v in zip(sample.points, sample.values):
        normalized = abs(v) / norm
        rows.append(list(x) + [t, v.real, v.imag, abs(v), target,
                               normalized / target])
    write_csv(cfg.get("out"), header, rows, mhash)


def cmd_evolve(cfg, mhash):
    k = _get(cfg, "k", int)
    n = _get(cfg, "n", int)
    W = parse_poly(cfg["poly"]) if "poly" in cfg else diagonal_power(k, n - 1)
    sym = propagator.Symbol("power", n, k=k, W=W)
    datum = propagator.build_comb_datum(sym, _get(cfg, "R", float),
                                        _get(cfg, "u1", float),
                                        _get(cfg, "u2", float))
    if "points_file" in cfg:
        pts = _read_points(cfg["points_file"], n)
    elif "slab" in cfg:
        x, t = propagator.on_slab_point(datum, _ints(cfg["slab"]),
                                        _get(cfg, "x1", float, -0.5))
        pts = [(x, t)]
    else:
        raise PreconditionError("evolve needs --points-file or --slab")
    _emit_sample(cfg, mhash, datum, propagator.evolve_at(datum, pts))
    return 0


def cmd_saddle(cfg, mhash):
    n = _get(cfg, "n", int)
    m = _get(cfg, "m", int)
    sym = propagator.Symbol("saddle", n, m=m)
    datum = propagator.build_comb_datum(sym, _get(cfg, "R", float),
                                        _get(cfg, "u1", float),
                                        _get(cfg, "u2", float),
                                        variant=cfg.get("variant"))
    if "points_file" in cfg:
        pts = _read_points(cfg["points_file"], n)
    elif "p" in cfg:
        p = _ints(cfg["p"])
        x, t = propagator.saddle_on_slab_point(datum, p[0], p[1:])
        pts = [(x, t)]
    else:
        raise PreconditionError("saddle needs --points-file or --p")
    _emit_sample(cfg, mhash, datum, propagator.saddle_evolve(datum, pts))
    return 0


def _gq_tables(cfg, k, n, R, u1, u2):
    _, Q = regions.dq_from_u(regions.ParamPoint(u1, u2, k, n), R)
    W = parse_poly(cfg["poly"]) if "poly" in cfg else diagonal_power(k, n - 1)
    c1 = _get(cfg, "c1", float, fieldsum.DEFAULT_C1)
    tables = {}
    for q in slabgeo.prime_window(Q):
        if q == 1:
            continue
        tables[q] = fieldsum.compute_Gq(fieldsum.build_sum_table(W, q), c1)
    return tables


def cmd_slabs(cfg, mhash):
    k, n = _get(cfg, "k", int), _get(cfg, "n", int)
    R = _get(cfg, "R", float)
    u1, u2 = _get(cfg, "u1", float), _get(cfg, "u2", float)
    fam = slabgeo.admissible_family(k, n, R, u1, u2, _gq_tables(cfg, k, n, R, u1, u2))
    header = ([f"center{i + 1}" for i in range(n)]
              + [f"radius{i + 1}" for i in range(n)]
              + [f"p{i + 1}" for i in range(n)] + ["q"])
    rows = [list(fam.centers[i]) + list(fam.radii[i]) + list(fam.ps[i])
            + [int(fam.qs[i])] for i in range(len(fam))]
    write_csv(cfg.get("out"), header, rows, mhash)
    return 0


def cmd_measure(cfg, mhash):
    k, n = _get(cfg, "k", int), _get(cfg, "n", int)
    R = _get(cfg, "R", float)
    u1, u2 = _get(cfg, "u1", float), _get(cfg, "u2", float)
    method = _get(cfg, "method", str, "exact-sweep")
    seed = _get(cfg, "seed", int, 0)
    samples = _get(cfg, "samples", int, 100000)
    tables = _gq_tables(cfg, k, n, R, u1, u2)
    fam = slabgeo.admissible_family(k, n, R, u1, u2, tables)
    if "a1" in cfg:
        a = slabgeo.DilationExponents(_get(cfg, "a1", float), _get(cfg, "a2", float),
                                      _get(cfg, "eps", float, 0.05))
        fam = slabgeo.dilated_unit_cell(fam, a)
        val, err = slabgeo.union_measure(fam, method, samples=samples,
                                         seed=seed, wrap_unit=True)
    else:
        val, err = slabgeo.union_measure(fam, method, samples=samples, seed=seed)
    pairs, ratio = slabgeo.overlap_pair_count(fam)
    header = ["measure", "error", "boxes", "pairs", "pair_ratio", "seed"]
    write_csv(cfg.get("out"), header, [[val, err, len(fam), pairs, ratio, seed]],
              mhash)
    return 0


def cmd_cover(cfg, mhash):
    k, n = _get(cfg, "k", int), _get(cfg, "n", int)
    u1, u2 = _get(cfg, "u1", float), _get(cfg, "u2", float)
    strategy = _get(cfg, "strategy", str, "fine-balls")
    scales = [float(s) for s in str(_get(cfg, "scales", str)).split(",")]
    rows = []
    pts = []
    for R in scales:
        tables = _gq_tables(cfg, k, n, R, u1, u2)
        fam = slabgeo.admissible_family(k, n, R, u1, u2, tables)
        radius = 1.0 / R if strategy == "fine-balls" else R ** -0.5
        count = slabgeo.covering_count(fam, radius, strategy)
        rows.append([R, radius, count])
        pts.append((radius, count))
    slope, stderr = slabgeo.dim_slope_estimate(pts)
    write_csv(cfg.get("out"), ["R", "radius", "count"], rows, mhash)
    print(f"slope={slope:.17g} stderr={stderr:.17g}")
    return 0


def cmd_mtp(cfg, mhash):
    pair = mtp.ExponentPair(_floats(_get(cfg, "b", str)),
                            _floats(_get(cfg, "a", str)))
    print(f"{float(mtp.mtp_lower_bound(pair)):g}")
    return 0


def cmd_jarnik(cfg, mhash):
    print(f"{float(mtp.jarnik_dim(_get(cfg, 'tau', float))):g}")
    return 0


def cmd_regions(cfg, mhash):
    header, rows = regions.curve_emit(_get(cfg, "k", int), _get(cfg, "n", int),
                                      _get(cfg, "what", str),
                                      m=_get(cfg, "m", int, 0) or None,
                                      samples=_get(cfg, "samples", int, 64))
    write_csv(cfg.get("out"), header, rows, mhash)
    return 0


# ------------------------------------------------------------------ wiring


def _build_parser() -> _Parser:
    top = _Parser(prog="talbot", description=__doc__)
    sub = top.add_subparsers(dest="cmd", required=True)
    common = dict(default=None)

    def add(name, func, flags):
        p = sub.add_parser(name, add_help=True)
        p.add_argument("--config", **common)
        p.add_argument("--out", **common)
        for flag in flags:
            p.add_argument(f"--{flag}", dest=flag.replace("-", "_"), **common)
        p.set_defaults(func=func)

    add("expsum", cmd_expsum, ["poly", "q", "p", "budget"])
    add("gq", cmd_gq, ["poly", "q", "c1", "budget"])
    add("blocksum", cmd_blocksum, ["poly", "q", "L", "N"])
    add("evolve", cmd_evolve, ["k", "n", "u1", "u2", "R", "points-file",
                               "slab", "x1", "poly"])
    add("saddle", cmd_saddle, ["n", "m", "u1", "u2", "R", "variant",
                               "points-file", "p"])
    add("slabs", cmd_slabs, ["k", "n", "R", "u1", "u2", "poly", "c1"])
    add("measure", cmd_measure, ["k", "n", "R", "u1", "u2", "poly", "c1",
                                 "method", "samples", "seed", "a1", "a2", "eps"])
    add("cover", cmd_cover, ["k", "n", "u1", "u2", "poly", "c1", "strategy",
                             "scales"])
    add("mtp", cmd_mtp, ["b", "a"])
    add("jarnik", cmd_jarnik, ["tau"])
    add("regions", cmd_regions, ["k", "n", "what", "m", "samples"])
    return top


def run(argv) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EX_USAGE
    try:
        cfg = _merge_config(args)
        cfg.pop("cmd", None)
        mhash = manifest_hash({k: v for k, v in cfg.items() if k != "out"})
        print(f"# run manifest {mhash} cmd={args.cmd} "
              + " ".join(f"{k}={v}" for k, v in sorted(cfg.items()) if k != "out"),
              file=sys.stderr)
        return args.func(cfg, mhash)
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def main():
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
