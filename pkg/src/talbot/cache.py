"""Binary cache files for sum tables.

Layout (little-endian throughout):

    magic   4s   b"TSUM"
    version u32  (currently 1)
    q       u32
    d       u32
    c1      f64
    physh   32s  sha256 of the polynomial's canonical form
    polylen u32, poly canonical form (utf-8)
    values  q^(d+1) complex128
    digest  32s  sha256 of everything above

Read-back is bit-identical; any truncation, bit flip or version bump is
refused with a CacheError.
"""

from __future__ import annotations

import hashlib
import os
import struct
from pathlib import Path

import numpy as np

from .errors import CacheError
from .fieldsum import SumTable

MAGIC = b"TSUM"
VERSION = 1

ENV_CACHE_DIR = "TALBOT_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "talbot"


def table_filename(table: SumTable) -> str:
    h = table.poly.content_hash().hex()[:16]
    return f"sumtable_q{table.q}_d{table.dim}_{h}.bin"


def write_table(table: SumTable, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    canon = table.poly.canonical().encode()
    head = MAGIC + struct.pack("<III", VERSION, table.q, table.dim)
    head += struct.pack("<d", table.c1)
    head += table.poly.content_hash()
    head += struct.pack("<I", len(canon)) + canon
    body = np.ascontiguousarray(table.values, dtype="<c16").tobytes()
    digest = hashlib.sha256(head + body).digest()
    path.write_bytes(head + body + digest)
    return path


def read_table(path: Path | str) -> SumTable:
    raw = Path(path).read_bytes()
    if len(raw) < 4 + 12 + 8 + 32 + 4 + 32:
        raise CacheError(f"{path}: truncated cache file")
    if raw[:4] != MAGIC:
        raise CacheError(f"{path}: bad magic {raw[:4]!r}")
    version, q, d = struct.unpack_from("<III", raw, 4)
    if version != VERSION:
        raise CacheError(f"{path}: version {version}, expected {VERSION}")
    (c1,) = struct.unpack_from("<d", raw, 16)
    physh = raw[24:56]
    (polylen,) = struct.unpack_from("<I", raw, 56)
    off = 60
    canon = raw[off: off + polylen].decode()
    off += polylen
    nvals = q ** (d + 1)
    body_end = off + nvals * 16
    if len(raw) != body_end + 32:
        raise CacheError(f"{path}: wrong length (truncated or corrupt)")
    digest = hashlib.sha256(raw[:body_end]).digest()
    if digest != raw[body_end:]:
        raise CacheError(f"{path}: checksum mismatch")
    poly = _poly_from_canonical(canon)
    if poly.content_hash() != physh:
        raise CacheError(f"{path}: polynomial hash mismatch")
    values = np.frombuffer(raw[off:body_end], dtype="<c16").reshape((q,) * (d + 1))
    return SumTable(q=q, dim=d, poly=poly, values=values.copy(), c1=c1)


def _poly_from_canonical(canon: str):
    from .intpoly import IntPoly

    head, *parts = canon.split(";")
    d = int(head.split("=")[1])
    terms = []
    for part in parts:
        if not part:
            continue
        coeff_s, exps_s = part.split("*")
        terms.append((tuple(int(e) for e in exps_s.split(",")), int(coeff_s)))
    return IntPoly(d, tuple(sorted(terms)))


def cache_roundtrip(table: SumTable, cache_dir: Path | str | None = None) -> SumTable:
    """Write then re-read; returns the re-read table (bit-identical)."""
    base = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    return read_table(write_table(table, base / table_filename(table)))
