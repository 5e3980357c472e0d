from pathlib import Path

import numpy as np
import pytest

from talbot import cache
from talbot import fieldsum as fs
from talbot.errors import CacheError
from talbot.intpoly import parse_poly


@pytest.fixture
def table():
    return fs.build_sum_table(parse_poly("x^3+y^3"), 7)


def test_roundtrip_bit_identical(table, tmp_path):
    path = cache.write_table(table, tmp_path / "t.bin")
    back = cache.read_table(path)
    assert back.q == table.q
    assert back.dim == table.dim
    assert back.c1 == table.c1
    assert back.poly.canonical() == table.poly.canonical()
    assert np.array_equal(back.values, table.values)


def test_cache_roundtrip_helper(table, tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_CACHE_DIR, str(tmp_path))
    back = cache.cache_roundtrip(table)
    assert np.array_equal(back.values, table.values)
    assert list(tmp_path.glob("sumtable_*.bin"))


def test_truncation_refused(table, tmp_path):
    path = cache.write_table(table, tmp_path / "t.bin")
    raw = path.read_bytes()
    path.write_bytes(raw[:-7])
    with pytest.raises(CacheError):
        cache.read_table(path)


def test_bit_flip_refused(table, tmp_path):
    path = cache.write_table(table, tmp_path / "t.bin")
    raw = bytearray(path.read_bytes())
    raw[len(raw) // 2] ^= 0x40
    path.write_bytes(bytes(raw))
    with pytest.raises(CacheError):
        cache.read_table(path)


def test_version_bump_refused(table, tmp_path):
    path = cache.write_table(table, tmp_path / "t.bin")
    raw = bytearray(path.read_bytes())
    raw[4] = 99  # version field follows the 4-byte magic
    path.write_bytes(bytes(raw))
    with pytest.raises(CacheError):
        cache.read_table(path)


def test_wrong_magic_refused(tmp_path):
    p = tmp_path / "junk.bin"
    p.write_bytes(b"NOPE" + bytes(64))
    with pytest.raises(CacheError):
        cache.read_table(p)


def test_filename_distinguishes_polynomials(table):
    other = fs.build_sum_table(parse_poly("x^4+y^4"), 7)
    assert cache.table_filename(table) != cache.table_filename(other)


def test_default_cache_dir_env(monkeypatch):
    monkeypatch.setenv(cache.ENV_CACHE_DIR, "/tmp/somewhere")
    assert cache.default_cache_dir() == Path("/tmp/somewhere")
