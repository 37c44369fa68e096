import threading
from fractions import Fraction

from gwloc.cache import HEADER, cache_roundtrip, load_into, read_cache, write_cache
from gwloc.gw import gw_invariant, plane_curve_query
from gwloc.integrals import IntegralCache, VertexIntegrand, vertex_integral


def _filled():
    cache = IntegralCache()
    for a in [(1,), (2, 1, 0), (1, 1, 1), (0, 0, 0, 1)]:
        vertex_integral(VertexIntegrand(1, a, 0), cache)
    vertex_integral(VertexIntegrand(1, (0, 0), 1), cache)
    vertex_integral(VertexIntegrand(0, (1, 0, 0, 0), 0), cache)
    return cache


def test_roundtrip(tmp_path):
    cache = _filled()
    back = cache_roundtrip(tmp_path / "c.txt", cache)
    assert back.entries == cache.entries
    assert (tmp_path / "c.txt").read_text().startswith(HEADER + "\nversion 1\n")


def test_missing_file_is_empty(tmp_path):
    assert read_cache(tmp_path / "nope.txt") == {}


def test_stale_version_ignored(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text(f"{HEADER}\nversion 0\n1;1;0;1/24\n")
    assert read_cache(p) == {}


def test_corrupt_file_ignored(tmp_path, caplog):
    p = tmp_path / "c.txt"
    p.write_text(f"{HEADER}\nversion 1\n1;1;0;1/24\nthis is not a record\n")
    assert read_cache(p) == {}
    assert "ignoring cache" in caplog.text


def test_corrupt_file_is_replaced_on_write(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("garbage")
    assert write_cache(p, {(1, (1,), 0): Fraction(1, 24)})
    assert read_cache(p) == {(1, (1,), 0): Fraction(1, 24)}


def test_concurrent_writers_merge(tmp_path):
    p = tmp_path / "c.txt"
    chunks = [{(1, (0,) * (k - 1) + (k,), 0): Fraction(1, k + 1)} for k in range(1, 9)]
    threads = [threading.Thread(target=write_cache, args=(p, c)) for c in chunks]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    merged = read_cache(p)
    assert all(merged[k] == v for c in chunks for k, v in c.items())


def test_warm_cache_gives_same_value(tmp_path):
    p = tmp_path / "c.txt"
    cold = IntegralCache()
    v1 = gw_invariant(plane_curve_query(1, 3), cache=cold).value
    write_cache(p, dict(cold.entries))
    warm = IntegralCache()
    assert load_into(warm, p) == len(cold)
    res = gw_invariant(plane_curve_query(1, 3), cache=warm)
    assert res.value == v1 == 1
    assert warm.misses == 0
