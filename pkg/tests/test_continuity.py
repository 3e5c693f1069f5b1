import pytest

from acmgenera import GenusSet, binomial, certain_genera, continuity_prefix, m_sequence
from acmgenera.continuity import (
    clear_continuity_caches,
    load_cache,
    save_cache,
    warm_from_cache,
)
from acmgenera.search import brute_force_genera

# the published thresholds for degrees 1..45
M_TABLE = [
    0, 0, 1, 1, 3, 4, 4, 7, 11, 13, 18, 19, 19, 25, 32,
    40, 43, 52, 62, 73, 85, 89, 102, 116, 118, 133, 149, 166, 184, 203,
    208, 228, 229, 229, 250, 272, 295, 319, 344, 370, 376, 403, 431, 460, 490,
]


def test_genus_set_basics():
    s = GenusSet.from_values(7, [0, 3, 15])
    assert 3 in s and 4 not in s and -1 not in s
    assert list(s) == [0, 3, 15]
    assert len(s) == 3
    s.add(5)
    assert list(s) == [0, 3, 5, 15]
    with pytest.raises(ValueError):
        s.add(16)  # outside [0, C(6,2)]
    assert GenusSet.from_hex(7, s.to_hex()) == s
    assert s.copy() == s and s.copy() is not s


def test_certain_genera_examples():
    assert certain_genera(1).to_list() == [0]
    assert certain_genera(4).to_list() == [0, 1, 3]
    assert certain_genera(5).to_list() == [0, 1, 2, 3, 6]
    assert certain_genera(6).to_list() == [0, 1, 2, 3, 4, 6, 10]
    # degree 7 misses genus 5, which only the search recovers
    assert certain_genera(7).to_list() == [0, 1, 2, 3, 4, 6, 7, 10, 15]
    assert len(certain_genera(25)) == 176


def test_certain_genera_monotone_inclusion():
    prev = certain_genera(1)
    for d in range(2, 101):
        cur = certain_genera(d)
        assert prev.bits & cur.bits == prev.bits, d
        prev = cur


def test_certain_genera_sound():
    for d in range(1, 31):
        assert certain_genera(d).bits & ~brute_force_genera(d).bits == 0, d


def test_m_sequence_published_values():
    assert m_sequence(45) == M_TABLE
    assert m_sequence(1) == [0]
    assert m_sequence(7)[-1] == 4
    assert m_sequence(15)[-1] == 32
    assert m_sequence(25)[-1] == 118
    assert m_sequence(28)[-1] == 166


def test_m_sequence_monotone():
    ms = m_sequence(250)
    assert all(a <= b for a, b in zip(ms, ms[1:]))


def test_m_sequence_lower_bound():
    ms = m_sequence(250)
    for d in range(18, 251):
        assert ms[d - 1] >= binomial((d + 1) // 2 + 1, 2), d
    assert ms[18 - 1] == 52 >= binomial(10, 2) == 45


def test_continuity_prefix():
    assert continuity_prefix(1).to_list() == [0]
    assert continuity_prefix(15).to_list() == list(range(33))
    for d in range(1, 31):
        reference = brute_force_genera(d)
        assert all(g in reference for g in continuity_prefix(d)), d


def test_prefix_inside_certain_genera():
    for d in range(1, 101):
        certain = certain_genera(d)
        assert all(g in certain for g in continuity_prefix(d)), d


def test_cache_round_trip(tmp_path):
    path = tmp_path / "genera.cache"
    save_cache(path, 20)
    records = load_cache(path)
    assert sorted(records) == list(range(1, 21))
    for d in (1, 7, 20):
        assert records[d] == certain_genera(d)
    text = path.read_text()
    assert text.splitlines()[6].startswith("d 7 m 4 genera ")


def test_cache_rejects_corrupt_and_stale(tmp_path):
    path = tmp_path / "genera.cache"
    save_cache(path, 12)
    lines = path.read_text().splitlines()
    lines[5] = "d 6 m 4 genera 457"  # wrong threshold: stale
    lines[7] = "d 8 m 7 genera zzzz"  # unparseable bits
    lines.append("junk line")
    lines.append("d x m 0 genera 1")
    path.write_text("\n".join(lines) + "\n")
    records = load_cache(path)
    assert 6 not in records and 8 not in records
    assert 5 in records and 7 in records and 12 in records


def test_cache_rejects_bits_outside_universe(tmp_path):
    path = tmp_path / "genera.cache"
    save_cache(path, 6)
    lines = path.read_text().splitlines()
    lines[4] = "d 5 m 3 genera ffffffff"  # 32 bits, universe is C(4,2)+1 = 7
    path.write_text("\n".join(lines) + "\n")
    assert 5 not in load_cache(path)


def test_cache_missing_file():
    assert load_cache("/nonexistent/genera.cache") == {}
    assert warm_from_cache(None) is False
    assert warm_from_cache("/nonexistent/genera.cache") is False


def test_warm_from_cache_adopts_consistent_prefix(tmp_path):
    path = tmp_path / "genera.cache"
    save_cache(path, 25)
    clear_continuity_caches()
    assert warm_from_cache(path) is True
    assert len(certain_genera(25)) == 176
    clear_continuity_caches()
