"""Unit tests for the memo tables."""

import threading

from nlpw.cache import MemoRegistry, MemoStats, MemoTable, memo_tables
from nlpw.gtrig import pi_pq


class TestMemoTable:
    """LRU memo table."""

    def test_put_and_get(self):
        table = MemoTable(max_size=4, name="t")
        table.put((1.0, 2.0), 3.0)

        assert table.get((1.0, 2.0)) == 3.0
        assert (1.0, 2.0) in table
        assert len(table) == 1

    def test_miss_returns_default(self):
        table = MemoTable(max_size=4)

        assert table.get("absent") is None
        assert table.get("absent", 42) == 42
        assert table.stats().misses == 2

    def test_lru_eviction(self):
        table = MemoTable(max_size=2)
        table.put("a", 1)
        table.put("b", 2)
        table.get("a")
        table.put("c", 3)

        assert "a" in table
        assert "b" not in table
        assert table.stats().evictions == 1

    def test_get_or_compute_computes_once(self):
        table = MemoTable(max_size=4)
        calls = []

        def compute():
            calls.append(1)
            return 7

        assert table.get_or_compute("k", compute) == 7
        assert table.get_or_compute("k", compute) == 7
        assert len(calls) == 1

    def test_stored_none_is_a_hit(self):
        table = MemoTable(max_size=4)
        table.put("k", None)

        assert table.get_or_compute("k", lambda: 1) is None

    def test_clear_counts_evictions(self):
        table = MemoTable(max_size=4)
        table.put("a", 1)
        table.put("b", 2)
        table.clear()

        assert len(table) == 0
        assert table.stats().evictions == 2

    def test_stats(self):
        table = MemoTable(max_size=4, name="stats")
        table.put("a", 1)
        table.get("a")
        table.get("b")

        assert table.stats() == MemoStats(
            name="stats", hits=1, misses=1, evictions=0, size=1, max_size=4
        )
        assert table.stats().hit_ratio == 0.5

    def test_hit_ratio_without_lookups(self):
        assert MemoTable(max_size=4).stats().hit_ratio == 0.0

    def test_default_size_from_config(self):
        assert MemoTable().max_size > 0

    def test_concurrent_access(self):
        table = MemoTable(max_size=1000)

        def worker(offset):
            for i in range(200):
                table.get_or_compute((offset, i), lambda: offset * i)

        threads = [threading.Thread(target=worker, args=(k,)) for k in range(4)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()

        assert len(table) == 800
        assert table.get((3, 5)) == 15


class TestMemoRegistry:
    """Named tables."""

    def test_table_is_idempotent(self):
        registry = MemoRegistry()

        assert registry.table("x") is registry.table("x")
        assert registry.table("x") is not registry.table("y")

    def test_stats_and_clear(self):
        registry = MemoRegistry()
        registry.table("x").put("k", 1)
        registry.table("y").put("k", 2)

        assert set(registry.stats()) == {"x", "y"}
        registry.clear()
        assert len(registry.table("x")) == 0

    def test_pi_table_is_memoized(self, fresh_memo_tables):
        pi_pq(2.5, 1.75)
        pi_pq(2.5, 1.75)
        stats = memo_tables.table("pi_pq").stats()

        assert stats.misses >= 1
        assert stats.hits >= 1
        assert (2.5, 1.75) in memo_tables.table("pi_pq")
