import pytest

from stopset import qlw
from stopset.errors import EnumerationLimit


class TestCounts:
    def test_single_row_closed_form(self):
        # a single row is bad iff it has weight 1, so the count is 2^w - w
        for w in range(1, 11):
            assert qlw.count_dmin2(1, w) == 2**w - w

    def test_structural_identities(self):
        for L in range(1, 6):
            assert qlw.count_dmin2(L, 1) == 1
            assert qlw.count_dmin2(L, 2) == 2**L
        for L in range(1, 13):
            assert qlw.count_dmin2_rank(L, 1) == 1
            assert qlw.count_dmin2_rank(L, 2) == 2**L

    def test_gray_matches_naive(self):
        for (L, w) in [(1, 4), (2, 3), (2, 5), (3, 3), (3, 4), (4, 3), (2, 6)]:
            assert qlw.count_dmin2(L, w) == qlw.count_dmin2_naive(L, w)

    def test_gray_matches_rank(self):
        for L in range(1, 5):
            for w in range(1, 6):
                assert qlw.count_dmin2(L, w) == qlw.count_dmin2_rank(L, w)

    def test_range_partition_sums(self):
        from stopset import kernels

        L, w = 3, 4
        total = 1 << (L * w)
        full = qlw.count_dmin2(L, w)
        for parts in (2, 3, 7):
            bounds = [total * i // parts for i in range(parts + 1)]
            assert sum(
                kernels.gray_count_dmin_ge2(L, w, bounds[i], bounds[i + 1])
                for i in range(parts)
            ) == full

    def test_parallel_matches_serial(self):
        assert qlw.count_dmin2(3, 4, threads=2) == qlw.count_dmin2(3, 4)

    def test_guards(self):
        with pytest.raises(EnumerationLimit):
            qlw.count_dmin2(8, 4)
        with pytest.raises(EnumerationLimit):
            qlw.count_dmin2_rank(2, 9)
        with pytest.raises(EnumerationLimit):
            qlw.dmin2_count_auto(9, 30)
        with pytest.raises(ValueError):
            qlw.count_dmin2(0, 3)

    def test_auto_routes(self):
        # small w goes through the rank decomposition even for large L
        assert qlw.dmin2_count_auto(8, 2) == 2**8
        assert qlw.dmin2_count_auto(20, 1) == 1
        # large w small L goes through the sweep
        assert qlw.dmin2_count_auto(1, 12) == 2**12 - 12


class TestBounds:
    def test_sandwich_enumerable(self):
        for L in range(1, 5):
            for w in range(1, 6):
                pair = qlw.bounds_dmin2(L, w)
                assert pair.lower <= qlw.count_dmin2(L, w) <= pair.upper

    def test_single_column(self):
        pair = qlw.bounds_dmin2(3, 1)
        assert pair.lower <= 1 <= pair.upper

    def test_single_row_bounds_tight_enough(self):
        for w in range(1, 11):
            pair = qlw.bounds_dmin2(1, w)
            assert pair.lower <= 2**w - w <= pair.upper


class TestQTable:
    def test_round_trip(self):
        table = qlw.build_qtable(3, 3, method="rank")
        again = qlw.QTable.from_json(table.to_json())
        assert again.entries == table.entries

    def test_missing_key(self):
        with pytest.raises(KeyError):
            qlw.QTable()[2, 2]

    def test_range_validation(self):
        table = qlw.QTable()
        with pytest.raises(ValueError):
            table[2, 2] = 17  # exceeds 2^(L*w)

    def test_build_methods_agree(self):
        a = qlw.build_qtable(3, 4, method="gray")
        b = qlw.build_qtable(3, 4, method="rank")
        c = qlw.build_qtable(3, 4, method="auto")
        assert a.entries == b.entries == c.entries
