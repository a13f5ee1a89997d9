from fractions import Fraction
from math import comb, inf

import numpy as np
import pytest

from conftest import random_matrix
from reference import ss_counts_naive, stopping_sets_naive

from stopset.errors import DimensionMismatch, EnumerationLimit
from stopset.gf2 import (
    BinaryMatrix,
    SupportSet,
    codeword_weight_distribution,
    enumerate_stopping_sets,
    is_stopping_vector,
    min_distance,
    redundant_extend,
    row_space_canonical,
    ss_indicator,
    ss_weight_distribution_exhaustive,
    stopping_distance,
)

# the 2x3 and 3x4 worked examples used throughout
H_EX1 = BinaryMatrix.from_rows([[1, 0, 1], [1, 1, 1]])
H_EX2 = BinaryMatrix.from_rows([[0, 1, 1, 1], [0, 1, 1, 0], [1, 0, 1, 1]])
H_EX2_FIXED = BinaryMatrix.from_rows(
    [[0, 1, 1, 1], [0, 1, 1, 0], [1, 0, 1, 1], [0, 0, 0, 1]])


class TestBinaryMatrix:
    def test_from_rows_round_trip(self):
        rows = [[1, 0, 1], [0, 1, 1]]
        assert BinaryMatrix.from_rows(rows).to_rows() == rows

    def test_rejects_bad_entries(self):
        with pytest.raises(ValueError):
            BinaryMatrix.from_rows([[0, 2, 0]])
        with pytest.raises(ValueError):
            BinaryMatrix.from_rows([[0, 1], [1]])
        with pytest.raises(ValueError):
            BinaryMatrix([0b100], 2)  # stray bit beyond n
        with pytest.raises(ValueError):
            BinaryMatrix([], 3)

    def test_immutable(self):
        with pytest.raises(AttributeError):
            H_EX1.m = 5

    def test_equality_and_hash(self):
        a = BinaryMatrix([0b101, 0b111], 3)
        assert a == H_EX1
        assert hash(a) == hash(H_EX1)
        assert a != BinaryMatrix([0b101, 0b111], 4)


class TestIndicator:
    def test_known_stopping_vector(self):
        assert ss_indicator(H_EX1, [1, 0, 1]) == 0

    def test_hand_evaluated(self):
        assert ss_indicator(H_EX1, [1, 0, 0]) == 2

    def test_zero_vector(self):
        assert ss_indicator(H_EX1, [0, 0, 0]) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            ss_indicator(H_EX1, [1, 0])

    def test_is_stopping_vector(self):
        assert is_stopping_vector(H_EX1, [1, 1, 1])
        assert not is_stopping_vector(H_EX1, [0, 1, 0])
        assert is_stopping_vector(H_EX1, [0, 0, 0])

    def test_accepts_support_set(self):
        assert is_stopping_vector(H_EX1, SupportSet((1, 3)))


class TestExhaustiveDistribution:
    def test_worked_example(self):
        dist = ss_weight_distribution_exhaustive(H_EX1)
        assert list(dist.values) == [1, 0, 1, 1]

    def test_identity(self):
        dist = ss_weight_distribution_exhaustive(BinaryMatrix.identity(6))
        assert list(dist.values) == [1, 0, 0, 0, 0, 0, 0]

    def test_single_all_ones_row(self):
        n = 7
        dist = ss_weight_distribution_exhaustive(BinaryMatrix([(1 << n) - 1], n))
        assert dist[0] == 1 and dist[1] == 0
        assert all(dist[w] == comb(n, w) for w in range(2, n + 1))

    def test_matches_naive_oracle(self, rng):
        for _ in range(25):
            m, n = int(rng.integers(1, 7)), int(rng.integers(1, 11))
            H = random_matrix(rng, m, n)
            dist = ss_weight_distribution_exhaustive(H)
            assert [int(v) for v in dist.values] == ss_counts_naive(H.row_masks, n)

    def test_zero_entry_always_one(self, rng):
        for _ in range(10):
            H = random_matrix(rng, int(rng.integers(1, 6)), int(rng.integers(1, 10)))
            assert ss_weight_distribution_exhaustive(H)[0] == 1

    def test_guard(self):
        with pytest.raises(EnumerationLimit):
            ss_weight_distribution_exhaustive(BinaryMatrix([1], 31))


class TestEnumeration:
    def test_worked_example(self):
        sets = enumerate_stopping_sets(H_EX1, 3)
        assert [s.indices for s in sets] == [(1, 3), (1, 2, 3)]

    def test_identity_empty(self):
        assert enumerate_stopping_sets(BinaryMatrix.identity(5), 5) == []

    def test_second_example_contains_234(self):
        sets = enumerate_stopping_sets(H_EX2, 3)
        assert (2, 3, 4) in [s.indices for s in sets]

    def test_sorted_output(self, rng):
        for _ in range(20):
            H = random_matrix(rng, int(rng.integers(1, 7)), int(rng.integers(2, 11)))
            sets = enumerate_stopping_sets(H, H.n)
            keys = [(len(s), s.indices) for s in sets]
            assert keys == sorted(keys)

    def test_matches_naive_oracle(self, rng):
        for _ in range(25):
            m, n = int(rng.integers(1, 8)), int(rng.integers(1, 11))
            H = random_matrix(rng, m, n)
            w_max = int(rng.integers(1, n + 1))
            got = [tuple(i - 1 for i in s.indices)
                   for s in enumerate_stopping_sets(H, w_max)]
            assert sorted(got) == sorted(stopping_sets_naive(H.row_masks, n, w_max))

    def test_census_cross_checks_exhaustive(self, rng):
        for _ in range(20):
            m, n = int(rng.integers(1, 8)), int(rng.integers(1, 13))
            H = random_matrix(rng, m, n)
            dist = ss_weight_distribution_exhaustive(H)
            per_weight = {}
            for s in enumerate_stopping_sets(H, n):
                per_weight[len(s)] = per_weight.get(len(s), 0) + 1
            for w in range(1, n + 1):
                assert per_weight.get(w, 0) == dist[w]

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            enumerate_stopping_sets(H_EX1, 0)
        with pytest.raises(ValueError):
            enumerate_stopping_sets(H_EX1, 4)


class TestStoppingDistance:
    def test_worked_example(self):
        report = stopping_distance(H_EX1)
        assert (report.distance, report.multiplicity) == (2, 1)

    def test_identity_none_found(self):
        report = stopping_distance(BinaryMatrix.identity(8), w_max=8)
        assert not report.found
        assert report.distance is None and report.multiplicity is None

    def test_appended_row_kills_support(self):
        assert is_stopping_vector(H_EX2, [0, 1, 1, 1])
        assert not is_stopping_vector(H_EX2_FIXED, [0, 1, 1, 1])
        fixed_sets = {s.indices for s in enumerate_stopping_sets(H_EX2_FIXED, 4)}
        assert (2, 3, 4) not in fixed_sets
        assert fixed_sets < {s.indices for s in enumerate_stopping_sets(H_EX2, 4)}

    def test_default_w_max(self):
        assert stopping_distance(H_EX1).w_max == 3
        assert stopping_distance(BinaryMatrix.identity(20)).w_max == 10


class TestCodewordDistribution:
    def test_zero_row(self):
        dist = codeword_weight_distribution(BinaryMatrix([0], 4))
        assert dist[0] == 1 and all(dist[w] == 0 for w in range(1, 5))

    def test_single_even_row(self):
        dist = codeword_weight_distribution(BinaryMatrix.from_rows([[1, 1]]))
        assert dist[1] == 0 and dist[2] == 1

    def test_identity_2(self):
        dist = codeword_weight_distribution(BinaryMatrix.identity(2))
        assert dist[1] == 2 and dist[2] == 1

    def test_message_multiplicity(self, rng):
        from reference import codeword_counts_naive

        for _ in range(20):
            k, n = int(rng.integers(1, 7)), int(rng.integers(1, 9))
            G = random_matrix(rng, k, n)
            dist = codeword_weight_distribution(G)
            naive = codeword_counts_naive(G.row_masks, n, k)
            assert [int(dist[w]) for w in range(1, n + 1)] == naive[1:]

    def test_guard(self):
        with pytest.raises(EnumerationLimit):
            codeword_weight_distribution(BinaryMatrix([1] * 25, 1))


class TestMinDistance:
    def test_examples(self):
        assert min_distance(BinaryMatrix.from_rows([[1, 1]])) == 2
        assert min_distance(BinaryMatrix.identity(2)) == 1
        assert min_distance(BinaryMatrix.from_rows([[1, 1, 0], [0, 1, 1]])) == 2

    def test_zero_matrix_infinite(self):
        assert min_distance(BinaryMatrix([0, 0], 3)) == inf

    def test_consistency_with_weight_one_count(self, rng):
        for _ in range(20):
            G = random_matrix(rng, int(rng.integers(1, 6)), int(rng.integers(1, 9)))
            dist = codeword_weight_distribution(G)
            assert (min_distance(G) >= 2) == (dist[1] == 0)


class TestRedundantExtend:
    def test_pairwise_block_order(self):
        H = BinaryMatrix([0b0011, 0b0101, 0b1001, 0b1110], 4)
        ext = redundant_extend(H, 2)
        h = H.row_masks
        assert ext.row_masks == (
            h[0], h[1], h[0] ^ h[1], h[2], h[3], h[2] ^ h[3])

    def test_degree_one_identity(self, rng):
        H = random_matrix(rng, 5, 7)
        assert redundant_extend(H, 1) == H

    def test_row_count(self, rng):
        H = random_matrix(rng, 50, 8)
        assert redundant_extend(H, 5).m == 310

    def test_divisibility(self):
        with pytest.raises(ValueError):
            redundant_extend(BinaryMatrix.identity(3), 2)

    def test_row_space_preserved(self, rng):
        for _ in range(20):
            blocks = int(rng.integers(1, 4))
            degree = int(rng.integers(1, 4))
            n = int(rng.integers(1, 10))
            H = random_matrix(rng, blocks * degree, n)
            assert row_space_canonical(H) == row_space_canonical(
                redundant_extend(H, degree))

    def test_extension_never_adds_stopping_sets(self, rng):
        for _ in range(15):
            degree = int(rng.integers(1, 4))
            blocks = int(rng.integers(1, 3))
            n = int(rng.integers(2, 11))
            H = random_matrix(rng, blocks * degree, n)
            ext = redundant_extend(H, degree)
            base_sets = {s.indices for s in enumerate_stopping_sets(H, n)}
            ext_sets = {s.indices for s in enumerate_stopping_sets(ext, n)}
            assert ext_sets <= base_sets

    def test_stopping_vector_implication(self, rng):
        for _ in range(40):
            degree = int(rng.integers(1, 4))
            n = int(rng.integers(2, 10))
            H = random_matrix(rng, 2 * degree, n)
            ext = redundant_extend(H, degree)
            x = [int(b) for b in rng.integers(0, 2, size=n)]
            if is_stopping_vector(ext, x):
                assert is_stopping_vector(H, x)
