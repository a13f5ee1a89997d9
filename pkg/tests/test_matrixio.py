import io

import pytest

from conftest import random_matrix

from stopset import matrixio
from stopset.gf2 import BinaryMatrix


class TestTextFormat:
    def test_round_trip(self, rng, tmp_path):
        H = random_matrix(rng, 5, 9)
        path = tmp_path / "h.txt"
        matrixio.write_matrix_text(H, path)
        assert matrixio.read_matrix_text(path) == H

    def test_exact_layout(self):
        H = BinaryMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
        assert matrixio.matrix_text(H) == "2 3\n101\n011\n"

    def test_rejects_foreign_characters(self):
        with pytest.raises(ValueError):
            matrixio.read_matrix_text(io.StringIO("1 3\n1x1\n"))

    def test_rejects_wrong_row_length(self):
        with pytest.raises(ValueError):
            matrixio.read_matrix_text(io.StringIO("1 3\n10\n"))

    def test_rejects_bad_header(self):
        with pytest.raises(ValueError):
            matrixio.read_matrix_text(io.StringIO("3\n111\n"))
        with pytest.raises(ValueError):
            matrixio.read_matrix_text(io.StringIO("0 3\n"))


class TestAlist:
    def test_round_trip(self, rng, tmp_path):
        for _ in range(10):
            H = random_matrix(rng, int(rng.integers(1, 7)), int(rng.integers(1, 10)))
            path = tmp_path / "h.alist"
            matrixio.write_alist(H, path)
            assert matrixio.read_alist(path) == H

    def test_zero_padding_tolerated(self):
        # a 2x3 matrix with fixed-width index lists padded by zeros
        text = (
            "3 2\n"
            "2 2\n"
            "1 2 1\n"
            "2 2\n"
            "1 0\n"
            "1 2\n"
            "2 0\n"
            "1 2 0\n"
            "2 3 0\n"
        )
        H = matrixio.read_alist(io.StringIO(text))
        assert H.to_rows() == [[1, 1, 0], [0, 1, 1]]

    def test_rejects_out_of_range(self):
        text = "2 1\n1 1\n1 1\n2\n1\n3\n1 2\n"
        with pytest.raises(ValueError):
            matrixio.read_alist(io.StringIO(text))

    def test_load_dispatch(self, rng, tmp_path):
        H = random_matrix(rng, 3, 6)
        t = tmp_path / "h.txt"
        a = tmp_path / "h.alist"
        matrixio.write_matrix_text(H, t)
        matrixio.write_alist(H, a)
        assert matrixio.load_matrix(t) == H
        assert matrixio.load_matrix(a) == H
