import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from stopset.gf2 import BinaryMatrix


def random_matrix(rng: np.random.Generator, m: int, n: int) -> BinaryMatrix:
    masks = [int(rng.integers(0, 1 << n)) for _ in range(m)]
    return BinaryMatrix(masks, n)


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
