import numpy as np
import pytest

from wignerlab import SymmetricMatrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240815)


def random_symmetric(n: int, seed: int, scale: float = 1.0) -> SymmetricMatrix:
    """Symmetric matrix with i.i.d. U[-scale, scale] upper triangle."""
    gen = np.random.default_rng(seed)
    draws = gen.uniform(-scale, scale, n * (n + 1) // 2)
    m = np.zeros((n, n))
    rows, cols = np.triu_indices(n)
    m[rows, cols] = draws
    m[cols, rows] = draws
    return SymmetricMatrix(m)
