import numpy as np
import pytest

from dirac_descent.exact import ExactMatrix


def naive_matmul(a, b):
    """Triple loop over Python complex numbers (exact for small dyadic entries)."""
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def random_monomial_unitary(rng: np.random.Generator, n: int) -> ExactMatrix:
    """Permutation matrix with random quarter-phase entries."""
    perm = rng.permutation(n)
    phases = rng.integers(0, 4, size=n)
    units = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}
    re = np.zeros((n, n), dtype=np.int64)
    im = np.zeros((n, n), dtype=np.int64)
    for i, (j, ph) in enumerate(zip(perm, phases)):
        re[i, j], im[i, j] = units[int(ph)]
    return ExactMatrix(re, im)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
