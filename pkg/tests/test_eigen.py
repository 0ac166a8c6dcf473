import math
from itertools import combinations

import numpy as np
import pytest

from wignerlab import (
    DomainError,
    NumericError,
    Spectrum,
    SymmetricMatrix,
    build_wigner,
    entry_distribution,
    symmetric_eigenvalues,
    tridiagonalize,
)
from wignerlab.eigen import tridiagonal_eigenvalues

from conftest import random_symmetric

# ---------------------------------------------------------------------------
# oracle: roots of the explicitly expanded characteristic polynomial.
# Coefficients come from sums of principal minors (LU determinants) and the
# roots from the companion matrix, so no path is shared with the QL solver.
# ---------------------------------------------------------------------------


def charpoly_eigenvalues(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    coeffs = [1.0]
    for k in range(1, n + 1):
        minors = sum(
            float(np.linalg.det(a[np.ix_(idx, idx)])) for idx in combinations(range(n), k)
        )
        coeffs.append((-1.0) ** k * minors)
    roots = np.roots(coeffs)
    return np.sort(roots.real)


def toeplitz21(n: int) -> SymmetricMatrix:
    m = 2.0 * np.eye(n) + np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)
    return SymmetricMatrix(m)


# ---------------------------------------------------------------------------
# closed-form spectra
# ---------------------------------------------------------------------------


def test_exchange_matrix():
    spec = symmetric_eigenvalues(SymmetricMatrix([[0.0, 1.0], [1.0, 0.0]]))
    assert spec.eigenvalues == pytest.approx([-1.0, 1.0], abs=1e-14)


def test_identity_matrix():
    spec = symmetric_eigenvalues(SymmetricMatrix(np.eye(7)))
    assert spec.eigenvalues == pytest.approx(np.ones(7), abs=1e-14)


def test_toeplitz_three_by_three():
    spec = symmetric_eigenvalues(toeplitz21(3))
    expected = [2.0 - math.sqrt(2.0), 2.0, 2.0 + math.sqrt(2.0)]
    assert spec.eigenvalues == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("n", [2, 5, 10, 50])
def test_toeplitz_closed_form(n):
    spec = symmetric_eigenvalues(toeplitz21(n))
    expected = np.sort(2.0 + 2.0 * np.cos(np.arange(1, n + 1) * math.pi / (n + 1)))
    assert np.max(np.abs(spec.eigenvalues - expected)) < 1e-10


@pytest.mark.parametrize("n", [2, 3, 4])
def test_matches_characteristic_polynomial_oracle(n):
    for seed in range(5):
        m = random_symmetric(n, seed=300 + seed)
        spec = symmetric_eigenvalues(m)
        assert np.max(np.abs(spec.eigenvalues - charpoly_eigenvalues(m.entries))) < 1e-8


# ---------------------------------------------------------------------------
# tridiagonalization
# ---------------------------------------------------------------------------


def test_tridiagonalize_diagonal_matrix():
    d, e = tridiagonalize(SymmetricMatrix(np.diag([1.0, 2.0, 3.0])))
    assert np.array_equal(d, [1.0, 2.0, 3.0])
    assert np.array_equal(e, [0.0, 0.0])


def test_tridiagonalize_fixes_tridiagonal_up_to_signs():
    m = SymmetricMatrix([[1.0, 0.5, 0.0], [0.5, 2.0, -0.25], [0.0, -0.25, 3.0]])
    d, e = tridiagonalize(m)
    assert d == pytest.approx([1.0, 2.0, 3.0], abs=1e-14)
    assert np.abs(e) == pytest.approx([0.5, 0.25], abs=1e-14)


def test_tridiagonalize_preserves_invariants():
    m = random_symmetric(6, seed=17)
    d, e = tridiagonalize(m)
    trace = float(np.trace(m.entries))
    frob2 = float(np.sum(m.entries ** 2))
    assert d.sum() == pytest.approx(trace, rel=1e-12, abs=1e-12)
    assert float(np.sum(d ** 2) + 2.0 * np.sum(e ** 2)) == pytest.approx(frob2, rel=1e-12)


def test_tridiagonalize_two_by_two_and_one_by_one():
    d, e = tridiagonalize(SymmetricMatrix([[3.0, -2.0], [-2.0, 1.0]]))
    assert np.array_equal(d, [3.0, 1.0])
    assert np.array_equal(e, [-2.0])
    d, e = tridiagonalize(SymmetricMatrix([[4.0]]))
    assert np.array_equal(d, [4.0])
    assert e.size == 0


# ---------------------------------------------------------------------------
# similarity invariants at scale
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [5, 60, 400])
def test_trace_and_frobenius_invariants(n):
    m = random_symmetric(n, seed=400 + n)
    spec = symmetric_eigenvalues(m)
    trace = float(np.trace(m.entries))
    frob2 = float(np.sum(m.entries ** 2))
    scale = n * max(1.0, abs(trace))
    assert abs(spec.eigenvalues.sum() - trace) <= 1e-9 * scale
    assert abs(float(np.sum(spec.eigenvalues ** 2)) - frob2) <= 1e-9 * n * max(1.0, frob2)


def test_permutation_invariance():
    m = random_symmetric(12, seed=8)
    perm = np.random.default_rng(1).permutation(12)
    permuted = SymmetricMatrix(m.entries[np.ix_(perm, perm)])
    a = symmetric_eigenvalues(m).eigenvalues
    b = symmetric_eigenvalues(permuted).eigenvalues
    assert np.max(np.abs(a - b)) < 1e-10


def test_shift_invariance():
    m = random_symmetric(15, seed=9)
    shifted = SymmetricMatrix(m.entries + 2.5 * np.eye(15))
    a = symmetric_eigenvalues(m).eigenvalues
    b = symmetric_eigenvalues(shifted).eigenvalues
    assert np.max(np.abs((a + 2.5) - b)) < 1e-10


def test_wigner_spectrum_scale():
    m, sc = build_wigner(entry_distribution("standard_normal"), 120, 4)
    spec = symmetric_eigenvalues(m, scaling_used=sc.b_n)
    assert spec.scaling_used == sc.b_n
    assert spec.source_n == 120
    # bulk lives near [-2, 2]
    assert np.all(np.abs(spec.eigenvalues) < 3.5)


# ---------------------------------------------------------------------------
# failure modes and the Spectrum container
# ---------------------------------------------------------------------------


def test_sweep_budget_error_names_index():
    d, e = tridiagonalize(toeplitz21(12))
    with pytest.raises(NumericError, match="index"):
        tridiagonal_eigenvalues(d, e, max_sweeps=0)


def test_asymmetric_input_rejected():
    with pytest.raises(DomainError):
        SymmetricMatrix([[0.0, 1.0], [2.0, 0.0]])


def test_spectrum_validation():
    with pytest.raises(DomainError):
        Spectrum(np.array([2.0, 1.0]), 2)
    with pytest.raises(DomainError):
        Spectrum(np.array([1.0, 2.0]), 3)


def test_spectrum_csv_roundtrip():
    spec = symmetric_eigenvalues(random_symmetric(9, seed=2))
    text = spec.to_csv(header={"n": 9, "seed": 2})
    assert text.startswith("# n=9 seed=2\n")
    parsed = Spectrum.from_csv(text)
    assert np.array_equal(parsed.eigenvalues, spec.eigenvalues)


def test_spectrum_csv_rejects_garbage():
    with pytest.raises(DomainError, match="non-numeric"):
        Spectrum.from_csv("1.0\nnot-a-number\n2.0\n")
    with pytest.raises(DomainError):
        Spectrum.from_csv("# only a comment\n")
