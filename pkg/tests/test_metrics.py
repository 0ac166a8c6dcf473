import math

import numpy as np
import pytest
from scipy import special

from wignerlab import (
    DomainError,
    Spectrum,
    SymmetricMatrix,
    esd_cdf,
    kolmogorov_distance,
    levy_cube_trace_bound,
    levy_distance,
    rank_inequality_check,
    semicircle_cdf,
    semicircle_pdf,
    sup_density_error,
    symmetric_eigenvalues,
)
from wignerlab.metrics import density_grid

from conftest import random_symmetric

# ---------------------------------------------------------------------------
# brute-force Levy oracle: 2-D scan over (eps, x) pairs.  This is the
# authoritative value the bisection routine is checked against.
# ---------------------------------------------------------------------------


def levy_brute(f, g, xs, eps_step=1e-3):
    xs = np.asarray(xs, dtype=float)
    for eps in np.arange(0.0, 1.0 + eps_step, eps_step):
        probes = np.concatenate([xs, xs - eps, xs + eps])
        probes = np.union1d(probes, np.nextafter(probes, -np.inf))
        fl = np.asarray(f(probes - eps), dtype=float)
        fr = np.asarray(f(probes + eps), dtype=float)
        gv = np.asarray(g(probes), dtype=float)
        if np.all(fl - eps <= gv + 1e-12) and np.all(gv <= fr + eps + 1e-12):
            return float(eps)
    return 1.0


def step_cdf(jump: float):
    def cdf(x):
        return (np.asarray(x, dtype=float) >= jump).astype(float)

    cdf.jump_points = np.array([jump])
    return cdf


def spectrum_of(*values) -> Spectrum:
    arr = np.sort(np.asarray(values, dtype=float))
    return Spectrum(arr, arr.size)


# ---------------------------------------------------------------------------
# Kolmogorov distance
# ---------------------------------------------------------------------------


def test_kolmogorov_identical_is_zero():
    spec = spectrum_of(-0.4, 0.1, 1.2)
    f = esd_cdf(spec)
    assert kolmogorov_distance(f, f, spec) == 0.0
    grid = np.linspace(-3.0, 3.0, 101)
    assert kolmogorov_distance(semicircle_cdf, semicircle_cdf, grid) == 0.0


def test_kolmogorov_single_jump_vs_semicircle():
    spec = spectrum_of(0.0)
    assert kolmogorov_distance(esd_cdf(spec), semicircle_cdf, spec) == pytest.approx(0.5, abs=1e-14)


def test_kolmogorov_two_jumps_vs_semicircle():
    # candidates are the jumps; the sup is F_sc(1) - 1/2 on either side
    spec = spectrum_of(-1.0, 1.0)
    expected = semicircle_cdf(1.0) - 0.5
    got = kolmogorov_distance(esd_cdf(spec), semicircle_cdf, spec)
    assert got == pytest.approx(expected, abs=1e-14)
    assert got == pytest.approx(0.3044988905221147, abs=1e-12)


def test_kolmogorov_smooth_pair_with_refinement():
    # sup_x |Phi(x) - Phi(x - c)| = erf(c / (2 sqrt 2)), attained at x = c/2
    c = 0.5
    f = lambda x: special.ndtr(np.asarray(x, dtype=float))
    g = lambda x: special.ndtr(np.asarray(x, dtype=float) - c)
    expected = float(special.erf(c / (2.0 * math.sqrt(2.0))))
    grid = np.linspace(-6.0, 6.0, 237)  # peak deliberately off-grid
    assert kolmogorov_distance(f, g, grid) == pytest.approx(expected, abs=1e-9)


def test_kolmogorov_symmetric_in_arguments():
    spec = spectrum_of(*np.random.default_rng(4).uniform(-2, 2, 15))
    a = kolmogorov_distance(esd_cdf(spec), semicircle_cdf, spec)
    b = kolmogorov_distance(semicircle_cdf, esd_cdf(spec), spec)
    assert abs(a - b) < 1e-12


def test_kolmogorov_empty_candidates_rejected():
    with pytest.raises(DomainError):
        kolmogorov_distance(semicircle_cdf, semicircle_cdf, np.array([]))


# ---------------------------------------------------------------------------
# Levy distance
# ---------------------------------------------------------------------------


def test_levy_identical_is_zero():
    f = esd_cdf(spectrum_of(-1.0, 0.0, 1.0))
    assert levy_distance(f, f, tolerance=1e-6) == 0.0


def test_levy_point_masses_match_brute_force_oracle():
    f = step_cdf(0.0)
    g = step_cdf(0.3)
    oracle = levy_brute(f, g, np.array([0.0, 0.3]), eps_step=1e-3)
    assert oracle == pytest.approx(0.3, abs=2e-3)
    got = levy_distance(f, g, tolerance=1e-4)
    assert got == pytest.approx(0.3, abs=1e-4)
    assert got == pytest.approx(oracle, abs=2e-3)


def test_levy_bounded_by_shift():
    # G(x) = F(x - c) has Levy distance at most c
    c = 0.17
    f = lambda x: special.ndtr(np.asarray(x, dtype=float))
    g = lambda x: special.ndtr(np.asarray(x, dtype=float) - c)
    got = levy_distance(f, g, tolerance=1e-5, points=np.linspace(-6.0, 6.0, 201))
    assert got <= c + 1e-4


def test_levy_at_most_kolmogorov():
    for seed in range(8):
        eigs_a = np.sort(np.random.default_rng(seed).uniform(-2, 2, 12))
        eigs_b = np.sort(np.random.default_rng(100 + seed).uniform(-2, 2, 12))
        fa, fb = esd_cdf(Spectrum(eigs_a, 12)), esd_cdf(Spectrum(eigs_b, 12))
        points = Spectrum(np.sort(np.concatenate([eigs_a, eigs_b])), 24)
        k = kolmogorov_distance(fa, fb, points)
        l = levy_distance(fa, fb, tolerance=1e-6)
        assert l <= k + 1e-5


def test_levy_rejects_non_monotone():
    wiggle = lambda x: np.sin(np.asarray(x, dtype=float))
    with pytest.raises(DomainError):
        levy_distance(wiggle, semicircle_cdf, points=np.linspace(-3, 3, 50))


def test_levy_needs_probe_points():
    with pytest.raises(DomainError):
        levy_distance(semicircle_cdf, semicircle_cdf)


# ---------------------------------------------------------------------------
# sup density error
# ---------------------------------------------------------------------------


def test_sup_density_error_examples():
    grid = density_grid()
    assert sup_density_error(semicircle_pdf, grid) == 0.0
    assert sup_density_error(lambda x: np.zeros_like(np.asarray(x)), grid) == pytest.approx(
        1.0 / math.pi, abs=1e-14
    )
    assert sup_density_error(lambda x: semicircle_pdf(x) + 0.01, grid) == pytest.approx(
        0.01, abs=1e-12
    )


def test_sup_density_error_grid_validation():
    with pytest.raises(DomainError):
        sup_density_error(semicircle_pdf, np.linspace(-3.0, 3.0, 601))  # spills outside
    with pytest.raises(DomainError):
        sup_density_error(semicircle_pdf, np.linspace(-2.0, 2.0, 100))  # too coarse
    with pytest.raises(DomainError):
        sup_density_error(semicircle_pdf, np.linspace(-1.0, 2.0, 401))  # does not cover


# ---------------------------------------------------------------------------
# proof-step inequalities
# ---------------------------------------------------------------------------


def test_levy_cube_identical_matrices():
    m = random_symmetric(8, seed=0)
    res = levy_cube_trace_bound(m, m)
    assert res.lhs == 0.0
    assert res.rhs == 0.0
    assert res.holds


def test_levy_cube_diagonal_shift():
    m = random_symmetric(10, seed=1)
    shifted = SymmetricMatrix(m.entries + 0.1 * np.eye(10))
    res = levy_cube_trace_bound(m, shifted)
    assert res.rhs == pytest.approx(0.01, abs=1e-12)
    assert res.lhs <= 0.001 + 1e-6
    assert res.holds


def test_levy_cube_random_pairs():
    for seed in range(20):
        n = 5 + (seed * 7) % 26
        a = random_symmetric(n, seed=2 * seed)
        b = random_symmetric(n, seed=2 * seed + 1)
        assert levy_cube_trace_bound(a, b).holds


def test_rank_inequality_identical():
    m = random_symmetric(6, seed=3)
    res = rank_inequality_check(m, m, 0)
    assert res.sup_diff == 0.0
    assert res.bound == 0.0
    assert res.holds


def test_rank_inequality_one_diagonal_entry():
    for seed in range(10):
        m = random_symmetric(10, seed=50 + seed)
        changed = m.entries.copy()
        changed[3, 3] += 1.7
        res = rank_inequality_check(m, SymmetricMatrix(changed), 1)
        assert res.holds
        assert res.sup_diff <= 0.1 + 1e-10


def test_rank_inequality_zeroed_row_and_column():
    for seed in range(10):
        m = random_symmetric(20, seed=80 + seed)
        cut = m.entries.copy()
        cut[5, :] = 0.0
        cut[:, 5] = 0.0
        res = rank_inequality_check(m, SymmetricMatrix(cut), 2)
        assert res.holds
        assert res.sup_diff <= 0.1 + 1e-10


def test_inequalities_reject_size_mismatch():
    a = random_symmetric(5, seed=0)
    b = random_symmetric(6, seed=0)
    with pytest.raises(DomainError):
        levy_cube_trace_bound(a, b)
    with pytest.raises(DomainError):
        rank_inequality_check(a, b, 1)


def test_esd_pair_distance_matches_direct_count():
    # step-vs-step sup equals the max count discrepancy over all jumps
    a = random_symmetric(7, seed=5)
    b = random_symmetric(7, seed=6)
    sa = symmetric_eigenvalues(a).eigenvalues
    sb = symmetric_eigenvalues(b).eigenvalues
    res = rank_inequality_check(a, b, 7)
    pts = np.concatenate([sa, sb])
    pts = np.concatenate([pts, np.nextafter(pts, -np.inf)])
    direct = np.max(
        np.abs(
            np.searchsorted(sa, pts, side="right") / 7.0
            - np.searchsorted(sb, pts, side="right") / 7.0
        )
    )
    assert res.sup_diff == pytest.approx(direct, abs=1e-14)
