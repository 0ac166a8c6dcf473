"""Distances between distribution functions, and the two matrix
inequalities (Levy-cube trace bound, rank inequality) used to argue that
the reduction steps are spectrally negligible.

Kolmogorov distance against a step function is evaluated exactly at the
jump points and their left limits; only the smooth-vs-smooth case falls
back to a grid plus golden-section refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .eigen import Spectrum, symmetric_eigenvalues
from .ensembles import SymmetricMatrix
from .errors import DomainError
from .estimators import esd_cdf, semicircle_pdf

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _with_left_limits(points: np.ndarray) -> np.ndarray:
    pts = np.unique(np.asarray(points, dtype=float))
    return np.union1d(pts, np.nextafter(pts, -np.inf))


def _eval(f: Callable, xs: np.ndarray) -> np.ndarray:
    vals = f(xs)
    if np.ndim(vals) == 0:  # scalar-only callable
        vals = np.array([f(float(x)) for x in xs], dtype=float)
    return np.asarray(vals, dtype=float)


def _golden_refine(objective: Callable[[float], float], lo: float, hi: float) -> float:
    """Golden-section maximization of a locally unimodal objective."""
    a, b = float(lo), float(hi)
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = objective(c), objective(d)
    for _ in range(80):
        if b - a <= 1e-12 * max(1.0, abs(a), abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = objective(d)
    return max(fc, fd)


def kolmogorov_distance(f: Callable, g: Callable, at) -> float:
    """sup over x of |f(x) - g(x)|.

    `at` supplies the candidate points: a Spectrum (or plain array of
    jump points) when a step function is involved, in which case the sup
    is attained at a jump or its left limit and is computed exactly; or a
    dense grid for two smooth cdfs, where the coarse maximum is refined
    by golden section between its neighbors.
    """
    if isinstance(at, Spectrum):
        xs = _with_left_limits(at.eigenvalues)
        if xs.size == 0:
            raise DomainError("empty spectrum")
        return float(np.max(np.abs(_eval(f, xs) - _eval(g, xs))))
    grid = np.asarray(at, dtype=float).ravel()
    if grid.size == 0:
        raise DomainError("empty candidate grid")
    xs = _with_left_limits(grid)
    diffs = np.abs(_eval(f, xs) - _eval(g, xs))
    best = float(np.max(diffs))
    if grid.size < 3:
        return best
    sorted_grid = np.sort(grid)
    i = int(np.argmin(np.abs(sorted_grid - xs[int(np.argmax(diffs))])))
    lo = sorted_grid[max(i - 1, 0)]
    hi = sorted_grid[min(i + 1, sorted_grid.size - 1)]
    refined = _golden_refine(lambda x: abs(float(f(x)) - float(g(x))), lo, hi)
    return max(best, refined)


def _collect_jump_points(*fns) -> np.ndarray:
    pts = [np.asarray(fn.jump_points, dtype=float) for fn in fns if hasattr(fn, "jump_points")]
    return np.concatenate(pts) if pts else np.empty(0)


def levy_distance(f: Callable, g: Callable, tolerance: float = 1e-6, points=None) -> float:
    """Levy metric inf{eps > 0 : f(x-eps)-eps <= g(x) <= f(x+eps)+eps for all x}.

    The universal quantifier is checked on the cdfs' jump points (plus a
    dense grid spanning them), shifted by +-eps and widened by left
    limits; eps is then located by bisection to the given tolerance.
    """
    if not tolerance > 0.0:
        raise DomainError("tolerance must be positive")
    base = np.asarray(points, dtype=float).ravel() if points is not None else np.empty(0)
    jumps = _collect_jump_points(f, g)
    base = np.concatenate([base, jumps])
    if base.size == 0:
        raise DomainError("no probe points: pass `points` or cdfs with .jump_points")
    span = base.max() - base.min()
    pad = 0.1 * span + 1.0
    grid = np.linspace(base.min() - pad, base.max() + pad, 512)
    base = np.unique(np.concatenate([base, grid]))

    for fn in (f, g):
        vals = _eval(fn, base)
        if np.any(np.diff(vals) < -1e-12):
            raise DomainError("non-monotone input detected: not a cdf")

    def feasible(eps: float) -> bool:
        xs = _with_left_limits(np.concatenate([base, base - eps, base + eps]))
        gx = _eval(g, xs)
        if np.any(_eval(f, xs - eps) - eps > gx):
            return False
        if np.any(gx > _eval(f, xs + eps) + eps):
            return False
        return True

    if feasible(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def sup_density_error(f_est: Callable, grid) -> float:
    """max over the grid of |f_est(x) - semicircle_pdf(x)| on [-2, 2]."""
    xs = np.asarray(grid, dtype=float).ravel()
    if xs.size < 2:
        raise DomainError("grid must contain at least two points")
    if xs.min() < -2.0 - 1e-9 or xs.max() > 2.0 + 1e-9:
        raise DomainError("grid must lie within [-2, 2]")
    if xs.min() > -2.0 + 1e-9 or xs.max() < 2.0 - 1e-9 or np.max(np.diff(np.sort(xs))) > 0.01 + 1e-12:
        raise DomainError("grid must cover [-2, 2] with spacing <= 0.01")
    return float(np.max(np.abs(_eval(f_est, xs) - semicircle_pdf(xs))))


def density_grid(points: int = 401) -> np.ndarray:
    """A [-2, 2] grid fine enough for sup_density_error."""
    return np.linspace(-2.0, 2.0, points)


def _pair_esds(a: SymmetricMatrix, b: SymmetricMatrix):
    if a.n != b.n:
        raise DomainError(f"size mismatch: {a.n} vs {b.n}")
    return symmetric_eigenvalues(a), symmetric_eigenvalues(b)


@dataclass(frozen=True)
class LevyCubeTraceBound:
    lhs: float  # L^3 of the two ESDs
    rhs: float  # tr((a-b)^2)/n
    holds: bool


def levy_cube_trace_bound(a: SymmetricMatrix, b: SymmetricMatrix) -> LevyCubeTraceBound:
    """Check L^3(ESD_a, ESD_b) <= tr((a-b)^2)/n on a concrete pair."""
    spec_a, spec_b = _pair_esds(a, b)
    diff = a.entries - b.entries
    rhs = float(np.sum(diff * diff)) / a.n
    points = np.concatenate([spec_a.eigenvalues, spec_b.eigenvalues])
    levy = levy_distance(esd_cdf(spec_a), esd_cdf(spec_b), tolerance=1e-5, points=points)
    lhs = levy ** 3
    return LevyCubeTraceBound(lhs, rhs, lhs <= rhs + 1e-4)


@dataclass(frozen=True)
class RankInequalityCheck:
    sup_diff: float  # Kolmogorov distance of the two ESDs
    bound: float  # rank_bound / n
    holds: bool


def rank_inequality_check(a: SymmetricMatrix, b: SymmetricMatrix, rank_bound: int) -> RankInequalityCheck:
    """Check sup|ESD_a - ESD_b| <= rank_bound/n, with rank_bound a
    caller-certified bound on rank(a - b)."""
    if rank_bound < 0:
        raise DomainError("rank_bound must be nonnegative")
    spec_a, spec_b = _pair_esds(a, b)
    points = Spectrum(
        np.sort(np.concatenate([spec_a.eigenvalues, spec_b.eigenvalues])),
        2 * a.n,
    )
    sup_diff = kolmogorov_distance(esd_cdf(spec_a), esd_cdf(spec_b), points)
    bound = rank_bound / a.n
    return RankInequalityCheck(sup_diff, bound, sup_diff <= bound + 1e-10)
