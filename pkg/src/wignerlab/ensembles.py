"""Entry distributions, scaling constants and Wigner matrix assembly.

A Wigner matrix here is ``b_n^{-1} (X_ij)`` with i.i.d. mean-zero entries
on and above the diagonal, mirrored below.  Four entry laws are built in;
three have unit variance and one (``log_tail_heavy``) has infinite
variance but a slowly varying truncated second moment, which puts it in
the domain of attraction of the normal law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import ConfigurationError, DomainError, NumericError

VARIANTS = ("shifted_exponential", "shifted_poisson", "standard_normal", "log_tail_heavy")

# inf{x > 0 : l(x) > 0} per variant; only mass away from 0 counts.
_L_SUPPORT_START = {
    "shifted_exponential": 0.0,
    "standard_normal": 0.0,
    "shifted_poisson": 1.0,
    "log_tail_heavy": 1.0,
}

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class EntryDistribution:
    """A supported mean-zero entry law.

    Variants:
      shifted_exponential  X = E - 1, E ~ Exp(1)           (variance 1)
      shifted_poisson      X = P - 1, P ~ Poisson(1)       (variance 1)
      standard_normal      X ~ N(0, 1)                     (variance 1)
      log_tail_heavy       symmetric density |t|^-3, |t|>=1 (infinite
                           variance, truncated second moment 2*ln x)
    """

    variant: str
    params: dict = field(default_factory=dict)
    has_finite_variance: bool = True
    analytic_variance: float | None = 1.0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigurationError(
                f"unknown entry distribution {self.variant!r}; choose one of {', '.join(VARIANTS)}"
            )
        if self.has_finite_variance != (self.analytic_variance is not None):
            raise ConfigurationError("has_finite_variance must match presence of analytic_variance")

    @property
    def l_support_start(self) -> float:
        """inf{x > 0 : l(x) > 0} for this variant."""
        return _L_SUPPORT_START[self.variant]


@dataclass(frozen=True)
class ScalingConstant:
    """The normalization b_n applied to an n x n matrix of raw entries."""

    b_n: float
    n: int
    mode: str  # "finite_variance" or "infinite_variance"


@dataclass
class SymmetricMatrix:
    """Dense real symmetric matrix; symmetry is enforced bit-exactly."""

    entries: np.ndarray

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=float)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise DomainError(f"expected a square matrix, got shape {self.entries.shape}")
        if not np.array_equal(self.entries, self.entries.T):
            raise DomainError("matrix is not bit-exactly symmetric")

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def to_csv(self) -> str:
        """Full dense CSV, one matrix row per line."""
        lines = [",".join(repr(v) for v in row) for row in self.entries.tolist()]
        return "\n".join(lines) + "\n"


def entry_distribution(name: str) -> EntryDistribution:
    """Look up a built-in entry distribution by name."""
    if name == "log_tail_heavy":
        return EntryDistribution(name, {}, has_finite_variance=False, analytic_variance=None)
    return EntryDistribution(name)  # raises ConfigurationError for unknown names


def sample_entries(dist: EntryDistribution, count: int, seed: int) -> np.ndarray:
    """Draw `count` i.i.d. entries; deterministic for a given seed.

    log_tail_heavy draws a Pareto(2) magnitude on [1, inf) and an
    independent sign, which realizes the density |t|^-3 on |t| >= 1.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    v = dist.variant
    if v == "shifted_exponential":
        return rng.exponential(1.0, count) - 1.0
    if v == "shifted_poisson":
        return rng.poisson(1.0, count) - 1.0
    if v == "standard_normal":
        return rng.standard_normal(count)
    # log_tail_heavy: magnitude first, then signs, in this fixed order
    magnitude = 1.0 + rng.pareto(2.0, count)
    sign = rng.integers(0, 2, count) * 2.0 - 1.0
    return sign * magnitude


def truncated_second_moment(dist: EntryDistribution, x: float) -> float:
    """l(x) = E[X^2 1{|X| <= x}], in closed form per variant."""
    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    v = dist.variant
    if v == "log_tail_heavy":
        # integral of t^2 |t|^-3 over 1 <= |t| <= x
        return 2.0 * math.log(x) if x >= 1.0 else 0.0
    if v == "standard_normal":
        return float(special.erf(x / math.sqrt(2.0)) - 2.0 * x * math.exp(-x * x / 2.0) / _SQRT_2PI)
    if v == "shifted_exponential":
        # density e^{-(t+1)} on [-1, inf); antiderivative of t^2 e^{-(t+1)}
        # is -e^{-(t+1)} (t^2 + 2t + 2)
        a = max(-1.0, -x)
        upper = -math.exp(-(x + 1.0)) * (x * x + 2.0 * x + 2.0)
        lower = -math.exp(-(a + 1.0)) * (a * a + 2.0 * a + 2.0)
        return upper - lower
    return _poisson_truncated_sum(x, power=2)


def tail_probability(dist: EntryDistribution, x: float) -> float:
    """P(|X| > x) for x > 0."""
    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    v = dist.variant
    if v == "log_tail_heavy":
        return min(1.0, x ** -2.0)
    if v == "standard_normal":
        return float(special.erfc(x / math.sqrt(2.0)))
    if v == "shifted_exponential":
        right = math.exp(-(x + 1.0))
        left = 1.0 - math.exp(-(1.0 - x)) if x < 1.0 else 0.0
        return right + left
    # shifted_poisson: complement of the atoms with |k - 1| <= x
    inside = 0.0
    k = 0
    pk = math.exp(-1.0)
    while k - 1.0 <= x:
        if abs(k - 1.0) <= x:
            inside += pk
        k += 1
        pk /= k
    return max(0.0, 1.0 - inside)


def _poisson_truncated_sum(x: float, power: int) -> float:
    """sum over atoms k-1 of (k-1)^power e^{-1}/k! restricted to |k-1| <= x."""
    total = 0.0
    k = 0
    pk = math.exp(-1.0)
    while k - 1.0 <= x:
        v = k - 1.0
        term = (v ** power) * pk
        if abs(v) <= x:
            total += term
        if k > 2 and abs(term) < 1e-16:
            break
        k += 1
        pk /= k
    return total


def scaling_constant(dist: EntryDistribution, n: int) -> ScalingConstant:
    """b_n: sqrt(n * variance), or the infimum solution of n*l(x) <= x^2.

    In the infinite-variance case the infimum is found by bracketing
    bisection on x^2 - n*l(x) over [b+1, sqrt(n)*ln(n) + 10], to relative
    tolerance 1e-10.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if dist.has_finite_variance:
        return ScalingConstant(math.sqrt(n * dist.analytic_variance), n, "finite_variance")

    def gap(x: float) -> float:
        return x * x - n * truncated_second_moment(dist, x)

    lo = dist.l_support_start + 1.0
    if gap(lo) >= 0.0:
        return ScalingConstant(lo, n, "infinite_variance")
    hi = math.sqrt(n) * math.log(n) + 10.0
    if gap(hi) <= 0.0:
        raise NumericError(
            f"b_n root not bracketed on [{lo}, {hi}]: gap({lo})={gap(lo):.3g}, gap({hi})={gap(hi):.3g}"
        )
    while hi - lo > 1e-10 * max(1.0, abs(hi)):
        mid = 0.5 * (lo + hi)
        if gap(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return ScalingConstant(0.5 * (lo + hi), n, "infinite_variance")


def build_wigner(dist: EntryDistribution, n: int, seed: int) -> tuple[SymmetricMatrix, ScalingConstant]:
    """Assemble W_n = (X_ij) / b_n from n(n+1)/2 draws.

    Draws fill the upper triangle (diagonal included) in row-major order
    and are mirrored below, so a (dist, n, seed) triple reproduces the
    matrix bit for bit.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    sc = scaling_constant(dist, n)
    draws = sample_entries(dist, n * (n + 1) // 2, seed)
    m = np.zeros((n, n))
    rows, cols = np.triu_indices(n)
    m[rows, cols] = draws
    m[cols, rows] = draws
    m /= sc.b_n
    return SymmetricMatrix(m), sc


def build_raw_entries(dist: EntryDistribution, n: int, seed: int) -> SymmetricMatrix:
    """The unscaled symmetric matrix (X_ij) behind build_wigner.

    Same draw order and seed contract as build_wigner; used by the
    truncation/centering reductions, which operate on raw entries.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    draws = sample_entries(dist, n * (n + 1) // 2, seed)
    m = np.zeros((n, n))
    rows, cols = np.triu_indices(n)
    m[rows, cols] = draws
    m[cols, rows] = draws
    return SymmetricMatrix(m)


def tail_diagnostic(dist: EntryDistribution, x_grid) -> np.ndarray:
    """Table of (x, x^2 * P(|X| > x) / l(x)) along x_grid.

    For laws with slowly varying l the ratio column drains to 0, which is
    the tail condition separating this regime from alpha-stable limits.
    """
    xs = np.asarray(x_grid, dtype=float)
    if xs.size == 0:
        raise DomainError("x_grid must be nonempty")
    out = np.empty((xs.size, 2))
    for i, x in enumerate(xs):
        if x <= dist.l_support_start:
            raise DomainError(f"x must exceed {dist.l_support_start} for {dist.variant}, got {x}")
        l = truncated_second_moment(dist, x)
        if l <= 0.0:
            raise DomainError(f"l(x) = 0 at x = {x}")
        out[i, 0] = x
        out[i, 1] = x * x * tail_probability(dist, x) / l
    return out
