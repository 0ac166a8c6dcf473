"""The matrix reductions used to cut a heavy-tailed Wigner matrix down to
a bounded, centered, unit-variance one: diagonal removal, entry
truncation at b_n, and centering/normalization of the truncated law.
Each is exposed on its own so the spectral effect of every step can be
measured, plus a Monte Carlo diagnostic for the Lindeberg-type condition
that the final standardized entries must satisfy.
"""

from __future__ import annotations

import math

import numpy as np

from .ensembles import (
    EntryDistribution,
    SymmetricMatrix,
    _poisson_truncated_sum,
    sample_entries,
    scaling_constant,
    truncated_second_moment,
)
from .errors import DomainError


def zero_diagonal(m: SymmetricMatrix) -> SymmetricMatrix:
    """Copy of m with the diagonal set to zero."""
    out = np.array(m.entries, copy=True)
    np.fill_diagonal(out, 0.0)
    return SymmetricMatrix(out)


def truncate_entries(raw: SymmetricMatrix, b_n: float) -> SymmetricMatrix:
    """Map raw entries x to x*1{|x| <= b_n} / b_n."""
    if not b_n > 0.0:
        raise DomainError(f"b_n must be positive, got {b_n}")
    return SymmetricMatrix(_truncate_raw(raw.entries, b_n) / b_n)


def _truncate_raw(entries: np.ndarray, b_n: float) -> np.ndarray:
    return entries * (np.abs(entries) <= b_n)


def truncated_moments(dist: EntryDistribution, threshold: float) -> tuple[float, float]:
    """(mean, variance) of X*1{|X| <= threshold}, in closed form.

    The symmetric variants have truncated mean exactly 0; the shifted
    exponential uses the antiderivative -e^{-(t+1)}(t+1) of t e^{-(t+1)},
    and the shifted Poisson sums its atoms.
    """
    if threshold <= 0.0:
        raise DomainError(f"threshold must be positive, got {threshold}")
    v = dist.variant
    if v in ("standard_normal", "log_tail_heavy"):
        mean = 0.0
    elif v == "shifted_exponential":
        a = max(-1.0, -threshold)
        upper = -math.exp(-(threshold + 1.0)) * (threshold + 1.0)
        lower = -math.exp(-(a + 1.0)) * (a + 1.0)
        mean = upper - lower
    else:
        mean = _poisson_truncated_sum(threshold, power=1)
    second = truncated_second_moment(dist, threshold)
    variance = second - mean * mean
    if variance <= 0.0:
        raise DomainError(f"truncated variance is {variance} at threshold {threshold}")
    return mean, variance


def center_and_rescale(
    truncated_raw: SymmetricMatrix, dist: EntryDistribution, b_n: float, n: int
) -> SymmetricMatrix:
    """Map truncated raw entries y to (y - mu_t) / sqrt(n * var_t).

    mu_t and var_t are the population moments of X*1{|X| <= b_n}; the
    diagonal is left untouched (diagonal removal precedes this step).
    """
    mu_t, var_t = truncated_moments(dist, b_n)
    scale = math.sqrt(n * var_t)
    out = (truncated_raw.entries - mu_t) / scale
    np.fill_diagonal(out, np.diagonal(truncated_raw.entries))
    return SymmetricMatrix(out)


def reduction_chain(raw: SymmetricMatrix, dist: EntryDistribution, b_n: float) -> SymmetricMatrix:
    """zero_diagonal -> truncate at b_n -> center_and_rescale, composed on
    the raw (unscaled) entries."""
    n = raw.n
    step1 = zero_diagonal(raw)
    step2 = SymmetricMatrix(_truncate_raw(step1.entries, b_n))
    return center_and_rescale(step2, dist, b_n, n)


def lindeberg_diagnostic(
    dist: EntryDistribution, n: int, eta: float, mc_samples: int, seed: int
) -> float:
    """Monte Carlo estimate of E[Y^2 1{|Y| > eta*sqrt(n)}] where Y is the
    standardized truncated entry at level b_n.

    Along a ladder of growing n this must drain to 0 for every law in the
    domain of attraction of the normal; once eta*sqrt(n) exceeds the
    truncation bound the estimate is exactly 0.
    """
    if not eta > 0.0:
        raise DomainError(f"eta must be positive, got {eta}")
    if mc_samples < 10_000:
        raise DomainError(f"mc_samples must be >= 10000, got {mc_samples}")
    b_n = scaling_constant(dist, n).b_n
    mu_t, var_t = truncated_moments(dist, b_n)
    x = sample_entries(dist, mc_samples, seed)
    y = (_truncate_raw(x, b_n) - mu_t) / math.sqrt(var_t)
    tail = np.abs(y) > eta * math.sqrt(n)
    return float(np.mean(y * y * tail))
