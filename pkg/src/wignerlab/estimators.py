"""Kernel estimators of the semicircle density and distribution.

Given a spectrum mu_1..mu_p and a bandwidth h, the density estimate at x
is (1/(p*h)) * sum K((x - mu_i)/h) and its distribution counterpart is
(1/p) * sum Kcdf((x - mu_i)/h): the kernel's exact antiderivative, not a
quadrature of the density.  The empirical spectral distribution and the
semicircle reference curves live here too, so every curve an experiment
emits comes from one module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, special

from .eigen import Spectrum
from .errors import ConfigurationError, DomainError

CURVE_KINDS = ("kde", "kcdf", "esd", "semicircle_pdf", "semicircle_cdf")

_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class KernelSpec:
    """A kernel K with its exact antiderivative.

    satisfies_a26: K >= 0 and integrates to 1.
    satisfies_a27: K' is absolutely integrable (needed only for the
    density consistency statement, not for distribution estimates).
    """

    name: str
    pdf: Callable[[np.ndarray], np.ndarray]
    cdf: Callable[[np.ndarray], np.ndarray]
    satisfies_a26: bool = True
    satisfies_a27: bool = True


def _gaussian_pdf(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / _SQRT_2PI


def _gaussian_cdf(x):
    return special.ndtr(np.asarray(x, dtype=float))


def _cauchy_pdf(x):
    x = np.asarray(x, dtype=float)
    return 1.0 / (math.pi * (1.0 + x * x))


def _cauchy_cdf(x):
    x = np.asarray(x, dtype=float)
    return 0.5 + np.arctan(x) / math.pi


_KERNELS: dict[str, KernelSpec] = {
    "gaussian": KernelSpec("gaussian", _gaussian_pdf, _gaussian_cdf),
    "cauchy": KernelSpec("cauchy", _cauchy_pdf, _cauchy_cdf),
}


def get_kernel(name: str) -> KernelSpec:
    try:
        return _KERNELS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown kernel {name!r}; choose one of {', '.join(sorted(_KERNELS))}"
        ) from None


def register_kernel(spec: KernelSpec) -> KernelSpec:
    """Register a third-party kernel after checking it is a density.

    The pdf must be nonnegative and integrate to 1 within 1e-8, and the
    cdf must match the pdf's mass at both ends; otherwise the kernel is
    rejected.
    """
    total, _ = integrate.quad(lambda t: float(spec.pdf(t)), -np.inf, np.inf, limit=200)
    if abs(total - 1.0) > 1e-8:
        raise ConfigurationError(f"kernel {spec.name!r} integrates to {total}, not 1")
    probe = np.linspace(-50.0, 50.0, 2001)
    pdf_vals = np.asarray(spec.pdf(probe), dtype=float)
    if np.any(pdf_vals < 0.0):
        raise ConfigurationError(f"kernel {spec.name!r} takes negative values")
    cdf_vals = np.asarray(spec.cdf(probe), dtype=float)
    if np.any(np.diff(cdf_vals) < -1e-12):
        raise ConfigurationError(f"kernel {spec.name!r} cdf is not nondecreasing")
    if abs(float(spec.cdf(-1e9))) > 1e-6 or abs(float(spec.cdf(1e9)) - 1.0) > 1e-6:
        raise ConfigurationError(f"kernel {spec.name!r} cdf limits are not 0 and 1")
    _KERNELS[spec.name] = spec
    return spec


def bandwidth_default(n: int) -> float:
    """The n^(-2/5) bandwidth used throughout the simulation study."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    return float(n) ** -0.4


def _check_h(h: float) -> None:
    if not h > 0.0:
        raise DomainError(f"bandwidth h must be positive, got {h}")


def _check_spectrum(spec: Spectrum) -> None:
    if len(spec) == 0:
        raise DomainError("spectrum is empty")


def kde_at(spec: Spectrum, kernel: KernelSpec, h: float, x):
    """Kernel density estimate at x (scalar or array); exact sum over all
    eigenvalues, no binning."""
    _check_h(h)
    _check_spectrum(spec)
    xs = np.asarray(x, dtype=float)
    t = (xs[..., None] - spec.eigenvalues) / h
    vals = np.asarray(kernel.pdf(t)).sum(axis=-1) / (len(spec) * h)
    return float(vals) if xs.ndim == 0 else vals


def kcdf_at(spec: Spectrum, kernel: KernelSpec, h: float, x):
    """Kernel distribution estimate at x: the exact antiderivative of
    kde_at, averaged over eigenvalues."""
    _check_h(h)
    _check_spectrum(spec)
    xs = np.asarray(x, dtype=float)
    t = (xs[..., None] - spec.eigenvalues) / h
    vals = np.asarray(kernel.cdf(t)).sum(axis=-1) / len(spec)
    return float(vals) if xs.ndim == 0 else vals


def esd_at(spec: Spectrum, x):
    """Empirical spectral distribution: fraction of eigenvalues <= x."""
    _check_spectrum(spec)
    xs = np.asarray(x, dtype=float)
    vals = np.searchsorted(spec.eigenvalues, xs, side="right") / len(spec)
    return float(vals) if xs.ndim == 0 else vals


def esd_cdf(spec: Spectrum) -> Callable:
    """The ESD as a standalone cdf callable carrying its jump points."""
    _check_spectrum(spec)

    def cdf(x):
        return esd_at(spec, x)

    cdf.jump_points = spec.eigenvalues
    return cdf


def semicircle_pdf(x):
    """sqrt(4 - x^2) / (2 pi) on [-2, 2], zero outside."""
    xs = np.asarray(x, dtype=float)
    vals = np.where(np.abs(xs) <= 2.0, np.sqrt(np.maximum(4.0 - xs * xs, 0.0)) / (2.0 * math.pi), 0.0)
    return float(vals) if xs.ndim == 0 else vals


def semicircle_cdf(x):
    """Closed form 1/2 + x*sqrt(4-x^2)/(4 pi) + arcsin(x/2)/pi on [-2, 2]."""
    xs = np.asarray(x, dtype=float)
    clipped = np.clip(xs, -2.0, 2.0)
    vals = 0.5 + clipped * np.sqrt(np.maximum(4.0 - clipped * clipped, 0.0)) / (4.0 * math.pi)
    vals = vals + np.arcsin(clipped / 2.0) / math.pi
    vals = np.where(xs <= -2.0, 0.0, np.where(xs >= 2.0, 1.0, vals))
    return float(vals) if xs.ndim == 0 else vals


@dataclass(frozen=True)
class CurveMeta:
    kind: str
    n: int | None = None
    h: float | None = None
    kernel: str | None = None
    seed: int | None = None


@dataclass
class EstimatorCurve:
    """A curve sampled on a strictly increasing grid, plus metadata."""

    grid: np.ndarray
    values: np.ndarray
    meta: CurveMeta

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float).ravel()
        self.values = np.asarray(self.values, dtype=float).ravel()
        if self.grid.size != self.values.size:
            raise DomainError("grid and values must have equal length")
        if self.grid.size > 1 and np.any(np.diff(self.grid) <= 0):
            raise DomainError("grid must be strictly increasing")
        if self.meta.kind not in CURVE_KINDS:
            raise DomainError(f"unknown curve kind {self.meta.kind!r}")
        if self.meta.kind in ("kcdf", "esd", "semicircle_cdf") and self.values.size:
            if np.any(self.values < -1e-12) or np.any(self.values > 1.0 + 1e-12):
                raise DomainError("cdf curve values must lie in [0, 1]")
            if np.any(np.diff(self.values) < -1e-12):
                raise DomainError("cdf curve values must be nondecreasing")
        if self.meta.kind in ("kde", "semicircle_pdf") and self.values.size:
            if np.any(self.values < 0.0):
                raise DomainError("density curve values must be nonnegative")

    def to_csv(self) -> str:
        m = self.meta
        lines = [f"# n={m.n}, h={m.h}, kernel={m.kernel}, seed={m.seed}, kind={m.kind}"]
        lines.append("x,value")
        lines.extend(f"{repr(x)},{repr(v)}" for x, v in zip(self.grid.tolist(), self.values.tolist()))
        return "\n".join(lines) + "\n"


def curve(
    kind: str,
    grid,
    spec: Spectrum | None = None,
    kernel: KernelSpec | None = None,
    h: float | None = None,
    seed: int | None = None,
) -> EstimatorCurve:
    """Evaluate one of the point operations over a whole grid."""
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size > 1 and np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be strictly increasing")
    if kind == "semicircle_pdf":
        values = semicircle_pdf(grid)
        meta = CurveMeta(kind)
    elif kind == "semicircle_cdf":
        values = semicircle_cdf(grid)
        meta = CurveMeta(kind)
    elif kind == "esd":
        if spec is None:
            raise DomainError("esd curve requires a spectrum")
        values = esd_at(spec, grid) if grid.size else np.empty(0)
        meta = CurveMeta(kind, n=spec.source_n, seed=seed)
    elif kind in ("kde", "kcdf"):
        if spec is None or kernel is None or h is None:
            raise DomainError(f"{kind} curve requires spectrum, kernel and h")
        point = kde_at if kind == "kde" else kcdf_at
        values = point(spec, kernel, h, grid) if grid.size else np.empty(0)
        meta = CurveMeta(kind, n=spec.source_n, h=h, kernel=kernel.name, seed=seed)
    else:
        raise DomainError(f"unknown curve kind {kind!r}")
    return EstimatorCurve(grid, values, meta)
