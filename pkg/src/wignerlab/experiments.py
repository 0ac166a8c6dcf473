"""Experiment runners: seeded, pure, and returning CSV text documents.

Everything here is a deterministic function of its arguments; writing
files, exit codes and HTTP are left to the service and CLI layers.
Replicate r of a run always uses seed base_seed + r, and every emitted
CSV starts with a '# command=...' comment that is sufficient to re-run
it.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .eigen import Spectrum, symmetric_eigenvalues
from .ensembles import build_wigner, entry_distribution
from .errors import ConfigurationError
from .estimators import (
    bandwidth_default,
    esd_cdf,
    get_kernel,
    kcdf_at,
    kde_at,
    semicircle_cdf,
    semicircle_pdf,
)
from .metrics import density_grid, kolmogorov_distance, sup_density_error
from .transforms import cauchy_kernel_identity_check

IDENTITY_TOLERANCE = 1e-12

_FIGURE_DISTS = {1: "shifted_exponential", 2: "shifted_poisson", 3: "shifted_exponential", 4: "shifted_poisson"}


@dataclass(frozen=True)
class ExperimentConfig:
    """Settings for a convergence experiment (and defaults for figures)."""

    distribution: str = "shifted_exponential"
    sizes: tuple[int, ...] = (50, 200, 800)
    kernel: str = "gaussian"
    bandwidth: float | str = "paper_default"
    grid: tuple[float, float, int] = (-3.0, 3.0, 601)
    replicates: int = 20
    base_seed: int = 0
    out_dir: str = "."

    def __post_init__(self):
        if not self.sizes or any(n < 2 for n in self.sizes):
            raise ConfigurationError("sizes must be a nonempty list of integers >= 2")
        if self.replicates < 1:
            raise ConfigurationError("replicates must be >= 1")
        lo, hi, points = self.grid
        if not (lo < hi and points >= 2):
            raise ConfigurationError("grid must satisfy lo < hi and points >= 2")
        if isinstance(self.bandwidth, str) and self.bandwidth != "paper_default":
            raise ConfigurationError("bandwidth must be 'paper_default' or a positive number")
        if not isinstance(self.bandwidth, str) and not self.bandwidth > 0:
            raise ConfigurationError("fixed bandwidth must be positive")

    def bandwidth_for(self, n: int) -> float:
        if self.bandwidth == "paper_default":
            return bandwidth_default(n)
        return float(self.bandwidth)

    def grid_array(self) -> np.ndarray:
        lo, hi, points = self.grid
        return np.linspace(lo, hi, points)

    def grid_text(self) -> str:
        lo, hi, points = self.grid
        return f"{lo}:{hi}:{points}"


def parse_config_text(text: str) -> dict[str, str]:
    """Parse the flat key=value config format ('#' starts a comment)."""
    mapping: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigurationError(f"config line {lineno} is not key=value: {stripped!r}")
        key, _, value = stripped.partition("=")
        mapping[key.strip()] = value.strip()
    return mapping


def config_from_mapping(mapping: dict[str, str]) -> ExperimentConfig:
    """Build a typed config from string key=value pairs."""
    known = {
        "dist", "sizes", "kernel", "bandwidth", "grid", "replicates", "base_seed", "out",
    }
    unknown = set(mapping) - known
    if unknown:
        raise ConfigurationError(f"unknown config keys: {', '.join(sorted(unknown))}")
    kwargs = {}
    try:
        if "dist" in mapping:
            kwargs["distribution"] = mapping["dist"]
        if "sizes" in mapping:
            kwargs["sizes"] = tuple(int(s) for s in mapping["sizes"].split(",") if s.strip())
        if "kernel" in mapping:
            kwargs["kernel"] = mapping["kernel"]
        if "bandwidth" in mapping:
            raw = mapping["bandwidth"]
            kwargs["bandwidth"] = raw if raw == "paper_default" else float(raw)
        if "grid" in mapping:
            lo, hi, points = mapping["grid"].split(":")
            kwargs["grid"] = (float(lo), float(hi), int(points))
        if "replicates" in mapping:
            kwargs["replicates"] = int(mapping["replicates"])
        if "base_seed" in mapping:
            kwargs["base_seed"] = int(mapping["base_seed"])
        if "out" in mapping:
            kwargs["out_dir"] = mapping["out"]
    except ValueError as exc:
        raise ConfigurationError(f"bad config value: {exc}") from None
    return ExperimentConfig(**kwargs)


def _wigner_spectrum(dist_name: str, n: int, seed: int) -> tuple[Spectrum, float]:
    dist = entry_distribution(dist_name)
    matrix, sc = build_wigner(dist, n, seed)
    return symmetric_eigenvalues(matrix, scaling_used=sc.b_n), sc.b_n


@dataclass(frozen=True)
class SpectrumRun:
    name: str
    csv: str
    dist: str
    n: int
    seed: int
    b_n: float
    eigenvalues: tuple[float, ...]


def run_spectrum(dist_name: str, n: int, seed: int) -> SpectrumRun:
    """Build W_n, solve it and render the sorted eigenvalue CSV."""
    spec, b_n = _wigner_spectrum(dist_name, n, seed)
    header = {"command": "spectrum", "dist": dist_name, "n": n, "seed": seed, "b_n": repr(b_n)}
    return SpectrumRun(
        name=f"spectrum_{dist_name}_n{n}_seed{seed}.csv",
        csv=spec.to_csv(header),
        dist=dist_name,
        n=n,
        seed=seed,
        b_n=b_n,
        eigenvalues=tuple(spec.eigenvalues.tolist()),
    )


@dataclass(frozen=True)
class FigureRun:
    name: str
    csv: str
    fig: int
    dist: str
    seeds: dict[str, int] = field(default_factory=dict)


def run_figure(fig: int, seed: int = 0) -> FigureRun:
    """Reproduce the data behind one of the four simulation figures.

    Figures 1 and 2: density estimates at n = 50 and n = 800 against the
    semicircle density (exponential resp. Poisson entries).  Figures 3
    and 4: distribution estimate vs ESD vs semicircle cdf at n = 50.
    Gaussian kernel, h = n^(-2/5), grid [-3, 3] at 601 points.
    """
    if fig not in _FIGURE_DISTS:
        raise ConfigurationError(f"figure id must be 1, 2, 3 or 4, got {fig}")
    dist_name = _FIGURE_DISTS[fig]
    kernel = get_kernel("gaussian")
    grid = np.linspace(-3.0, 3.0, 601)
    grid_text = "-3.0:3.0:601"
    if fig in (1, 2):
        spec50, _ = _wigner_spectrum(dist_name, 50, seed)
        spec800, _ = _wigner_spectrum(dist_name, 800, seed + 1)
        cols = {
            "kde_n50": kde_at(spec50, kernel, bandwidth_default(50), grid),
            "kde_n800": kde_at(spec800, kernel, bandwidth_default(800), grid),
            "semicircle_pdf": semicircle_pdf(grid),
        }
        seeds = {"n50": seed, "n800": seed + 1}
        header = (
            f"# command=figure fig={fig} dist={dist_name} kernel=gaussian bandwidth=paper_default"
            f" seed_n50={seed} seed_n800={seed + 1} grid={grid_text}"
        )
    else:
        spec50, _ = _wigner_spectrum(dist_name, 50, seed)
        cols = {
            "kcdf_n50": kcdf_at(spec50, kernel, bandwidth_default(50), grid),
            "esd_n50": esd_cdf(spec50)(grid),
            "semicircle_cdf": semicircle_cdf(grid),
        }
        seeds = {"n50": seed}
        header = (
            f"# command=figure fig={fig} dist={dist_name} kernel=gaussian bandwidth=paper_default"
            f" seed_n50={seed} grid={grid_text}"
        )
    lines = [header, "x," + ",".join(cols)]
    for i, x in enumerate(grid.tolist()):
        lines.append(repr(x) + "," + ",".join(repr(float(v[i])) for v in cols.values()))
    return FigureRun(
        name=f"figure{fig}_{dist_name}_seed{seed}.csv",
        csv="\n".join(lines) + "\n",
        fig=fig,
        dist=dist_name,
        seeds=seeds,
    )


@dataclass(frozen=True)
class ConvergenceRow:
    size: int
    replicate: str  # "0", "1", ... or "median"
    kolmogorov_kcdf: float
    kolmogorov_esd: float
    sup_density_error: float


@dataclass(frozen=True)
class ConvergenceRun:
    name: str
    csv: str
    rows: tuple[ConvergenceRow, ...]


def run_convergence(config: ExperimentConfig) -> ConvergenceRun:
    """Distances to the semicircle law per (size, replicate), plus
    per-size medians, as one CSV."""
    kernel = get_kernel(config.kernel)
    grid = config.grid_array()
    dgrid = density_grid()
    rows: list[ConvergenceRow] = []
    for n in config.sizes:
        h = config.bandwidth_for(n)
        block: list[ConvergenceRow] = []
        for r in range(config.replicates):
            spec, _ = _wigner_spectrum(config.distribution, n, config.base_seed + r)
            k_kcdf = kolmogorov_distance(
                lambda x: kcdf_at(spec, kernel, h, x), semicircle_cdf, grid
            )
            k_esd = kolmogorov_distance(esd_cdf(spec), semicircle_cdf, spec)
            sup_err = sup_density_error(lambda x: kde_at(spec, kernel, h, x), dgrid)
            block.append(ConvergenceRow(n, str(r), k_kcdf, k_esd, sup_err))
        rows.extend(block)
        rows.append(
            ConvergenceRow(
                n,
                "median",
                float(np.median([b.kolmogorov_kcdf for b in block])),
                float(np.median([b.kolmogorov_esd for b in block])),
                float(np.median([b.sup_density_error for b in block])),
            )
        )
    header = (
        f"# command=convergence dist={config.distribution}"
        f" sizes={','.join(str(n) for n in config.sizes)} kernel={config.kernel}"
        f" bandwidth={config.bandwidth} grid={config.grid_text()}"
        f" replicates={config.replicates} base_seed={config.base_seed}"
    )
    lines = [header, "size,replicate,kolmogorov_kcdf,kolmogorov_esd,sup_density_error"]
    for row in rows:
        lines.append(
            f"{row.size},{row.replicate},{repr(row.kolmogorov_kcdf)},"
            f"{repr(row.kolmogorov_esd)},{repr(row.sup_density_error)}"
        )
    return ConvergenceRun(
        name=f"convergence_{config.distribution}_seed{config.base_seed}.csv",
        csv="\n".join(lines) + "\n",
        rows=tuple(rows),
    )


@dataclass(frozen=True)
class IdentityRun:
    name: str
    csv: str
    max_abs_difference: float
    tolerance: float
    ok: bool
    n: int
    seed: int
    dist: str


def run_identity_check(
    n: int = 50,
    seed: int = 0,
    dist_name: str = "standard_normal",
    eigenvalues=None,
) -> IdentityRun:
    """Sweep the Cauchy-kernel/Stieltjes identity over a 101-point grid.

    With `eigenvalues` given, the check runs on that spectrum instead of
    building a matrix.
    """
    if eigenvalues is not None:
        eigs = np.sort(np.asarray(eigenvalues, dtype=float))
        spec = Spectrum(eigs, eigs.size)
        n = eigs.size
        source = "provided"
    else:
        spec, _ = _wigner_spectrum(dist_name, n, seed)
        source = dist_name
    h = bandwidth_default(n)
    grid = np.linspace(-3.0, 3.0, 101)
    lines = [
        f"# command=identity-check dist={source} n={n} seed={seed} h={repr(h)}"
        f" grid=-3.0:3.0:101 tolerance={IDENTITY_TOLERANCE}",
        "x,kde_cauchy,im_stieltjes_over_pi,abs_difference",
    ]
    worst = 0.0
    for x in grid.tolist():
        check = cauchy_kernel_identity_check(spec, h, x)
        worst = max(worst, check.abs_difference)
        lines.append(
            f"{repr(x)},{repr(check.kde_value)},{repr(check.transform_value)},{repr(check.abs_difference)}"
        )
    return IdentityRun(
        name=f"identity_check_{source}_n{n}_seed{seed}.csv",
        csv="\n".join(lines) + "\n",
        max_abs_difference=worst,
        tolerance=IDENTITY_TOLERANCE,
        ok=worst <= IDENTITY_TOLERANCE,
        n=n,
        seed=seed,
        dist=source,
    )


def apply_overrides(config: ExperimentConfig, **overrides) -> ExperimentConfig:
    """Replace config fields with any non-None overrides."""
    updates = {k: v for k, v in overrides.items() if v is not None}
    return replace(config, **updates) if updates else config
