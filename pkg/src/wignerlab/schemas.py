"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class SpectrumRequest(BaseModel):
    dist: str = "standard_normal"
    n: int = Field(default=50, ge=2)
    seed: int = 0


class SpectrumResponse(BaseModel):
    name: str
    csv: str
    dist: str
    n: int
    seed: int
    b_n: float


class FigureRequest(BaseModel):
    fig: int = Field(ge=1, le=4)
    seed: int = 0


class FigureResponse(BaseModel):
    name: str
    csv: str
    fig: int
    dist: str
    seeds: dict[str, int]


class ConvergenceRequest(BaseModel):
    dist: str = "shifted_exponential"
    sizes: list[int] = Field(default=[50, 200, 800], min_length=1)
    kernel: str = "gaussian"
    bandwidth: Union[Literal["paper_default"], float] = "paper_default"
    grid_lo: float = -3.0
    grid_hi: float = 3.0
    grid_points: int = Field(default=601, ge=2)
    replicates: int = Field(default=20, ge=1)
    base_seed: int = 0


class ConvergenceRowModel(BaseModel):
    size: int
    replicate: str
    kolmogorov_kcdf: float
    kolmogorov_esd: float
    sup_density_error: float


class ConvergenceResponse(BaseModel):
    name: str
    csv: str
    rows: list[ConvergenceRowModel]


class IdentityCheckRequest(BaseModel):
    n: int = Field(default=50, ge=2)
    seed: int = 0
    dist: str = "standard_normal"
    eigenvalues: Optional[list[float]] = Field(default=None, min_length=2)


class IdentityCheckResponse(BaseModel):
    name: str
    csv: str
    max_abs_difference: float
    tolerance: float
    ok: bool
    n: int
    seed: int
    dist: str
