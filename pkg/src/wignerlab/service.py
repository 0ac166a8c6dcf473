"""FastAPI service exposing the experiment runners.

Every endpoint is a pure function of the request body, so responses are
bit-reproducible and safe to cache.  Domain and configuration problems
map to 400 with category "usage"; numerical failures map to 500 with
category "numeric".
"""

from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__, experiments
from .errors import ConfigurationError, DomainError, NumericError
from .schemas import (
    ConvergenceRequest,
    ConvergenceResponse,
    FigureRequest,
    FigureResponse,
    HealthResponse,
    IdentityCheckRequest,
    IdentityCheckResponse,
    SpectrumRequest,
    SpectrumResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="wignerlab", version=__version__)

    @app.exception_handler(ConfigurationError)
    @app.exception_handler(DomainError)
    async def _usage_error(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc), "category": "usage"})

    @app.exception_handler(NumericError)
    async def _numeric_error(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(status_code=500, content={"detail": str(exc), "category": "numeric"})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/spectrum", response_model=SpectrumResponse)
    def spectrum(req: SpectrumRequest) -> SpectrumResponse:
        run = experiments.run_spectrum(req.dist, req.n, req.seed)
        return SpectrumResponse(
            name=run.name, csv=run.csv, dist=run.dist, n=run.n, seed=run.seed, b_n=run.b_n
        )

    @app.post("/figure", response_model=FigureResponse)
    def figure(req: FigureRequest) -> FigureResponse:
        run = experiments.run_figure(req.fig, req.seed)
        return FigureResponse(name=run.name, csv=run.csv, fig=run.fig, dist=run.dist, seeds=run.seeds)

    @app.post("/convergence", response_model=ConvergenceResponse)
    def convergence(req: ConvergenceRequest) -> ConvergenceResponse:
        config = experiments.ExperimentConfig(
            distribution=req.dist,
            sizes=tuple(req.sizes),
            kernel=req.kernel,
            bandwidth=req.bandwidth,
            grid=(req.grid_lo, req.grid_hi, req.grid_points),
            replicates=req.replicates,
            base_seed=req.base_seed,
        )
        run = experiments.run_convergence(config)
        return ConvergenceResponse(name=run.name, csv=run.csv, rows=[asdict(r) for r in run.rows])

    @app.post("/identity-check", response_model=IdentityCheckResponse)
    def identity_check(req: IdentityCheckRequest) -> IdentityCheckResponse:
        run = experiments.run_identity_check(req.n, req.seed, req.dist, req.eigenvalues)
        return IdentityCheckResponse(**asdict(run))

    return app


app = create_app()
