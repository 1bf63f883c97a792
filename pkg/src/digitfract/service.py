"""HTTP service: one endpoint per command, typed request bodies.

All computation is pure and stateless, so concurrent requests are safe;
the only shared mutable state (lazy segment tables) is lock-guarded.
Library errors surface as structured payloads:

    {"error": {"kind": ..., "message": ..., "precondition": ...}}

with status 422 for validation-class errors and 409 for budget, horizon
and run-not-found conditions.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, model_validator

from . import __version__, runner
from . import config as cfg
from .errors import ToolkitError, http_status_for
from .reports import Report

app = FastAPI(title="digitfract", version=__version__,
              description="Digit-restriction fractal toolkit")


@app.exception_handler(ToolkitError)
async def toolkit_error_handler(request: Request, exc: ToolkitError):
    return JSONResponse(status_code=http_status_for(exc.kind),
                        content={"error": exc.payload()})


class _Envelope(BaseModel):
    model_config = ConfigDict(extra="forbid")

    system: Optional[cfg.SystemSpec] = None
    positions: Optional[cfg.PositionsSpec] = None

    _needs_system = False

    @model_validator(mode="after")
    def _required_pieces(self):
        if self._needs_system and (self.system is None or self.positions is None):
            raise ValueError("this command requires `system` and `positions`")
        return self


class DimsRequest(_Envelope):
    _needs_system = True
    params: cfg.DimsParams = cfg.DimsParams()


class EnumerateRequest(_Envelope):
    _needs_system = True
    params: cfg.EnumerateParams


class RunsRequest(_Envelope):
    _needs_system = True
    params: cfg.RunsParams


class ApConstructRequest(_Envelope):
    _needs_system = True
    params: cfg.ApConstructParams


class ApSearchRequest(_Envelope):
    params: cfg.ApSearchParams


class ApLongestRequest(_Envelope):
    params: cfg.ApLongestParams


class FourierCoeffRequest(_Envelope):
    _needs_system = True
    params: cfg.FourierCoeffParams


class FourierScanRequest(_Envelope):
    _needs_system = True
    params: cfg.FourierScanParams


class ConstructSRequest(_Envelope):
    params: cfg.ConstructSParams


class FixtureRequest(_Envelope):
    params: cfg.FixtureParams


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok", "service": "digitfract", "version": __version__}


@app.post("/v1/dims", response_model=Report)
def dims(req: DimsRequest) -> Report:
    return runner.run_dims(req.system, req.positions, req.params)


@app.post("/v1/enumerate", response_model=Report)
def enumerate_(req: EnumerateRequest) -> Report:
    return runner.run_enumerate(req.system, req.positions, req.params)


@app.post("/v1/runs", response_model=Report)
def runs(req: RunsRequest) -> Report:
    return runner.run_runs(req.system, req.positions, req.params)


@app.post("/v1/ap/construct", response_model=Report)
def ap_construct(req: ApConstructRequest) -> Report:
    return runner.run_ap_construct(req.system, req.positions, req.params)


@app.post("/v1/ap/search", response_model=Report)
def ap_search(req: ApSearchRequest) -> Report:
    return runner.run_ap_search(req.system, req.positions, req.params)


@app.post("/v1/ap/longest", response_model=Report)
def ap_longest(req: ApLongestRequest) -> Report:
    return runner.run_ap_longest(req.system, req.positions, req.params)


@app.post("/v1/fourier/coeff", response_model=Report)
def fourier_coeff(req: FourierCoeffRequest) -> Report:
    return runner.run_fourier_coeff(req.system, req.positions, req.params)


@app.post("/v1/fourier/scan", response_model=Report)
def fourier_scan(req: FourierScanRequest) -> Report:
    return runner.run_fourier_scan(req.system, req.positions, req.params)


@app.post("/v1/construct-s", response_model=Report)
def construct_s(req: ConstructSRequest) -> Report:
    return runner.run_construct_s(req.system, req.positions, req.params)


@app.post("/v1/fixture/fraser-yu", response_model=Report)
def fixture_fraser_yu(req: FixtureRequest) -> Report:
    return runner.run_fixture(req.params)
