"""HTTP/JSON service over the design and simulation library.

Endpoints: POST /api/sample-size, /api/power, /api/power-curve,
/api/simulate (streams progress as NDJSON lines), GET /api/presets and
/api/health.  All numbers come straight from the library, so responses
match the CLI bit for bit.  Errors are {"error": code, "message": text}
with 400 for malformed JSON and domain violations.
"""

import asyncio
import json
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse, StreamingResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import interface, mcsim
from .errors import DomainError
from .presets import STUDIES
from .transforms import ALL_KINDS, parse_kind


class DesignRequest(BaseModel):
    s0: float
    s1: float
    t: float
    accrual: float
    followup: float
    alpha: float = 0.05
    power: float = 0.8
    family: str = "exponential"
    shape: float = 1.0
    censor_fraction: float = 0.0
    method: str = "proposed"
    kinds: Optional[list[str]] = None
    curve: bool = False

    def inputs(self) -> dict:
        return {"s0": self.s0, "s1": self.s1, "t": self.t, "accrual": self.accrual,
                "followup": self.followup, "alpha": self.alpha, "power": self.power,
                "family": self.family, "shape": self.shape,
                "censor_fraction": self.censor_fraction, "method": self.method}

    def resolved_kinds(self):
        if self.kinds is None:
            return list(ALL_KINDS)
        return [parse_kind(name) for name in self.kinds]


class PowerRequest(DesignRequest):
    n: int = Field(ge=1)


class SimulateRequest(BaseModel):
    family: str = "exponential"
    shape: float = 1.0
    s0: float
    s1: Optional[float] = None
    t: float
    accrual: float
    followup: float
    censor_fraction: float = 0.0
    alpha: float = 0.05
    n: int = Field(ge=1)
    reps: int = Field(default=100_000, ge=1)
    seed: int = 20260801
    workers: int = Field(default=1, ge=1)


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"error": code, "message": message})


def create_app() -> FastAPI:
    app = FastAPI(title="kmdesign", docs_url=None, redoc_url=None)
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])

    @app.exception_handler(DomainError)
    async def _domain_error(request: Request, exc: DomainError):
        return _error_response(400, "domain", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return _error_response(400, "validation", str(exc.errors()[:3]))

    @app.exception_handler(json.JSONDecodeError)
    async def _json_error(request: Request, exc: json.JSONDecodeError):
        return _error_response(400, "bad_json", "request body is not valid JSON")

    @app.exception_handler(404)
    async def _not_found(request: Request, exc):
        return _error_response(404, "not_found", f"no route {request.url.path}")

    @app.get("/api/health")
    async def health():
        return {"status": "ok"}

    @app.get("/api/presets")
    async def presets():
        return [dict(row) for row in STUDIES]

    @app.post("/api/sample-size")
    async def sample_size(req: DesignRequest):
        kinds = req.resolved_kinds()
        response = {"inputs": req.inputs(),
                    "results": interface.design_rows(req.inputs(), kinds, req.method)}
        if req.curve:
            response["power_curve"] = interface.power_curves(req.inputs(), kinds,
                                                             req.method)
        return response

    @app.post("/api/power")
    async def power(req: PowerRequest):
        kinds = req.resolved_kinds()
        return {"inputs": {**req.inputs(), "n": req.n},
                "results": interface.power_rows(req.inputs(), kinds, req.method, req.n)}

    @app.post("/api/power-curve")
    async def power_curve(req: DesignRequest):
        kinds = req.resolved_kinds()
        return {"inputs": req.inputs(), "target_power": req.power,
                "curves": interface.power_curves(req.inputs(), kinds, req.method)}

    @app.post("/api/simulate")
    async def simulate(req: SimulateRequest):
        scenario = mcsim.Scenario(
            family=req.family, shape=req.shape, s0=req.s0,
            s1=req.s1 if req.s1 is not None else req.s0, t=req.t,
            accrual=req.accrual, followup=req.followup,
            random_fraction=req.censor_fraction, alpha=req.alpha, n=req.n)

        async def stream():
            loop = asyncio.get_running_loop()
            done = 0
            totals = {kind.value: 0 for kind in ALL_KINDS}
            step = mcsim.CHUNK
            for lo in range(0, req.reps, step):
                hi = min(lo + step, req.reps)
                part = await loop.run_in_executor(
                    None, mcsim._chunk_counts, scenario, req.seed, lo, hi)
                for key, c in part.items():
                    totals[key] += c
                done = hi
                yield json.dumps({"progress": done / req.reps, "done": done}) + "\n"
            result = mcsim.SimResult(counts=totals, reps=req.reps, seed=req.seed)
            yield json.dumps({"result": {"counts": result.counts,
                                         "p_hat": result.p_hat,
                                         "mc_se": result.mc_se,
                                         "reps": result.reps,
                                         "seed": result.seed}}) + "\n"

        return StreamingResponse(stream(), media_type="application/x-ndjson")

    # serve the browser UI when its build output happens to be present
    ui_root = Path(__file__).resolve().parents[2] / "frontend"
    if (ui_root / "dist").is_dir():
        @app.get("/", include_in_schema=False)
        async def index():
            return FileResponse(ui_root / "index.html")

        app.mount("/dist", StaticFiles(directory=ui_root / "dist"), name="ui")

    return app


app = create_app()
