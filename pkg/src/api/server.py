"""
FastAPI server for spectral analyses and WebSocket sweep streaming.
"""
from fastapi import FastAPI, File, HTTPException, Request, UploadFile, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, ValidationError, model_validator
from typing import Dict, List, Literal, Optional
import asyncio
import logging
import uuid

import pandas as pd

from ..analysis.report import index_report
from ..classification.classify import DEFAULT_TOL_DEG
from ..cli.config import WINDOW_FIELDS, RunConfig, resolve_window
from ..cli.reproduce import EXAMPLES, reproduce, rows_frame
from ..cli.sweep import SWEEP_COLUMNS, collisions, sweep_point, sweep_values
from ..coefficients.fixtures import FIXTURE_IDS, fixture
from ..coefficients.piecewise import Sign
from ..coefficients.problem import Problem
from ..data.problem_file import parse_problem
from ..data.writers import index_report_to_dict, inventory_to_dict, jsonable
from ..errors import SturmError
from ..oracle.extrapolate import agreement_check, extrapolate
from ..shooting.shoot import DEFAULT_TOL
from ..spectrum.contour import DEFAULT_QUAD_TOL
from ..spectrum.inventory import SpectralInventory, build_inventory
from ..spectrum.real_scan import DEFAULT_REFINE_TOL
from ..spectrum.window import DEFAULT_MIN_POSITIVE

logger = logging.getLogger(__name__)

# Exit code of the error class -> HTTP status
ERROR_STATUS = {2: 422, 4: 409, 5: 409, 6: 409}

app = FastAPI(title="Sturm-Liouville Spectrum API", version="1.0.0")

# Enable CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Uploaded problems, keyed by id (process lifetime only)
uploaded_problems: Dict[str, Problem] = {}


# Request models
class AnalysisRequest(BaseModel):
    fixture: Optional[Literal["P0", "P1", "P2"]] = None
    q: Optional[float] = None
    problem_id: Optional[str] = None  # from /problems/upload

    lmin: Optional[float] = None
    lmax: Optional[float] = None
    re_min: Optional[float] = None
    re_max: Optional[float] = None
    im_min: Optional[float] = None
    im_max: Optional[float] = None
    min_positive: int = Field(default=DEFAULT_MIN_POSITIVE, ge=1)

    tol: float = Field(default=DEFAULT_TOL, gt=0)
    refine_tol: float = Field(default=DEFAULT_REFINE_TOL, gt=0)
    tol_deg: float = Field(default=DEFAULT_TOL_DEG, gt=0)
    quad_tol: float = Field(default=DEFAULT_QUAD_TOL, gt=0)
    side: Literal["positive", "negative"] = "positive"
    oracle_n: Optional[int] = Field(default=None, ge=3)

    @model_validator(mode="after")
    def check_source(self) -> "AnalysisRequest":
        if (self.fixture is None) == (self.problem_id is None):
            raise ValueError("exactly one of fixture and problem_id is required")
        if self.fixture == "P1" and self.q is None:
            raise ValueError("fixture P1 needs q")
        return self

    def build_problem(self) -> Problem:
        if self.problem_id is not None:
            if self.problem_id not in uploaded_problems:
                raise HTTPException(status_code=404, detail=f"Unknown problem id {self.problem_id}")
            return uploaded_problems[self.problem_id]
        return fixture(self.fixture, self.q)


class SweepRequest(BaseModel):
    qmin: float
    qmax: float
    step: float = Field(default=0.5, gt=0)
    lmin: Optional[float] = None
    lmax: Optional[float] = None
    re_min: Optional[float] = None
    re_max: Optional[float] = None
    im_min: Optional[float] = None
    im_max: Optional[float] = None


@app.exception_handler(SturmError)
async def sturm_error_handler(request: Request, exc: SturmError):
    status = ERROR_STATUS.get(exc.exit_code, 500)
    return JSONResponse(
        status_code=status,
        content={"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code},
    )


def _inventory(request: AnalysisRequest) -> SpectralInventory:
    prob = request.build_problem()
    window = resolve_window(prob, {name: getattr(request, name) for name in WINDOW_FIELDS}, request.min_positive)
    return build_inventory(
        prob,
        window,
        tol=request.refine_tol,
        quad_tol=request.quad_tol,
        shot_tol=request.tol,
        tol_deg=request.tol_deg,
    )


def _certified_inventory(request: AnalysisRequest) -> SpectralInventory:
    inv = _inventory(request)
    inv.require_certified()
    return inv


@app.get("/")
async def root():
    """API health check"""
    return {
        "status": "online",
        "message": "Sturm-Liouville Spectrum API",
        "fixtures": list(FIXTURE_IDS),
        "examples": sorted(EXAMPLES),
    }


@app.post("/solve")
async def solve(request: AnalysisRequest):
    """Real and non-real eigenvalues in the window with the certificate"""
    inv = await asyncio.to_thread(_inventory, request)
    return jsonable(inventory_to_dict(inv))


@app.post("/indices")
async def indices(request: AnalysisRequest):
    """Indices, numbers and the checks behind them"""

    def run():
        inv = _certified_inventory(request)
        return index_report(inv, Sign(request.side), tol_deg=request.tol_deg)

    rep = await asyncio.to_thread(run)
    return jsonable(index_report_to_dict(rep))


@app.post("/verify")
async def verify(request: AnalysisRequest):
    """Every applicable check; failed names are listed separately"""

    def run():
        inv = _certified_inventory(request)
        rep = index_report(inv, Sign(request.side), tol_deg=request.tol_deg, properties=True)
        records = list(rep.checks)
        if request.oracle_n is not None:
            records.append(agreement_check(inv, extrapolate(inv.problem, request.oracle_n)))
        return records

    records = await asyncio.to_thread(run)
    return jsonable({
        "checks": [
            {"name": r.name, "lhs": r.lhs, "rhs": r.rhs, "passed": r.passed, "status": r.status.value, "note": r.note}
            for r in records
        ],
        "failed": [r.name for r in records if r.is_failure],
    })


@app.get("/reproduce/{example_id}")
async def reproduce_example(example_id: str):
    """Published values side by side with computed ones"""
    if example_id not in EXAMPLES:
        raise HTTPException(status_code=404, detail=f"Unknown example {example_id}; known: {sorted(EXAMPLES)}")
    rows = await asyncio.to_thread(reproduce, example_id)
    return jsonable({"example": example_id, "rows": rows_frame(rows).to_dict(orient="records")})


@app.post("/problems/upload")
async def upload_problem(file: UploadFile = File(...)):
    """Register a JSON problem file; the returned id goes in AnalysisRequest.problem_id"""
    prob = parse_problem(await file.read())
    problem_id = uuid.uuid4().hex[:12]
    uploaded_problems[problem_id] = prob
    logger.info(f"Registered problem {prob.name} as {problem_id}")
    return {
        "problem_id": problem_id,
        "name": prob.name,
        "interval": {"a": prob.a, "b": prob.b},
    }


@app.get("/problems")
async def list_problems():
    return {pid: prob.name for pid, prob in uploaded_problems.items()}


# WebSocket endpoint for sweep streaming
@app.websocket("/ws/sweep")
async def websocket_sweep(websocket: WebSocket):
    """
    Receive one SweepRequest, stream the eigenvalue rows of each q in order,
    then the collision table.
    """
    await websocket.accept()
    try:
        try:
            request = SweepRequest(**await websocket.receive_json())
            qs = sweep_values(request.qmin, request.qmax, request.step)
        except (ValidationError, ValueError) as exc:
            await websocket.send_json({"type": "error", "message": str(exc)})
            await websocket.close()
            return

        bounds = {name: getattr(request, name) for name in WINDOW_FIELDS if getattr(request, name) is not None}
        rows: List[dict] = []
        for q in qs:
            config = RunConfig(fixture="P1", q=float(q), **bounds)
            try:
                point = await asyncio.to_thread(sweep_point, config)
            except SturmError as exc:
                await websocket.send_json({"type": "error", "q": float(q), "message": str(exc)})
                continue
            rows.extend(point)
            await websocket.send_json(jsonable({"type": "rows", "q": float(q), "rows": point}))

        found = collisions(pd.DataFrame(rows, columns=SWEEP_COLUMNS))
        await websocket.send_json(jsonable({"type": "collisions", "rows": found.to_dict(orient="records")}))
        await websocket.send_json({"type": "done", "points": len(qs)})
        await websocket.close()
    except WebSocketDisconnect:
        logger.info("Sweep client disconnected")


def main():
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)


if __name__ == "__main__":
    main()
