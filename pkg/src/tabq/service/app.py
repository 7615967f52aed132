"""HTTP facade over the engine.

Every endpoint delegates to one engine operation; module errors surface as
ApiError bodies {code, message, detail} with the status codes listed in
docs/api.md.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request, UploadFile
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from ..automl import Budget, Metric, SimulationRequest, TrainSpec
from ..dataset import LoadOptions
from ..engine import Engine
from ..errors import EngineError
from ..guidance import SessionSettings
from .config import ServiceConfig


class QueryBody(BaseModel):
    question: str
    candidate: int = 0


class SessionBody(BaseModel):
    project_id: str
    description: str = ""
    role: str = "general"
    goal: str = ""
    target_column: str


class StepBody(BaseModel):
    question: str | None = None
    pick: int | None = None


class TrainBody(BaseModel):
    target: str
    metric: str = "RMSE"
    budget: str = "standard"
    features: list[str] | None = None
    seed: int | None = None


class SimulateBody(BaseModel):
    ranges: dict[str, tuple[float, float]] = Field(default_factory=dict)
    fixed: dict[str, float | str] = Field(default_factory=dict)
    objective: str = "maximize"
    budget: int | None = None
    seed: int | None = None


class StreamBody(BaseModel):
    rows: list[dict]


def create_app(config: ServiceConfig | None = None, engine: Engine | None = None) -> FastAPI:
    config = config or ServiceConfig()
    engine = engine or Engine(config.data_dir)
    app = FastAPI(title="tabq", version="0.1.0")
    app.state.engine = engine
    app.state.config = config

    @app.exception_handler(EngineError)
    async def engine_error_handler(_: Request, exc: EngineError) -> JSONResponse:
        return JSONResponse(status_code=exc.http_status, content=exc.to_dict())

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    # --- projects ------------------------------------------------------------

    @app.post("/projects", status_code=201)
    async def create_project(file: UploadFile, name: str = "", delimiter: str = ",",
                             has_header: bool = True) -> dict:
        data = await file.read()
        options = LoadOptions(delimiter=delimiter, has_header=has_header)
        project_id, job = engine.create_project(
            data, name=name or (file.filename or ""), options=options
        )
        return {"project_id": project_id, "job_id": job.job_id}

    @app.get("/projects")
    def list_projects() -> dict:
        out = []
        for project_id in engine.store.list_projects():
            meta = engine.store.project_meta(project_id)
            out.append({
                "project_id": project_id,
                "name": meta.get("name", project_id),
                "row_count": meta.get("row_count"),
            })
        return {"projects": out}

    @app.get("/projects/{project_id}/profile")
    def get_profile(project_id: str) -> dict:
        engine.store.project_meta(project_id)  # 404 on unknown project
        return engine.profile(project_id).to_dict()

    @app.get("/projects/{project_id}/insight")
    def get_insight(project_id: str) -> dict:
        summary, questions = engine.insight(project_id)
        return {
            "subject_summary": summary,
            "top_questions": [q.to_dict() for q in questions],
        }

    @app.post("/projects/{project_id}/query")
    def post_query(project_id: str, body: QueryBody) -> dict:
        response = engine.query(project_id, body.question, body.candidate)
        return response.to_dict()

    # --- jobs ------------------------------------------------------------------

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str) -> dict:
        return engine.job_status(job_id).to_dict()

    # --- sessions ----------------------------------------------------------------

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionBody) -> dict:
        settings = SessionSettings(
            description=body.description, role=body.role,
            goal=body.goal, target_column=body.target_column,
        )
        session, first = engine.create_session(body.project_id, settings)
        return {
            "session_id": session.session_id,
            "status": session.status.value,
            "settings": settings.to_dict(),
            "recommendations": [first.to_dict()],
        }

    @app.post("/sessions/{session_id}/step")
    def step_session(session_id: str, body: StepBody) -> dict:
        result, recommendations, proposal = engine.step_session(
            session_id, question=body.question, pick=body.pick
        )
        return {
            "result": result.to_dict(),
            "recommendations": [r.to_dict() for r in recommendations],
            "summary_proposal": proposal.to_dict(),
        }

    @app.post("/sessions/{session_id}/summary")
    def summarize_session(session_id: str) -> dict:
        report = engine.summarize_session(session_id)
        return {"report_id": report.report_id, "report": report.to_dict()}

    # --- models ----------------------------------------------------------------------

    @app.post("/projects/{project_id}/models", status_code=202)
    def train_model(project_id: str, body: TrainBody) -> dict:
        spec = TrainSpec(
            project_id=project_id,
            target=body.target,
            metric=Metric(body.metric.upper()),
            budget=Budget(body.budget.lower()),
            features=body.features,
            seed=body.seed if body.seed is not None else config.seed,
        )
        job = engine.train_async(spec)
        return {"job_id": job.job_id}

    @app.get("/models/{model_id}")
    def get_model(model_id: str) -> dict:
        return engine.get_model(model_id).to_dict()

    @app.post("/models/{model_id}/simulate")
    def simulate_model(model_id: str, body: SimulateBody) -> dict:
        request = SimulationRequest(
            ranges={k: (lo, hi) for k, (lo, hi) in body.ranges.items()},
            fixed=dict(body.fixed),
            objective=body.objective,
            budget=body.budget,
            seed=body.seed,
        )
        return engine.simulate_model(model_id, request).to_dict()

    @app.post("/models/{model_id}/stream")
    def stream_model(model_id: str, body: StreamBody) -> dict:
        artifact = engine.stream_model(model_id, body.rows)
        return artifact.to_dict()

    # --- reports ---------------------------------------------------------------------

    @app.get("/reports/{report_id}")
    def get_report(report_id: str, request: Request):
        report = engine.get_report(report_id)
        accept = request.headers.get("accept", "")
        if "text/markdown" in accept:
            return PlainTextResponse(report.to_markdown(), media_type="text/markdown")
        return JSONResponse(report.to_dict())

    @app.on_event("shutdown")
    def drain_jobs() -> None:
        engine.shutdown()

    static_dir = config.static_dir
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
