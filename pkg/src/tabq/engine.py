"""The engine facade: project lifecycle, queries, sessions, models, reports.

One Engine instance owns a data directory; the HTTP service and the CLI are
both thin callers of this class, so a project directory written by one is
readable by the other.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .analysis import execute
from .analysis.result import AnalysisResult
from .config import EngineConfig
from .dataset import Dataset, LoadOptions, load_table
from .errors import ProfileNotReady, UnknownJob, UnknownModel, UnknownSession
from .guidance import Consultant, Recommendation, Session, SessionSettings, SummaryProposal
from .insight import (
    KnowledgeStore,
    Report,
    SuggestedQuestion,
    explain_result,
    generate_data_summary,
    generate_top_questions,
)
from .jobs import Job, JobManager
from .matching import MatchResult, highlight_spans, match_question
from .matching.evaluate import AccuracyTable, CorpusRecord, evaluate_matcher
from .profiling import ColumnType, ProfileStatus, TableProfile, build_profile
from .store import ProjectStore
from .automl import (
    ModelArtifact,
    SimulationRequest,
    SimulationResult,
    TrainSpec,
    simulate,
    train,
    update_with_stream,
)


@dataclass
class QueryResponse:
    match: MatchResult
    result: AnalysisResult
    followups: list[Recommendation] = field(default_factory=list)
    highlights: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "match": self.match.to_dict(),
            "result": self.result.to_dict(),
            "followups": [r.to_dict() for r in self.followups],
            "highlights": self.highlights,
        }


class Engine:
    def __init__(self, data_dir: str | Path, config: EngineConfig | None = None):
        self.config = config or EngineConfig()
        self.store = ProjectStore(data_dir)
        self.jobs = JobManager()
        self._sessions: dict[str, Session] = {}
        self._session_recs: dict[str, list[Recommendation]] = {}
        self._session_locks: dict[str, threading.Lock] = {}
        self._lock = threading.Lock()
        self._dataset_cache: dict[str, Dataset] = {}
        self._profile_cache: dict[str, TableProfile] = {}

    # --- projects & profiling -------------------------------------------------

    def create_project(
        self,
        data: bytes,
        name: str = "",
        options: LoadOptions | None = None,
        project_id: str | None = None,
    ) -> tuple[str, Job]:
        project_id = project_id or uuid.uuid4().hex
        dataset = load_table(data, options, project_id=project_id)
        self.store.create_project(project_id, name or project_id, dataset)
        job = self.start_profiling(project_id)
        return project_id, job

    def dataset(self, project_id: str) -> Dataset:
        with self._lock:
            if project_id not in self._dataset_cache:
                self._dataset_cache[project_id] = self.store.load_dataset(project_id)
            return self._dataset_cache[project_id]

    def start_profiling(self, project_id: str) -> Job:
        dataset = self.dataset(project_id)

        def run() -> str:
            profile = build_profile(dataset, self.config.detection)
            self.store.save_profile(project_id, profile)
            with self._lock:
                self._profile_cache[project_id] = profile
            return "profile"

        return self.jobs.submit("profile", project_id, run)

    def job_status(self, job_id: str) -> Job:
        job = self.jobs.get(job_id)
        if job is None:
            raise UnknownJob(f"no such job: {job_id}")
        return job

    def wait_for_job(self, job_id: str, timeout: float | None = 120.0) -> Job:
        self.job_status(job_id)
        return self.jobs.wait(job_id, timeout)

    def profile(self, project_id: str) -> TableProfile:
        with self._lock:
            cached = self._profile_cache.get(project_id)
        if cached is not None:
            return cached
        stored = self.store.load_profile(project_id)
        if stored is None:
            return TableProfile(status=ProfileStatus.PENDING)
        with self._lock:
            self._profile_cache[project_id] = stored
        return stored

    def ready_profile(self, project_id: str) -> TableProfile:
        profile = self.profile(project_id)
        if profile.status != ProfileStatus.READY:
            raise ProfileNotReady(f"profile for {project_id} is {profile.status.value}")
        return profile

    # --- knowledge ---------------------------------------------------------------

    def knowledge(self, project_id: str) -> KnowledgeStore:
        path = self.store.project_dir(project_id) / "knowledge.jsonl"
        if path.is_file():
            return KnowledgeStore.load(path)
        bundled = resources.files("tabq.data") / "knowledge.jsonl"
        try:
            with resources.as_file(bundled) as p:
                return KnowledgeStore.load(p)
        except FileNotFoundError:
            return KnowledgeStore([])

    # --- insight -------------------------------------------------------------------

    def insight(self, project_id: str) -> tuple[str, list[SuggestedQuestion]]:
        profile = self.ready_profile(project_id)
        summary = generate_data_summary(profile)
        questions = generate_top_questions(profile, k=10, matcher_config=self.config.matcher)
        return summary, questions

    # --- ask ---------------------------------------------------------------------------

    def match(self, project_id: str, question: str) -> MatchResult:
        return match_question(question, self.ready_profile(project_id), self.config.matcher)

    def query(self, project_id: str, question: str, candidate: int = 0) -> QueryResponse:
        profile = self.ready_profile(project_id)
        dataset = self.dataset(project_id)
        match = match_question(question, profile, self.config.matcher)
        index = min(max(candidate, 0), len(match.candidates) - 1)
        plan = match.candidates[index]
        result = execute(plan, dataset, profile, self.config.analysis)
        retrieval = self.knowledge(project_id).retrieve(question, k=3)
        result.insight_text = explain_result(result, retrieval.snippets)

        highlights = highlight_spans(question, profile, self.config.matcher)
        consultant = Consultant(dataset, profile, self.config)
        target = self._query_target(plan, profile)
        followups: list[Recommendation] = []
        if target is not None:
            scratch = Session(
                session_id="adhoc",
                project_id=project_id,
                settings=SessionSettings("", "general", "", target),
            )
            followups = consultant.followups_for(scratch, result)
            result.followups = [r.question for r in followups]
        return QueryResponse(match, result, followups, highlights)

    @staticmethod
    def _query_target(plan, profile: TableProfile) -> str | None:
        for mention in plan.mentions:
            try:
                if profile.profile(mention.column).ctype == ColumnType.NUMERIC:
                    return mention.column
            except KeyError:
                continue
        return plan.mentions[0].column if plan.mentions else None

    # --- evaluation -----------------------------------------------------------------

    def evaluate(self, corpus: list[CorpusRecord], project_ids: list[str]) -> AccuracyTable:
        profiles_by_source: dict[str, TableProfile] = {}
        for project_id in project_ids:
            meta = self.store.project_meta(project_id)
            profile = self.ready_profile(project_id)
            key = str(meta.get("name", project_id)).strip().casefold().replace(" ", "_")
            profiles_by_source[key] = profile
        normalized = [
            CorpusRecord(
                question=r.question,
                source=r.source.strip().casefold().replace(" ", "_"),
                gold_columns=r.gold_columns,
                gold_intention=r.gold_intention,
                gold_restrictions=r.gold_restrictions,
                tags=r.tags,
            )
            for r in corpus
        ]
        return evaluate_matcher(normalized, profiles_by_source, self.config.matcher)

    # --- sessions --------------------------------------------------------------------

    def create_session(
        self, project_id: str, settings: SessionSettings
    ) -> tuple[Session, Recommendation]:
        profile = self.ready_profile(project_id)
        dataset = self.dataset(project_id)
        consultant = Consultant(dataset, profile, self.config)
        session, first = consultant.start_session(settings, project_id)
        with self._lock:
            self._sessions[session.session_id] = session
            self._session_recs[session.session_id] = [first]
            self._session_locks[session.session_id] = threading.Lock()
        self.store.append_session_event(project_id, session.session_id, session.started_event())
        return session, first

    def _session(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSession(f"no such session: {session_id}")
        return session

    def step_session(
        self, session_id: str, question: str | None = None, pick: int | None = None
    ) -> tuple[AnalysisResult, list[Recommendation], SummaryProposal]:
        session = self._session(session_id)
        lock = self._session_locks[session_id]
        with lock:
            consultant = Consultant(
                self.dataset(session.project_id),
                self.ready_profile(session.project_id),
                self.config,
            )
            if question is None:
                recs = self._session_recs.get(session_id, [])
                if pick is None or not (0 <= pick < len(recs)):
                    raise UnknownSession(f"no recommendation #{pick} to pick")
                chosen: str | Recommendation = recs[pick]
            else:
                chosen = question
            result, recommendations = consultant.step(session, chosen)
            self._session_recs[session_id] = recommendations
            asked = chosen.question if isinstance(chosen, Recommendation) else chosen
            self.store.append_session_event(
                session.project_id, session_id, Session.step_event(asked, result.plan, result)
            )
            proposal = consultant.should_summarize(session)
            return result, recommendations, proposal

    def summarize_session(self, session_id: str) -> Report:
        session = self._session(session_id)
        lock = self._session_locks[session_id]
        with lock:
            consultant = Consultant(
                self.dataset(session.project_id),
                self.ready_profile(session.project_id),
                self.config,
            )
            report = consultant.summarize(session)
            self.store.append_session_event(
                session.project_id, session_id, session.status_event()
            )
            self.store.save_report(session.project_id, report.report_id, report.to_dict())
            return report

    def get_report(self, report_id: str) -> Report:
        return Report.from_dict(self.store.find_report(report_id))

    # --- models -----------------------------------------------------------------------

    def train_async(self, spec: TrainSpec) -> Job:
        profile = self.ready_profile(spec.project_id)
        dataset = self.dataset(spec.project_id)

        def run() -> str:
            artifact = train(spec, dataset, profile, self.config.automl)
            self.store.save_model(spec.project_id, artifact.model_id, artifact.to_dict())
            return artifact.model_id

        return self.jobs.submit("train", f"{spec.project_id}:{spec.target}", run)

    def train_sync(self, spec: TrainSpec) -> ModelArtifact:
        profile = self.ready_profile(spec.project_id)
        artifact = train(spec, self.dataset(spec.project_id), profile, self.config.automl)
        self.store.save_model(spec.project_id, artifact.model_id, artifact.to_dict())
        return artifact

    def get_model(self, model_id: str) -> ModelArtifact:
        found = self.store.find_model(model_id)
        if found is None:
            raise UnknownModel(f"no such model: {model_id}")
        _, doc = found
        return ModelArtifact.from_dict(doc)

    def simulate_model(self, model_id: str, request: SimulationRequest) -> SimulationResult:
        return simulate(self.get_model(model_id), request, self.config.automl)

    def stream_model(self, model_id: str, rows: list[dict]) -> ModelArtifact:
        found = self.store.find_model(model_id)
        if found is None:
            raise UnknownModel(f"no such model: {model_id}")
        project_id, doc = found
        artifact = ModelArtifact.from_dict(doc)
        updated = update_with_stream(
            artifact, rows, self.ready_profile(project_id), self.config.automl
        )
        self.store.save_model(project_id, updated.model_id, updated.to_dict())
        return updated

    def shutdown(self) -> None:
        self.jobs.shutdown()
