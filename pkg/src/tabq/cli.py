"""Command-line entry points: batch ingest/profile/insight/ask/train/simulate,
the matcher evaluation harness, and `serve` for the HTTP service."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automl import Budget, Metric, ModelArtifact, SimulationRequest, TrainSpec, simulate
from .config import EngineConfig
from .dataset import LoadOptions
from .engine import Engine
from .errors import EngineError
from .matching.evaluate import load_corpus

_BLOCKS = "▁▂▃▄▅▆▇█"


def _engine_for(project_dir: Path, seed: int) -> tuple[Engine, str]:
    project_dir = project_dir.resolve()
    engine = Engine(project_dir.parent, EngineConfig(seed=seed))
    return engine, project_dir.name


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def sparkline(counts: list[float]) -> str:
    top = max(counts) if counts else 0
    if top <= 0:
        return ""
    return "".join(_BLOCKS[min(7, int(8 * c / top))] if c < top else _BLOCKS[7]
                   for c in counts)


def cmd_ingest(args: argparse.Namespace) -> int:
    out = Path(args.out)
    engine, project_id = _engine_for(out, args.seed)
    options = LoadOptions(
        delimiter=args.delimiter,
        has_header=not args.no_header,
    )
    data = Path(args.file).read_bytes()
    project_id, job = engine.create_project(
        data, name=args.name or Path(args.file).stem,
        options=options, project_id=project_id,
    )
    engine.wait_for_job(job.job_id)
    job = engine.job_status(job.job_id)
    _emit({
        "project_id": project_id,
        "project_dir": str(out),
        "profiling": job.status.value,
        "warnings": engine.dataset(project_id).warnings,
    })
    return 0 if job.status.value == "Done" else 1


def cmd_profile(args: argparse.Namespace) -> int:
    engine, project_id = _engine_for(Path(args.project_dir), args.seed)
    job = engine.start_profiling(project_id)
    engine.wait_for_job(job.job_id)
    profile = engine.profile(project_id)
    _emit(profile.to_dict())
    return 0


def cmd_insight(args: argparse.Namespace) -> int:
    engine, project_id = _engine_for(Path(args.project_dir), args.seed)
    summary, questions = engine.insight(project_id)
    _emit({
        "subject_summary": summary,
        "top_questions": [q.to_dict() for q in questions],
    })
    return 0


def cmd_ask(args: argparse.Namespace) -> int:
    engine, project_id = _engine_for(Path(args.project_dir), args.seed)
    if args.plan_only:
        match = engine.match(project_id, args.question)
        _emit({"question": args.question, "candidates": [c.to_dict() for c in match.candidates]})
        return 0
    response = engine.query(project_id, args.question, candidate=args.candidate)
    _emit(response.to_dict())
    result = response.result
    for name in ("histogram", "trend", "forecast"):
        table = result.tables.get(name)
        if table is None:
            continue
        counts_col = "count" if "count" in table.columns else table.columns[1]
        values = [row[table.columns.index(counts_col)] for row in table.rows]
        line = sparkline([float(v) for v in values if v is not None])
        if line:
            print(f"{name}: {line}", file=sys.stderr)
    return 0


def cmd_eval_matcher(args: argparse.Namespace) -> int:
    corpus = load_corpus(args.corpus)
    dirs = [Path(d).resolve() for d in args.project_dirs]
    parents = {d.parent for d in dirs}
    if len(parents) != 1:
        print("all project dirs must share one parent directory", file=sys.stderr)
        return 1
    engine = Engine(parents.pop(), EngineConfig(seed=args.seed))
    table = engine.evaluate(corpus, [d.name for d in dirs])
    csv_text = table.to_csv()
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
    print(csv_text, end="")
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    engine, project_id = _engine_for(Path(args.project_dir), args.seed)
    spec = TrainSpec(
        project_id=project_id,
        target=args.target,
        metric=Metric(args.metric.upper()),
        budget=Budget(args.budget.lower()),
        seed=args.seed,
    )
    artifact = engine.train_sync(spec)
    path = engine.store.project_dir(project_id) / "models" / f"{artifact.model_id}.json"
    _emit({
        "model_id": artifact.model_id,
        "algorithm": artifact.algorithm,
        "hyperparameters": artifact.hyperparameters,
        "metric": artifact.metric.value,
        "selected_score": artifact.selected_score,
        "cv_scores": artifact.cv_scores,
        "model_path": str(path),
    })
    return 0


def _parse_ranges(pairs: list[str]) -> dict[str, tuple[float, float]]:
    ranges = {}
    for pair in pairs:
        name, _, span = pair.partition("=")
        lo, _, hi = span.partition(":")
        ranges[name] = (float(lo), float(hi))
    return ranges


def _parse_fixed(pairs: list[str]) -> dict[str, object]:
    fixed: dict[str, object] = {}
    for pair in pairs:
        name, _, value = pair.partition("=")
        try:
            fixed[name] = float(value)
        except ValueError:
            fixed[name] = value
    return fixed


def cmd_simulate(args: argparse.Namespace) -> int:
    doc = json.loads(Path(args.model).read_text(encoding="utf-8"))
    artifact = ModelArtifact.from_dict(doc)
    request = SimulationRequest(
        ranges=_parse_ranges(args.range or []),
        fixed=_parse_fixed(args.fix or []),
        objective="minimize" if args.minimize else "maximize",
        budget=args.budget,
        seed=args.seed,
    )
    result = simulate(artifact, request)
    out = result.to_dict()
    trace = out.pop("trace")
    _emit(out)
    if args.trace_out:
        Path(args.trace_out).write_text(result.trace_csv(), encoding="utf-8")
        print(f"trace: {len(trace)} evaluations -> {args.trace_out}", file=sys.stderr)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    config = ServiceConfig.load(args.config or None)
    if args.port:
        config.port = args.port
    if args.data_dir:
        config.data_dir = args.data_dir
    app = create_app(config)
    uvicorn.run(app, host="0.0.0.0", port=config.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tabq", description=__doc__)
    parser.add_argument("--seed", type=int, default=7,
                        help="seed for all stochastic components")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load a CSV into a project directory")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="project directory to create")
    p.add_argument("--name", default="")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--no-header", action="store_true")
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("profile", help="recompute the profile for a project")
    p.add_argument("project_dir")
    p.set_defaults(fn=cmd_profile)

    p = sub.add_parser("insight", help="subject summary and top questions")
    p.add_argument("project_dir")
    p.set_defaults(fn=cmd_insight)

    p = sub.add_parser("ask", help="parse and execute a question")
    p.add_argument("project_dir")
    p.add_argument("question")
    p.add_argument("--plan-only", action="store_true")
    p.add_argument("--candidate", type=int, default=0)
    p.set_defaults(fn=cmd_ask)

    p = sub.add_parser("eval-matcher", help="Top1/Top3 accuracy over a labeled corpus")
    p.add_argument("corpus")
    p.add_argument("project_dirs", nargs="+")
    p.add_argument("--out", default="")
    p.set_defaults(fn=cmd_eval_matcher)

    p = sub.add_parser("train", help="select and fit a model for a target column")
    p.add_argument("project_dir")
    p.add_argument("--target", required=True)
    p.add_argument("--metric", default="rmse", choices=["mae", "mse", "rmse"])
    p.add_argument("--budget", default="standard", choices=["fast", "standard", "thorough"])
    p.set_defaults(fn=cmd_train)

    p = sub.add_parser("simulate", help="search feature ranges on a trained model")
    p.add_argument("model", help="path to a model/v1 JSON artifact")
    p.add_argument("--range", action="append", metavar="feature=lo:hi")
    p.add_argument("--fix", action="append", metavar="feature=value")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--maximize", action="store_true", default=True)
    group.add_argument("--minimize", action="store_true")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--trace-out", default="")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("serve", help="launch the HTTP service")
    p.add_argument("--config", default="")
    p.add_argument("--port", type=int, default=0)
    p.add_argument("--data-dir", default="")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except EngineError as exc:
        print(json.dumps(exc.to_dict(), sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
