"""Command-line entry points: simulate, analyze, replay, serve, catalog."""

from __future__ import annotations

import glob
import json
import sys
from pathlib import Path

import click

from .analysis import (
    compare_groups,
    comparison_csv,
    comparison_json,
    correlation_csv,
    trace_svg,
)
from .design_space import catalog_json
from .engine import OptimizerConfig
from .objectives import OBJECTIVE_NAMES
from .session import export_session, import_session, replay_session, run_simulated
from .simulate import concave_user


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    raw = Path(path).read_bytes()
    if path.endswith(".toml"):
        import tomli

        return tomli.loads(raw.decode("utf-8"))
    return json.loads(raw)


def _optimizer_config(file_values: dict, seed: int | None) -> OptimizerConfig:
    values = dict(file_values.get("optimizer", {}))
    if seed is not None:
        values["rng_seed"] = seed
    return OptimizerConfig(**values)


@click.group()
def main() -> None:
    """Human-in-the-loop multi-objective design optimization toolkit."""


@main.command()
@click.option("--sessions", "n_sessions", default=1, show_default=True)
@click.option("--seed", default=0, show_default=True, help="base seed; session i uses seed+i")
@click.option("--noise-sd", default=0.0, show_default=True, help="rating noise on the unit utility scale")
@click.option("--condition", type=click.Choice(["with_motion", "no_motion"]), default="no_motion", show_default=True)
@click.option("--label-prefix", default="sim", show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None, help="TOML/JSON config file")
def simulate(n_sessions, seed, noise_sd, condition, label_prefix, out_dir, config_path) -> None:
    """Run simulated sessions and write one JSONL log per session."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    file_values = _load_config_file(config_path)
    for i in range(n_sessions):
        user_seed = seed + i
        cfg = _optimizer_config(file_values, user_seed)
        user = concave_user(user_seed, rating_noise_sd=noise_sd)
        label = f"{label_prefix}-{user_seed}"
        state = run_simulated(user, cfg, participant_label=label, condition=condition)
        path = out / f"{label}.jsonl"
        export_session(state, path)
        click.echo(
            f"{label}: {len(state.records)} runs, final aggregate "
            f"{state.aggregate_trace()[-1]:+.3f} -> {path}"
        )


def _load_group(pattern: str):
    paths = sorted(glob.glob(pattern))
    if not paths:
        raise click.ClickException(f"no session logs match {pattern!r}")
    return [import_session(p) for p in paths]


@main.command()
@click.option("--group-a", required=True, help="glob of JSONL session logs")
@click.option("--group-b", required=True, help="glob of JSONL session logs")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--formats", default="csv,json,svg", show_default=True)
def analyze(group_a, group_b, out_dir, formats) -> None:
    """Compare two groups of session logs and write report files."""
    sessions_a = _load_group(group_a)
    sessions_b = _load_group(group_b)
    comparison = compare_groups(sessions_a, sessions_b)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    wanted = {f.strip() for f in formats.split(",") if f.strip()}
    if "csv" in wanted:
        (out / "comparison.csv").write_text(comparison_csv(comparison))
        (out / "correlation.csv").write_text(correlation_csv(comparison.correlation))
    if "json" in wanted:
        (out / "report.json").write_text(comparison_json(comparison))
    if "svg" in wanted:
        (out / "aggregate_trace.svg").write_text(trace_svg(comparison))
        for name in OBJECTIVE_NAMES:
            (out / f"trace_{name}.svg").write_text(trace_svg(comparison, objective=name))
    click.echo(
        f"pareto designs: group_a={comparison.pareto_count_a} "
        f"group_b={comparison.pareto_count_b}; reports in {out}"
    )


@main.command()
@click.argument("logs", nargs=-1, required=True, type=click.Path(exists=True))
def replay(logs) -> None:
    """Verify that logged proposals replay byte-identically."""
    failures = 0
    for path in logs:
        state = import_session(path)
        mismatches = replay_session(state)
        if mismatches:
            failures += 1
            click.echo(f"FAIL {path}: {len(mismatches)} mismatching proposals")
            for run_index, logged, reproposed in mismatches[:3]:
                click.echo(f"  run {run_index}: logged {logged} != {reproposed}")
        else:
            click.echo(f"PASS {path}: {len(state.records)} proposals reproduced")
    if failures:
        sys.exit(1)


@main.command()
@click.option("--host", default=None, help="bind address (default 127.0.0.1)")
@click.option("--port", default=None, type=int, help="port (default 8000)")
@click.option("--session-dir", default=None, type=click.Path(file_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True), default=None, help="TOML/JSON config file")
def serve(host, port, session_dir, config_path) -> None:
    """Start the HTTP API."""
    import uvicorn

    from .server import SessionStore, create_app

    file_values = _load_config_file(config_path)
    host = host or file_values.get("host", "127.0.0.1")
    port = port or int(file_values.get("port", 8000))
    session_dir = session_dir or file_values.get("session_dir")
    app = create_app(SessionStore(session_dir))
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
def catalog() -> None:
    """Print the design parameter catalog as JSON."""
    click.echo(catalog_json())


if __name__ == "__main__":
    main()
