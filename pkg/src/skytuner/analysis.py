"""Group-level analysis of completed sessions.

Pareto fronts are filtered per participant and then pooled per group; the
groups are compared per design parameter (unit-cube values) and per objective
(native-scale ratings) with the JZS Bayes factor.  The report also carries
the objective correlation matrix over all pooled Pareto entries and the
LOESS-smoothed aggregate optimization traces.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from dataclasses import field as dataclass_field

import numpy as np

from .design_space import parameter_names
from .loess import loess
from .objectives import OBJECTIVE_NAMES, aggregate, raw_scalar_values
from .pareto import ParetoFront, pareto_front
from .session import SessionState
from .stats import (
    BayesResult,
    CorrelationResult,
    StatisticsError,
    bayes_factor_ttest,
    evidence_label,
    evidence_symbol,
    pearson_correlation_matrix,
)


@dataclass(frozen=True)
class ComparisonRow:
    name: str
    kind: str  # "parameter" | "objective"
    result: BayesResult

    @property
    def label(self) -> str:
        return evidence_label(self.result.bayes_factor)

    @property
    def symbol(self) -> str:
        return evidence_symbol(self.result.evidence)


@dataclass(frozen=True)
class GroupTrace:
    run_indices: list[int]
    mean_aggregate: list[float]
    smoothed: list[float]
    # per-objective {"mean": [...], "smoothed": [...]} keyed by objective name
    objectives: dict[str, dict[str, list[float]]] = dataclass_field(
        default_factory=dict
    )


@dataclass(frozen=True)
class GroupComparison:
    rows: list[ComparisonRow]  # 12 parameters then 6 objectives
    correlation: CorrelationResult
    traces: dict[str, GroupTrace]  # keyed group_a / group_b
    pareto_count_a: int
    pareto_count_b: int

    @property
    def parameter_rows(self) -> list[ComparisonRow]:
        return [r for r in self.rows if r.kind == "parameter"]

    @property
    def objective_rows(self) -> list[ComparisonRow]:
        return [r for r in self.rows if r.kind == "objective"]


def session_front(state: SessionState) -> ParetoFront:
    """The participant's own Pareto front over their rated designs."""
    if not state.records:
        raise ValueError(f"session {state.session_id} has no rated designs")
    points = [(r.design, r.objectives) for r in state.records]
    front = pareto_front(points, owner=state.session_id)
    return front


def _pooled_front_arrays(sessions) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Designs, native-scale ratings, normalized objectives of pooled fronts."""
    designs, raws, normalized = [], [], []
    for state in sessions:
        front = session_front(state)
        for idx in front.source_indices:
            record = state.records[idx]
            designs.append(record.design)
            raws.append(raw_scalar_values(record.raw))
            normalized.append(record.objectives)
    return np.array(designs), np.array(raws), np.array(normalized)


def _smoothed(runs: list[int], means: list[float]) -> list[float]:
    if len(runs) < 3:
        return list(means)
    return loess(np.array(runs, dtype=float), np.array(means), span=1.0).tolist()


def _group_trace(sessions, total_runs: int) -> GroupTrace:
    """Mean normalized scores per run across a group, aggregate and per objective."""
    runs: list[int] = []
    agg_means: list[float] = []
    per_objective: dict[str, list[float]] = {name: [] for name in OBJECTIVE_NAMES}
    for run in range(1, total_runs + 1):
        vectors = [
            s.records[run - 1].objectives for s in sessions if len(s.records) >= run
        ]
        if not vectors:
            continue
        stacked = np.array(vectors)
        runs.append(run)
        agg_means.append(float(stacked.mean()))
        for k, name in enumerate(OBJECTIVE_NAMES):
            per_objective[name].append(float(stacked[:, k].mean()))
    return GroupTrace(
        run_indices=runs,
        mean_aggregate=agg_means,
        smoothed=_smoothed(runs, agg_means),
        objectives={
            name: {"mean": values, "smoothed": _smoothed(runs, values)}
            for name, values in per_objective.items()
        },
    )


def compare_groups(sessions_a, sessions_b) -> GroupComparison:
    """Full between-group report: 12 parameter rows plus 6 objective rows."""
    sessions_a, sessions_b = list(sessions_a), list(sessions_b)
    if not sessions_a or not sessions_b:
        raise ValueError("both groups need at least one completed session")

    designs_a, raws_a, norm_a = _pooled_front_arrays(sessions_a)
    designs_b, raws_b, norm_b = _pooled_front_arrays(sessions_b)

    def compared(name: str, kind: str, a, b) -> ComparisonRow:
        try:
            return ComparisonRow(name=name, kind=kind, result=bayes_factor_ttest(a, b))
        except StatisticsError as exc:
            raise ValueError(f"cannot compare {kind} {name!r}: {exc}") from exc

    rows = []
    for j, name in enumerate(parameter_names()):
        rows.append(compared(name, "parameter", designs_a[:, j], designs_b[:, j]))
    for k, name in enumerate(OBJECTIVE_NAMES):
        rows.append(compared(name, "objective", raws_a[:, k], raws_b[:, k]))

    correlation = pearson_correlation_matrix(
        np.vstack([norm_a, norm_b]), names=OBJECTIVE_NAMES
    )
    total_runs = max(
        s.config.total_runs for s in [*sessions_a, *sessions_b]
    )
    traces = {
        "group_a": _group_trace(sessions_a, total_runs),
        "group_b": _group_trace(sessions_b, total_runs),
    }
    return GroupComparison(
        rows=rows,
        correlation=correlation,
        traces=traces,
        pareto_count_a=len(designs_a),
        pareto_count_b=len(designs_b),
    )


def comparison_csv(comparison: GroupComparison) -> str:
    """Table-shaped CSV: name, BF, medians, IQRs, means, SDs, evidence."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        [
            "name",
            "kind",
            "bayes_factor",
            "group_a_median",
            "group_a_q1",
            "group_a_q3",
            "group_b_median",
            "group_b_q1",
            "group_b_q3",
            "group_a_mean",
            "group_a_sd",
            "group_b_mean",
            "group_b_sd",
            "evidence",
            "symbol",
        ]
    )
    for row in comparison.rows:
        result = row.result
        writer.writerow(
            [
                row.name,
                row.kind,
                f"{result.bayes_factor:.6g}",
                f"{result.group_a_median:.4f}",
                f"{result.group_a_iqr[0]:.4f}",
                f"{result.group_a_iqr[1]:.4f}",
                f"{result.group_b_median:.4f}",
                f"{result.group_b_iqr[0]:.4f}",
                f"{result.group_b_iqr[1]:.4f}",
                f"{result.group_a_mean:.4f}",
                f"{result.group_a_sd:.4f}",
                f"{result.group_b_mean:.4f}",
                f"{result.group_b_sd:.4f}",
                row.label,
                row.symbol,
            ]
        )
    return buffer.getvalue()


def correlation_csv(correlation: CorrelationResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["", *correlation.names])
    for i, name in enumerate(correlation.names):
        writer.writerow(
            [name, *(f"{v:.4f}" for v in correlation.matrix[i])]
        )
    writer.writerow([])
    writer.writerow(["p_values", *correlation.names])
    for i, name in enumerate(correlation.names):
        writer.writerow(
            [name, *(f"{v:.3g}" for v in correlation.p_values[i])]
        )
    return buffer.getvalue()


def comparison_json(comparison: GroupComparison) -> str:
    def row_dict(row: ComparisonRow) -> dict:
        r = row.result
        return {
            "name": row.name,
            "kind": row.kind,
            "bayes_factor": r.bayes_factor,
            "evidence": r.evidence.value,
            "label": row.label,
            "symbol": row.symbol,
            "group_a": {
                "median": r.group_a_median,
                "iqr": list(r.group_a_iqr),
                "mean": r.group_a_mean,
                "sd": r.group_a_sd,
            },
            "group_b": {
                "median": r.group_b_median,
                "iqr": list(r.group_b_iqr),
                "mean": r.group_b_mean,
                "sd": r.group_b_sd,
            },
        }

    payload = {
        "pareto_counts": {
            "group_a": comparison.pareto_count_a,
            "group_b": comparison.pareto_count_b,
        },
        "rows": [row_dict(r) for r in comparison.rows],
        "correlation": {
            "names": list(comparison.correlation.names),
            "matrix": comparison.correlation.matrix.tolist(),
            "p_values": comparison.correlation.p_values.tolist(),
            "undefined_columns": list(comparison.correlation.undefined),
        },
        "traces": {
            key: {
                "run_indices": trace.run_indices,
                "mean_aggregate": trace.mean_aggregate,
                "smoothed": trace.smoothed,
                "objectives": trace.objectives,
            }
            for key, trace in comparison.traces.items()
        },
    }
    return json.dumps(payload, indent=2)


def _svg_polyline(xs, ys, transform, color, width, dasharray=None) -> str:
    points = " ".join(f"{transform(x, y)[0]:.1f},{transform(x, y)[1]:.1f}" for x, y in zip(xs, ys))
    dash = f' stroke-dasharray="{dasharray}"' if dasharray else ""
    return (
        f'<polyline fill="none" stroke="{color}" stroke-width="{width}"{dash} '
        f'points="{points}"/>'
    )


def trace_svg(
    comparison: GroupComparison,
    objective: str | None = None,
    title: str | None = None,
) -> str:
    """Self-contained line chart of both groups' raw and smoothed traces.

    Plots the aggregate score by default, or one named objective.
    """
    if title is None:
        title = f"{objective or 'aggregate'} score per run"
    width, height, margin = 640, 360, 48
    all_runs = [r for t in comparison.traces.values() for r in t.run_indices]
    x_max = max(all_runs) if all_runs else 1

    def transform(run, value):
        x = margin + (run - 1) / max(x_max - 1, 1) * (width - 2 * margin)
        y = height - margin - (value + 1.0) / 2.0 * (height - 2 * margin)
        return x, y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
    ]
    axis_y0 = transform(1, -1.0)[1]
    axis_y1 = transform(1, 1.0)[1]
    parts.append(
        f'<line x1="{margin}" y1="{axis_y0:.1f}" x2="{width - margin}" y2="{axis_y0:.1f}" '
        'stroke="#999" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{margin}" y1="{axis_y0:.1f}" x2="{margin}" y2="{axis_y1:.1f}" '
        'stroke="#999" stroke-width="1"/>'
    )
    for value in (-1.0, 0.0, 1.0):
        x, y = transform(1, value)
        parts.append(
            f'<text x="{margin - 8}" y="{y + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{value:g}</text>'
        )
    colors = {"group_a": "#1f77b4", "group_b": "#d62728"}
    for key, trace in comparison.traces.items():
        if not trace.run_indices:
            continue
        if objective is None:
            raw, smoothed = trace.mean_aggregate, trace.smoothed
        else:
            raw = trace.objectives[objective]["mean"]
            smoothed = trace.objectives[objective]["smoothed"]
        color = colors.get(key, "#333")
        parts.append(
            _svg_polyline(trace.run_indices, raw, transform, color, 1, "3,3")
        )
        parts.append(
            _svg_polyline(trace.run_indices, smoothed, transform, color, 2)
        )
        x, y = transform(trace.run_indices[-1], smoothed[-1])
        parts.append(
            f'<text x="{x + 4:.1f}" y="{y:.1f}" font-family="sans-serif" '
            f'font-size="11" fill="{color}">{key}</text>'
        )
    parts.append(
        f'<text x="{width / 2:.0f}" y="{height - 12}" text-anchor="middle" '
        'font-family="sans-serif" font-size="12">run</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts)
