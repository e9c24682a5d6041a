"""Per-participant optimization sessions: the 30-run rating loop.

A session proposes designs (Sobol seeds, then qEHVI), accepts one rating at a
time, stops early on an all-perfect rating, and persists every run as one
JSON line.  Proposals are pure functions of the logged history and seeds, so
a persisted session replays to byte-identical designs.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import design_space, objectives
from .design_space import PhysicalDesign, to_physical
from .engine import History, OptimizerConfig, propose_next
from .objectives import RawRatings, aggregate, is_perfect, normalize
from .simulate import SimulatedUser

SCHEMA_VERSION = 1

CONDITIONS = ("with_motion", "no_motion")

PHASE_SEEDING = "seeding"
PHASE_OPTIMIZATION = "optimization"
PHASE_COMPLETE = "complete"


class SessionError(RuntimeError):
    pass


class SessionFileError(ValueError):
    """A session log could not be parsed."""


@dataclass
class RunRecord:
    run_index: int
    design: np.ndarray
    physical: PhysicalDesign
    raw: RawRatings
    objectives: np.ndarray
    proposal_kind: str  # "sobol" | "qehvi"
    timestamp: str

    def to_dict(self) -> dict:
        return {
            "record": "run",
            "run_index": self.run_index,
            "design": [float(v) for v in self.design],
            "physical": self.physical.to_dict(),
            "raw": self.raw.to_dict(),
            "objectives": [float(v) for v in self.objectives],
            "proposal_kind": self.proposal_kind,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunRecord":
        return cls(
            run_index=int(data["run_index"]),
            design=np.asarray(data["design"], dtype=float),
            physical=PhysicalDesign.from_dict(data["physical"]),
            raw=RawRatings.from_dict(data["raw"]),
            objectives=np.asarray(data["objectives"], dtype=float),
            proposal_kind=data["proposal_kind"],
            timestamp=data["timestamp"],
        )


@dataclass
class SessionState:
    session_id: str
    participant_label: str
    condition: str  # metadata tag only; the engine ignores it
    config: OptimizerConfig
    created_at: str
    records: list[RunRecord] = field(default_factory=list)
    _pending_design: np.ndarray | None = field(default=None, repr=False)

    @property
    def run_index(self) -> int:
        """Index of the run currently awaiting a rating (records + 1)."""
        return len(self.records) + 1

    @property
    def phase(self) -> str:
        if self.records:
            last = self.records[-1]
            if is_perfect(last.raw) or last.run_index >= self.config.total_runs:
                return PHASE_COMPLETE
        return (
            PHASE_SEEDING
            if self.run_index <= self.config.seeding_runs
            else PHASE_OPTIMIZATION
        )

    @property
    def complete(self) -> bool:
        return self.phase == PHASE_COMPLETE

    def history(self) -> History:
        if not self.records:
            return History()
        return History(
            designs=np.array([r.design for r in self.records]),
            objectives=np.array([r.objectives for r in self.records]),
        )

    def proposal_kind(self) -> str:
        return "sobol" if self.run_index <= self.config.seeding_runs else "qehvi"

    def pending_design(self) -> np.ndarray:
        """The proposed design awaiting a rating (recomputed on demand)."""
        if self.complete:
            raise SessionError("session is complete; no design is pending")
        if self._pending_design is None:
            self._pending_design = propose_next(
                self.history(), self.config, self.run_index
            )
        return self._pending_design

    def aggregate_trace(self) -> list[float]:
        return [aggregate(r.objectives) for r in self.records]


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def start_session(
    participant_label: str,
    condition: str,
    config: OptimizerConfig | None = None,
    session_id: str | None = None,
) -> SessionState:
    """New session at run 1; the first proposal is the first Sobol seed."""
    if condition not in CONDITIONS:
        raise ValueError(f"condition must be one of {CONDITIONS}, got {condition!r}")
    state = SessionState(
        session_id=session_id or uuid.uuid4().hex,
        participant_label=participant_label,
        condition=condition,
        config=config or OptimizerConfig(),
        created_at=_now(),
    )
    state.pending_design()
    return state


@dataclass(frozen=True)
class SubmitResult:
    complete: bool
    run_index: int | None  # next run awaiting a rating
    next_design: np.ndarray | None


def submit_rating(state: SessionState, raw: RawRatings) -> SubmitResult:
    """Record a rating for the pending design and advance the loop."""
    if state.complete:
        raise SessionError("session is complete; no further ratings accepted")
    design = state.pending_design()
    record = RunRecord(
        run_index=state.run_index,
        design=design,
        physical=to_physical(design),
        raw=raw,
        objectives=normalize(raw),
        proposal_kind=state.proposal_kind(),
        timestamp=_now(),
    )
    state.records.append(record)
    state._pending_design = None
    if state.complete:
        return SubmitResult(complete=True, run_index=None, next_design=None)
    return SubmitResult(
        complete=False,
        run_index=state.run_index,
        next_design=state.pending_design(),
    )


def run_simulated(
    user: SimulatedUser,
    config: OptimizerConfig | None = None,
    participant_label: str = "simulated",
    condition: str = "no_motion",
    session_id: str | None = None,
) -> SessionState:
    """Drive a full session with a simulated user's ratings."""
    state = start_session(participant_label, condition, config, session_id)
    rng = np.random.default_rng(user.rng_seed)
    while not state.complete:
        rating = user.rate(state.pending_design(), rng)
        submit_rating(state, rating)
    return state


def _header_dict(state: SessionState) -> dict:
    return {
        "record": "header",
        "schema_version": SCHEMA_VERSION,
        "session_id": state.session_id,
        "participant_label": state.participant_label,
        "condition": state.condition,
        "created_at": state.created_at,
        "config": state.config.to_dict(),
        "parameters": list(design_space.parameter_names()),
        "objectives": list(objectives.OBJECTIVE_NAMES),
    }


def dumps_session(state: SessionState) -> str:
    """Serialize to JSONL: header line plus one line per run record."""
    lines = [json.dumps(_header_dict(state), sort_keys=True, separators=(",", ":"))]
    for record in state.records:
        lines.append(
            json.dumps(record.to_dict(), sort_keys=True, separators=(",", ":"))
        )
    return "\n".join(lines) + "\n"


def export_session(state: SessionState, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_session(state))


def loads_session(text: str) -> SessionState:
    lines = text.splitlines()
    if not lines:
        raise SessionFileError("empty session log")
    parsed = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            parsed.append((lineno, json.loads(line)))
        except json.JSONDecodeError as exc:
            raise SessionFileError(f"line {lineno}: invalid JSON ({exc.msg})") from exc

    lineno, header = parsed[0]
    if header.get("record") != "header":
        raise SessionFileError(f"line {lineno}: expected header record")
    version = header.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SessionFileError(
            f"schema version mismatch: file has {version}, this build reads {SCHEMA_VERSION}"
        )
    if header.get("parameters") != list(design_space.parameter_names()):
        raise SessionFileError("parameter ordering in file differs from this build")

    state = SessionState(
        session_id=header["session_id"],
        participant_label=header["participant_label"],
        condition=header["condition"],
        config=OptimizerConfig.from_dict(header["config"]),
        created_at=header["created_at"],
    )
    for lineno, data in parsed[1:]:
        if data.get("record") != "run":
            raise SessionFileError(f"line {lineno}: expected run record")
        try:
            record = RunRecord.from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise SessionFileError(f"line {lineno}: bad run record ({exc})") from exc
        if record.run_index != len(state.records) + 1:
            raise SessionFileError(
                f"line {lineno}: run index {record.run_index} out of order"
            )
        # derived fields must agree with their sources; normalize and the
        # physical mapping are deterministic, so equality is exact
        if not np.array_equal(record.objectives, normalize(record.raw)):
            raise SessionFileError(
                f"line {lineno}: objectives do not match the stored ratings"
            )
        if record.physical != to_physical(record.design):
            raise SessionFileError(
                f"line {lineno}: physical design does not match the design vector"
            )
        state.records.append(record)
    return state


def import_session(path) -> SessionState:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_session(fh.read())


def replay_session(state: SessionState) -> list[tuple[int, np.ndarray, np.ndarray]]:
    """Re-propose every design from the logged history and config.

    Returns (run_index, logged, reproposed) for any mismatching run; an empty
    list means the log replays byte-identically.
    """
    mismatches = []
    history = History()
    for record in state.records:
        proposal = propose_next(history, state.config, record.run_index)
        if not np.array_equal(proposal, record.design):
            mismatches.append((record.run_index, record.design, proposal))
        history = history.extended(record.design, record.objectives)
    return mismatches
