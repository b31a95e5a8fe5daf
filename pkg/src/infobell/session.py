"""Session persistence and file formats.

A session fixes a decision plan and an outcome count n per experiment, then
accumulates outcomes append-only. Storage is one newline-delimited JSON file
per session (auditability over query speed); CSV is the interchange format
for whole sessions.
"""
from __future__ import annotations

import csv
import io
import json
import os
import time
import uuid
from dataclasses import dataclass, field
from typing import Iterable, Optional

from filelock import FileLock

from .entropy import DeficitResult, DeficitScheme, deficit_pseudo
from .errors import DomainError, ParseError, ShapeError
from .inference import Decision, DecisionPlan, HypothesisProbs, Verdict, verdict
from .model import (
    ColumnId,
    ExperimentMatrix,
    OutcomeRecord,
    SelectionDomain,
    SelectionMask,
)

CSV_HEADER = "experiment,outcome,a,a_prime,b,b_prime,sel_a,sel_b"

_COL_BY_NAME = {
    "a": ColumnId.A,
    "a_prime": ColumnId.A_PRIME,
    "b": ColumnId.B,
    "b_prime": ColumnId.B_PRIME,
}


@dataclass(frozen=True)
class AnalysisConfig:
    """Estimator variants in force for an analysis."""

    delta: float = 0.0
    selection_domain: SelectionDomain = SelectionDomain.THREE_ENTANGLED_PAIRS
    scheme: DeficitScheme = DeficitScheme.CROSS_TABLE
    eq2_denominator: str = "conditional"

    def __post_init__(self):
        if self.delta < 0:
            raise DomainError("delta must be >= 0")
        if self.eq2_denominator not in ("conditional", "marginal"):
            raise DomainError("eq2_denominator must be conditional or marginal")

    def as_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "selection_domain": self.selection_domain.value,
            "eq2_denominator": self.eq2_denominator,
            "delta": self.delta,
        }


def _parse_bit(value: str, name: str, line: int) -> int:
    if value not in ("0", "1"):
        raise ParseError(f"{name} must be 0 or 1, got {value!r}", line)
    return int(value)


def parse_session_csv(stream) -> list[ExperimentMatrix]:
    """Parse the canonical session CSV into one matrix per experiment.

    Experiments must be rectangular (equal n) and outcomes numbered 1..n in
    order within each experiment.
    """
    if isinstance(stream, (str, bytes)):
        stream = io.StringIO(stream.decode() if isinstance(stream, bytes) else stream)
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty file", 1)
    if [h.strip() for h in header] != CSV_HEADER.split(","):
        raise ParseError(f"header must be exactly {CSV_HEADER!r}", 1)
    order: list[str] = []
    outcomes: dict[str, list[OutcomeRecord]] = {}
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 8:
            raise ParseError(f"expected 8 fields, got {len(row)}", lineno)
        exp_id, outcome_no, a, ap, b, bp, sel_a, sel_b = [f.strip() for f in row]
        bits = {
            "a": _parse_bit(a, "a", lineno),
            "a_prime": _parse_bit(ap, "a_prime", lineno),
            "b": _parse_bit(b, "b", lineno),
            "b_prime": _parse_bit(bp, "b_prime", lineno),
        }
        if sel_a not in ("a", "a_prime"):
            raise ParseError(f"sel_a must be a or a_prime, got {sel_a!r}", lineno)
        if sel_b not in ("b", "b_prime"):
            raise ParseError(f"sel_b must be b or b_prime, got {sel_b!r}", lineno)
        try:
            expected = int(outcome_no)
        except ValueError:
            raise ParseError(f"outcome must be an integer, got {outcome_no!r}",
                             lineno)
        if exp_id not in outcomes:
            order.append(exp_id)
            outcomes[exp_id] = []
        if expected != len(outcomes[exp_id]) + 1:
            raise ParseError(
                f"outcome numbering for experiment {exp_id!r} must be "
                f"1..n in order; expected {len(outcomes[exp_id]) + 1}, "
                f"got {expected}", lineno)
        mask = SelectionMask(_COL_BY_NAME[sel_a], _COL_BY_NAME[sel_b])
        outcomes[exp_id].append(
            OutcomeRecord(bits["a"], bits["a_prime"], bits["b"],
                          bits["b_prime"], mask))
    if not order:
        raise ParseError("no data rows", 2)
    sizes = {len(outcomes[e]) for e in order}
    if len(sizes) != 1:
        raise ShapeError(f"experiments have unequal outcome counts: {sorted(sizes)}")
    return [ExperimentMatrix(tuple(outcomes[e])) for e in order]


def write_session_csv(matrices: Iterable[ExperimentMatrix]) -> str:
    """Serialize matrices to the canonical CSV (experiments numbered 1..)."""
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\r\n")
    writer = csv.writer(buf)
    for e_idx, matrix in enumerate(matrices, start=1):
        for o_idx, o in enumerate(matrix.outcomes, start=1):
            writer.writerow([
                e_idx, o_idx, o.a, o.a_prime, o.b, o.b_prime,
                o.mask.sel_a.value, o.mask.sel_b.value,
            ])
    return buf.getvalue()


@dataclass
class SessionRecord:
    session_id: str
    plan: DecisionPlan
    n: int
    config: AnalysisConfig
    experiments: list[ExperimentMatrix] = field(default_factory=list)
    pending: list[OutcomeRecord] = field(default_factory=list)
    created: float = 0.0
    updated: float = 0.0

    @property
    def n_complete(self) -> int:
        return len(self.experiments)

    @property
    def current_experiment(self) -> int:
        """1-based index of the experiment the next outcome belongs to."""
        return len(self.experiments) + 1


@dataclass(frozen=True)
class SessionAnalysis:
    results: list[DeficitResult]
    k_e: int
    verdict: Verdict


def analyze_session(session: SessionRecord,
                    config: Optional[AnalysisConfig] = None) -> SessionAnalysis:
    """Per-experiment deficits over the complete experiments plus the
    sequential verdict under the session's plan."""
    cfg = config or session.config
    results = [deficit_pseudo(m, cfg.scheme) for m in session.experiments]
    k_e = sum(1 for r in results if r.deficit > cfg.delta + 1e-12)
    v = verdict(k_e, len(results), session.plan, delta=cfg.delta)
    return SessionAnalysis(results, k_e, v)


def analyze_matrices(matrices: list[ExperimentMatrix], plan: DecisionPlan,
                     config: AnalysisConfig) -> SessionAnalysis:
    """Analysis of a parsed CSV against a plan (the CLI path)."""
    if not matrices:
        raise ShapeError("no experiments to analyze")
    sizes = {m.n for m in matrices}
    if len(sizes) != 1:
        raise ShapeError(f"experiments have unequal outcome counts: {sorted(sizes)}")
    results = [deficit_pseudo(m, config.scheme) for m in matrices]
    k_e = sum(1 for r in results if r.deficit > config.delta + 1e-12)
    v = verdict(k_e, len(results), plan, delta=config.delta)
    return SessionAnalysis(results, k_e, v)


class SessionStore:
    """Append-only NDJSON files, one per session, under data_dir.

    One writer at a time per session (file lock); readers reconstruct the
    session from the log on every request, so any instance can serve any
    session file.
    """

    def __init__(self, data_dir: str):
        self.data_dir = data_dir
        os.makedirs(data_dir, exist_ok=True)

    def _path(self, session_id: str) -> str:
        safe = "".join(c for c in session_id if c.isalnum() or c in "-_")
        if safe != session_id or not safe:
            raise DomainError(f"invalid session id {session_id!r}")
        return os.path.join(self.data_dir, f"{session_id}.ndjson")

    def _lock(self, session_id: str) -> FileLock:
        return FileLock(self._path(session_id) + ".lock")

    def create(self, n: int, plan: DecisionPlan,
               config: AnalysisConfig) -> SessionRecord:
        if n < 1:
            raise DomainError("n must be >= 1")
        session_id = uuid.uuid4().hex
        now = time.time()
        header = {
            "type": "session",
            "session_id": session_id,
            "n": n,
            "plan": {
                "p0_h0": plan.probs.p0_h0,
                "p0_h1": plan.probs.p0_h1,
                "alpha": plan.alpha,
                "gamma": plan.gamma,
                "n_req": plan.n_req,
                "k0": plan.k0,
            },
            "config": config.as_dict(),
            "created": now,
        }
        with self._lock(session_id):
            with open(self._path(session_id), "x", encoding="utf-8") as fh:
                fh.write(json.dumps(header) + "\n")
        return self.load(session_id)

    def exists(self, session_id: str) -> bool:
        try:
            return os.path.exists(self._path(session_id))
        except DomainError:
            return False

    def load(self, session_id: str) -> SessionRecord:
        path = self._path(session_id)
        if not os.path.exists(path):
            raise KeyError(session_id)
        with open(path, encoding="utf-8") as fh:
            lines = [json.loads(line) for line in fh if line.strip()]
        header = lines[0]
        cfg = AnalysisConfig(
            delta=header["config"]["delta"],
            selection_domain=SelectionDomain(header["config"]["selection_domain"]),
            scheme=DeficitScheme(header["config"]["scheme"]),
            eq2_denominator=header["config"]["eq2_denominator"],
        )
        plan = DecisionPlan(
            HypothesisProbs(header["plan"]["p0_h0"], header["plan"]["p0_h1"]),
            header["plan"]["alpha"], header["plan"]["gamma"],
            header["plan"]["n_req"], header["plan"]["k0"],
        )
        n = header["n"]
        session = SessionRecord(
            session_id=session_id, plan=plan, n=n, config=cfg,
            created=header["created"], updated=header["created"],
        )
        current: list[OutcomeRecord] = []
        for rec in lines[1:]:
            if rec["type"] != "outcome":
                continue
            mask = SelectionMask(_COL_BY_NAME[rec["sel_a"]],
                                 _COL_BY_NAME[rec["sel_b"]])
            current.append(OutcomeRecord(rec["a"], rec["a_prime"], rec["b"],
                                         rec["b_prime"], mask))
            session.updated = rec.get("ts", session.updated)
            if len(current) == n:
                session.experiments.append(ExperimentMatrix(tuple(current)))
                current = []
        session.pending = current
        return session

    def append_outcome(self, session_id: str, experiment_index: int,
                       outcome: OutcomeRecord) -> SessionRecord:
        """Append one outcome to the first incomplete experiment.

        experiment_index is 1-based and must equal the current experiment;
        posting to a completed or future experiment is a sequence conflict.
        """
        with self._lock(session_id):
            session = self.load(session_id)
            outcome.check_domain(session.config.selection_domain)
            if experiment_index != session.current_experiment:
                raise IndexError(
                    f"experiment {experiment_index} is not open; current is "
                    f"{session.current_experiment}"
                )
            rec = {
                "type": "outcome",
                "experiment": experiment_index,
                "outcome": len(session.pending) + 1,
                "a": outcome.a,
                "a_prime": outcome.a_prime,
                "b": outcome.b,
                "b_prime": outcome.b_prime,
                "sel_a": outcome.mask.sel_a.value,
                "sel_b": outcome.mask.sel_b.value,
                "ts": time.time(),
            }
            with open(self._path(session_id), "a", encoding="utf-8") as fh:
                fh.write(json.dumps(rec) + "\n")
        return self.load(session_id)

    def export_csv(self, session_id: str) -> str:
        """Canonical CSV of the session's complete experiments."""
        session = self.load(session_id)
        return write_session_csv(session.experiments)

    def list_sessions(self) -> list[str]:
        return sorted(
            f[:-7] for f in os.listdir(self.data_dir) if f.endswith(".ndjson")
        )


def summary_dict(session: SessionRecord) -> dict:
    """The JSON summary the service and the console share."""
    analysis = analyze_session(session)
    return {
        "session_id": session.session_id,
        "n": session.n,
        "plan": {
            "p0_h0": session.plan.probs.p0_h0,
            "p0_h1": session.plan.probs.p0_h1,
            "alpha": session.plan.alpha,
            "gamma": session.plan.gamma,
            "n_req": session.plan.n_req,
            "k0": session.plan.k0,
        },
        "estimator_variant": session.config.as_dict(),
        "experiments_complete": session.n_complete,
        "current_experiment": session.current_experiment,
        "outcomes_entered": len(session.pending),
        "deficits": [
            {"experiment": i + 1, "deficit_bits": r.deficit,
             "h_ab_hd": r.h_ab_hd}
            for i, r in enumerate(analysis.results)
        ],
        "k_e": analysis.k_e,
        "verdict": analysis.verdict.decision.value,
        "early": analysis.verdict.early,
    }
