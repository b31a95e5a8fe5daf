"""JSON-over-HTTP service backing the live experiment console.

Stateless above the session store: every request reconstructs the session
from its append-only log. Campaign simulations run on a bounded worker pool.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from .campaign import CampaignConfig, run_campaign
from .entropy import DeficitScheme
from .errors import DomainError, InfobellError
from .inference import HypothesisProbs, find_plan
from .model import CaseKind, ColumnId, OutcomeRecord, SelectionDomain, SelectionMask
from .quantum import curve as quantum_curve
from .quantum import violation_fraction
from .session import AnalysisConfig, SessionStore, summary_dict

SIMULATE_MAX_EXPERIMENTS = 100_000

_COL = {"a": ColumnId.A, "a_prime": ColumnId.A_PRIME,
        "b": ColumnId.B, "b_prime": ColumnId.B_PRIME}


class SessionCreate(BaseModel):
    n: int = Field(ge=1, le=10_000)
    p0_h0: float = Field(gt=0, lt=1)
    p0_h1: float = Field(gt=0, lt=1)
    alpha: float = Field(default=0.001, gt=0, lt=1)
    gamma: float = Field(default=0.99, gt=0, lt=1)
    delta: float = Field(default=0.0, ge=0)
    selection_domain: Literal["three", "four"] = "three"
    scheme: Literal["cross-table", "full-matrix"] = "cross-table"


class OutcomePost(BaseModel):
    a: int = Field(ge=0, le=1)
    a_prime: int = Field(ge=0, le=1)
    b: int = Field(ge=0, le=1)
    b_prime: int = Field(ge=0, le=1)
    sel_a: Literal["a", "a_prime"]
    sel_b: Literal["b", "b_prime"]


def _variant(config: AnalysisConfig) -> dict:
    return config.as_dict()


def create_app(data_dir: Optional[str] = None) -> FastAPI:
    store = SessionStore(data_dir or os.environ.get("DATA_DIR", "./infobell-data"))
    pool = ThreadPoolExecutor(max_workers=2)
    app = FastAPI(title="infobell", version="0.1.0")

    def _load_or_404(session_id: str):
        try:
            return store.load(session_id)
        except (KeyError, DomainError):
            raise HTTPException(404, f"unknown session {session_id!r}")

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionCreate):
        try:
            plan = find_plan(HypothesisProbs(body.p0_h0, body.p0_h1),
                             body.alpha, body.gamma)
        except InfobellError as exc:
            raise HTTPException(422, str(exc))
        config = AnalysisConfig(
            delta=body.delta,
            selection_domain=SelectionDomain.THREE_ENTANGLED_PAIRS
            if body.selection_domain == "three" else SelectionDomain.FOUR_PAIRS,
            scheme=DeficitScheme(body.scheme),
        )
        session = store.create(body.n, plan, config)
        return summary_dict(session)

    @app.post("/sessions/{session_id}/experiments/{k}/outcomes", status_code=201)
    def post_outcome(session_id: str, k: int, body: OutcomePost):
        session = _load_or_404(session_id)
        mask = SelectionMask(_COL[body.sel_a], _COL[body.sel_b])
        outcome = OutcomeRecord(body.a, body.a_prime, body.b, body.b_prime, mask)
        try:
            outcome.check_domain(session.config.selection_domain)
        except DomainError as exc:
            raise HTTPException(422, str(exc))
        try:
            session = store.append_outcome(session_id, k, outcome)
        except IndexError as exc:
            raise HTTPException(409, str(exc))
        return summary_dict(session)

    @app.get("/sessions/{session_id}/summary")
    def get_summary(session_id: str):
        return summary_dict(_load_or_404(session_id))

    @app.get("/sessions/{session_id}/export.csv", response_class=PlainTextResponse)
    def export_csv(session_id: str):
        _load_or_404(session_id)
        return store.export_csv(session_id)

    @app.get("/plan")
    def get_plan(p0: float, p1: float, alpha: float = 0.001,
                 gamma: float = 0.99):
        try:
            plan = find_plan(HypothesisProbs(p0, p1), alpha, gamma)
        except InfobellError as exc:
            raise HTTPException(422, str(exc))
        return {
            "n_req": plan.n_req,
            "k0": plan.k0,
            "estimator_variant": _variant(AnalysisConfig()),
        }

    @app.get("/curve")
    def get_curve(theta_min: float = 0.0, theta_max: float = 100.0,
                  step: float = 0.01):
        try:
            pts = quantum_curve(theta_min, theta_max, step)
            frac = violation_fraction(theta_min, theta_max, step)
        except InfobellError as exc:
            raise HTTPException(422, str(exc))
        return {
            "violation_fraction": frac,
            "points": [[p.theta_degrees, p.deficit_bits] for p in pts],
            "estimator_variant": _variant(AnalysisConfig()),
        }

    @app.get("/simulate")
    def get_simulate(case: str = "random", outcomes: int = 12,
                     experiments: int = 10_000, seed: int = 0,
                     selection: str = "three", delta: float = 0.0,
                     scheme: str = "cross-table"):
        if experiments > SIMULATE_MAX_EXPERIMENTS:
            raise HTTPException(
                422, f"experiments capped at {SIMULATE_MAX_EXPERIMENTS}")
        try:
            config = CampaignConfig(
                case=CaseKind.STOCHASTIC if case in ("random", "stochastic")
                else CaseKind.ANTICORRELATED,
                n=outcomes, experiments=experiments, master_seed=seed,
                domain=SelectionDomain.THREE_ENTANGLED_PAIRS
                if selection == "three" else SelectionDomain.FOUR_PAIRS,
                delta=delta, scheme=DeficitScheme(scheme),
            )
        except (InfobellError, ValueError) as exc:
            raise HTTPException(422, str(exc))
        future = pool.submit(run_campaign, config)
        stats, _ = future.result()
        return {
            "case": config.case.value,
            "outcomes": config.n,
            "experiments": config.experiments,
            "seed": config.master_seed,
            "estimator_variant": {
                "scheme": config.scheme.value,
                "selection_domain": config.domain.value,
                "eq2_denominator": "conditional",
                "delta": config.delta,
            },
            **stats.as_dict(),
        }

    repo_root = os.path.dirname(os.path.dirname(
        os.path.dirname(os.path.abspath(__file__))))
    frontend_dist = os.environ.get(
        "INFOBELL_CONSOLE_DIST", os.path.join(repo_root, "frontend", "dist"))
    if os.path.isdir(frontend_dist):
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=frontend_dist, html=True),
                  name="console")

    return app
