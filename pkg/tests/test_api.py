import pytest
from fastapi.testclient import TestClient

from infobell.api import create_app
from infobell.session import parse_session_csv, analyze_matrices, AnalysisConfig
from infobell.inference import DecisionPlan, HypothesisProbs


@pytest.fixture
def client(tmp_path):
    app = create_app(str(tmp_path / "data"))
    with TestClient(app) as c:
        yield c


def make_session(client, n=12, **overrides):
    body = {"n": n, "p0_h0": 0.012, "p0_h1": 0.85,
            "alpha": 0.001, "gamma": 0.99}
    body.update(overrides)
    resp = client.post("/sessions", json=body)
    assert resp.status_code == 201, resp.text
    return resp.json()


OUTCOME = {"a": 1, "a_prime": 0, "b": 0, "b_prime": 1,
           "sel_a": "a", "sel_b": "b_prime"}


class TestSessions:
    def test_create_includes_plan_and_variant(self, client):
        s = make_session(client)
        assert s["plan"]["n_req"] == 6
        assert s["plan"]["k0"] == 2
        assert s["estimator_variant"]["scheme"] == "cross-table"
        assert s["verdict"] == "InProgress"
        assert s["k_e"] == 0

    def test_outcome_flow_and_completion(self, client):
        s = make_session(client, n=12)
        sid = s["session_id"]
        for i in range(12):
            resp = client.post(f"/sessions/{sid}/experiments/1/outcomes",
                               json=OUTCOME)
            assert resp.status_code == 201, resp.text
        summary = client.get(f"/sessions/{sid}/summary").json()
        assert summary["experiments_complete"] == 1
        assert len(summary["deficits"]) == 1
        assert summary["current_experiment"] == 2

    def test_empty_session_summary(self, client):
        s = make_session(client)
        summary = client.get(f"/sessions/{s['session_id']}/summary").json()
        assert summary["verdict"] == "InProgress"
        assert summary["k_e"] == 0

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/nope/summary").status_code == 404
        assert client.post("/sessions/nope/experiments/1/outcomes",
                           json=OUTCOME).status_code == 404

    def test_completed_experiment_409(self, client):
        s = make_session(client, n=1)
        sid = s["session_id"]
        assert client.post(f"/sessions/{sid}/experiments/1/outcomes",
                           json=OUTCOME).status_code == 201
        resp = client.post(f"/sessions/{sid}/experiments/1/outcomes",
                           json=OUTCOME)
        assert resp.status_code == 409

    def test_future_experiment_409(self, client):
        s = make_session(client, n=2)
        resp = client.post(f"/sessions/{s['session_id']}/experiments/3/outcomes",
                           json=OUTCOME)
        assert resp.status_code == 409

    def test_ab_selection_under_three_domain_422(self, client):
        s = make_session(client, n=2)
        bad = dict(OUTCOME, sel_a="a", sel_b="b")
        resp = client.post(f"/sessions/{s['session_id']}/experiments/1/outcomes",
                           json=bad)
        assert resp.status_code == 422

    def test_invalid_outcome_422(self, client):
        s = make_session(client, n=2)
        bad = dict(OUTCOME, a=3)
        resp = client.post(f"/sessions/{s['session_id']}/experiments/1/outcomes",
                           json=bad)
        assert resp.status_code == 422

    def test_append_only_export_stability(self, client):
        s = make_session(client, n=1)
        sid = s["session_id"]
        client.post(f"/sessions/{sid}/experiments/1/outcomes", json=OUTCOME)
        before = client.get(f"/sessions/{sid}/export.csv").text
        client.post(f"/sessions/{sid}/experiments/2/outcomes", json=OUTCOME)
        after = client.get(f"/sessions/{sid}/export.csv").text
        # previously stored outcomes never change
        assert before.splitlines()[1] == after.splitlines()[1]
        assert len(after.splitlines()) == len(before.splitlines()) + 1


class TestComputeEndpoints:
    def test_plan(self, client):
        resp = client.get("/plan", params={"p0": 0.012, "p1": 0.85,
                                           "alpha": 0.001, "gamma": 0.99})
        body = resp.json()
        assert (body["n_req"], body["k0"]) == (6, 2)
        assert "estimator_variant" in body

    def test_curve(self, client):
        resp = client.get("/curve", params={"theta_min": 0, "theta_max": 100,
                                            "step": 0.05})
        body = resp.json()
        assert body["violation_fraction"] == pytest.approx(0.85, abs=0.01)
        assert len(body["points"]) == 2001

    def test_simulate_bounded(self, client):
        resp = client.get("/simulate", params={"experiments": 200_000})
        assert resp.status_code == 422

    def test_simulate(self, client):
        resp = client.get("/simulate", params={"case": "random",
                                               "outcomes": 4,
                                               "experiments": 500,
                                               "seed": 42})
        body = resp.json()
        assert body["n_valid"] == 500
        assert body["estimator_variant"]["selection_domain"] == "three"


class TestApiCliAgreement:
    def test_summary_equals_offline_analysis(self, client):
        s = make_session(client, n=3)
        sid = s["session_id"]
        import random

        rng = random.Random(9)
        sels = [("a", "b_prime"), ("a_prime", "b_prime"), ("a_prime", "b")]
        for e in (1, 2):
            for _ in range(3):
                sel = sels[rng.randrange(3)]
                a_val = rng.getrandbits(1)
                outcome = {
                    "a": a_val if sel[0] == "a" else rng.getrandbits(1),
                    "a_prime": rng.getrandbits(1),
                    "b": rng.getrandbits(1),
                    "b_prime": rng.getrandbits(1),
                    "sel_a": sel[0], "sel_b": sel[1],
                }
                r = client.post(f"/sessions/{sid}/experiments/{e}/outcomes",
                                json=outcome)
                assert r.status_code == 201
        summary = client.get(f"/sessions/{sid}/summary").json()
        csv_text = client.get(f"/sessions/{sid}/export.csv").text
        matrices = parse_session_csv(csv_text)
        plan = DecisionPlan(HypothesisProbs(0.012, 0.85), 0.001, 0.99,
                            summary["plan"]["n_req"], summary["plan"]["k0"])
        offline = analyze_matrices(matrices, plan, AnalysisConfig())
        assert [d["deficit_bits"] for d in summary["deficits"]] == \
            [r.deficit for r in offline.results]
        assert summary["k_e"] == offline.k_e
        assert summary["verdict"] == offline.verdict.decision.value
