import threading

import pytest
from fastapi.testclient import TestClient

from prefkit.cli import main
from prefkit.datasets import table1_path
from prefkit.service import create_app


@pytest.fixture
def client():
    with TestClient(create_app()) as c:
        yield c


def _create(client, items, **overrides):
    body = {"items": items, "mode": "weak", "strategy": "random", "seed": 7}
    body.update(overrides)
    response = client.post("/sessions", json=body)
    assert response.status_code == 201, response.text
    return response.json()


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"


def test_create_session_returns_first_pair(client):
    created = _create(client, ["s1", "s2", "s3"])
    assert created["session_id"]
    assert created["first_pair"] is not None
    assert created["stats"]["pairs_total"] == 3


def test_single_item_roster_is_rejected(client):
    response = client.post("/sessions", json={"items": ["s1"]})
    assert response.status_code == 400
    body = response.json()
    assert body["error"] == "TooFewItems"
    assert "detail" in body


def test_duplicate_items_rejected(client):
    response = client.post("/sessions", json={"items": ["s1", "s1"]})
    assert response.status_code == 400
    assert response.json()["error"] == "DuplicateItems"


def test_same_seed_gives_identical_first_pairs(client):
    a = _create(client, ["s1", "s2", "s3", "s4"], seed=99)
    b = _create(client, ["s1", "s2", "s3", "s4"], seed=99)
    assert a["first_pair"] == b["first_pair"]


def test_three_item_flow_infers_the_third_pair(client):
    created = _create(client, ["s1", "s2", "s3"])
    sid = created["session_id"]

    first = client.post(
        f"/sessions/{sid}/judgments", json={"left": "s1", "right": "s2", "relation": "left"}
    ).json()
    assert first["inferred"] == []
    assert not first["done"]

    second = client.post(
        f"/sessions/{sid}/judgments", json={"left": "s2", "right": "s3", "relation": "left"}
    ).json()
    assert second["inferred"] == [{"left": "s1", "right": "s3", "relation": "left"}]
    assert second["done"] and second["next"] is None
    assert second["stats"]["pairs_asked"] == 2
    assert second["stats"]["pairs_inferred"] == 1

    relation = client.get(f"/sessions/{sid}/relation").json()
    assert {(p["left"], p["right"], p["relation"]) for p in relation["pairs"]} == {
        ("s1", "s2", "left"),
        ("s2", "s3", "left"),
        ("s1", "s3", "left"),
    }


def test_submit_on_finished_session_is_conflict(client):
    sid = _create(client, ["s1", "s2"])["session_id"]
    ok = client.post(f"/sessions/{sid}/judgments", json={"left": "s1", "right": "s2", "relation": "tie"})
    assert ok.status_code == 200
    again = client.post(f"/sessions/{sid}/judgments", json={"left": "s1", "right": "s2", "relation": "left"})
    assert again.status_code == 409
    assert again.json()["error"] == "PairAlreadyDetermined"


def test_unknown_session_is_404(client):
    assert client.get("/sessions/deadbeef/next").status_code == 404
    assert client.get("/sessions/deadbeef/stats").status_code == 404


def test_tie_in_strict_mode_is_400(client):
    sid = _create(client, ["s1", "s2"], mode="strict")["session_id"]
    response = client.post(f"/sessions/{sid}/judgments", json={"left": "s1", "right": "s2", "relation": "tie"})
    assert response.status_code == 400
    assert response.json()["error"] == "TieInStrictMode"


def test_relation_before_done_is_conflict(client):
    sid = _create(client, ["s1", "s2", "s3"])["session_id"]
    response = client.get(f"/sessions/{sid}/relation")
    assert response.status_code == 409
    assert response.json()["error"] == "SessionNotDone"


def test_transcript_flags_sources(client):
    sid = _create(client, ["s1", "s2", "s3"], annotator="ann", criterion="fluency")["session_id"]
    client.post(f"/sessions/{sid}/judgments", json={"left": "s1", "right": "s2", "relation": "left"})
    client.post(f"/sessions/{sid}/judgments", json={"left": "s2", "right": "s3", "relation": "left"})
    transcript = client.get(f"/sessions/{sid}/transcript").json()
    assert transcript["annotator"] == "ann"
    assert [e["source"] for e in transcript["entries"]] == ["asked", "asked", "inferred"]


def test_session_summary_reports_status(client):
    sid = _create(client, ["s1", "s2"])["session_id"]
    assert client.get(f"/sessions/{sid}").json()["status"] == "active"
    client.post(f"/sessions/{sid}/judgments", json={"left": "s1", "right": "s2", "relation": "left"})
    assert client.get(f"/sessions/{sid}").json()["status"] == "done"


def test_stats_invariant_in_every_response(client):
    sid = _create(client, ["a", "b", "c", "d"], seed=5)["session_id"]
    while True:
        nxt = client.get(f"/sessions/{sid}/next").json()
        stats = nxt["stats"]
        assert stats["pairs_asked"] + stats["pairs_inferred"] <= stats["pairs_total"]
        if nxt["done"]:
            break
        pair = nxt["next"]
        body = client.post(
            f"/sessions/{sid}/judgments",
            json={"left": pair["left"], "right": pair["right"], "relation": "left"},
        ).json()
        assert body["stats"]["pairs_asked"] + body["stats"]["pairs_inferred"] <= stats["pairs_total"]


def test_analyze_endpoint_reports_fixture_kappas(client):
    content = table1_path().read_text()
    response = client.post("/analyze", json={"content": content, "format": "csv", "mode": "weak"})
    assert response.status_code == 200
    report = response.json()
    kappas = {e["annotator"]: e["kappa"]["decimal"] for e in report["entries"]}
    assert kappas == {"A1": "1.0000", "A2": "0.3571", "A3": "-0.2857"}


def test_analyze_endpoint_rejects_malformed_csv(client):
    response = client.post("/analyze", json={"content": "annotator,criterion,left,right,relation\nA1,q,a,a,>\n"})
    assert response.status_code == 400
    assert "line 2" in response.json()["detail"]


def test_cli_and_service_reports_are_byte_identical(client, tmp_path, capsys):
    cli_output = tmp_path / "report.json"
    code = main(["analyze", "--input", str(table1_path()), "--output", str(cli_output)])
    capsys.readouterr()
    assert code == 0
    response = client.post("/analyze", json={"content": table1_path().read_text(), "format": "csv"})
    assert response.content == cli_output.read_bytes()


def test_concurrent_submits_one_wins(client):
    sid = _create(client, ["s1", "s2", "s3"], seed=1)["session_id"]
    results = []

    def submit():
        response = client.post(
            f"/sessions/{sid}/judgments", json={"left": "s1", "right": "s2", "relation": "left"}
        )
        results.append(response.status_code)

    threads = [threading.Thread(target=submit) for _ in range(2)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(results) == [200, 409]


def test_journal_replay_restores_sessions(tmp_path):
    journal = tmp_path / "journal"
    with TestClient(create_app(journal_dir=journal)) as client:
        sid = _create(client, ["s1", "s2", "s3"], seed=4)["session_id"]
        client.post(f"/sessions/{sid}/judgments", json={"left": "s1", "right": "s2", "relation": "left"})
        before = client.get(f"/sessions/{sid}/next").json()

    with TestClient(create_app(journal_dir=journal)) as revived:
        after = revived.get(f"/sessions/{sid}/next").json()
        assert after == before
        stats = revived.get(f"/sessions/{sid}/stats").json()
        assert stats["pairs_asked"] == 1


def test_static_mount_serves_ui(tmp_path):
    (tmp_path / "index.html").write_text("<!doctype html><title>prefkit</title>")
    with TestClient(create_app(static_dir=tmp_path)) as client:
        response = client.get("/")
        assert response.status_code == 200
        assert "prefkit" in response.text
        # API routes keep priority over the static mount
        assert client.get("/health").json()["status"] == "ok"
