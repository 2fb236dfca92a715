import json

import pytest
from fastapi.testclient import TestClient

from folex.service import create_app


@pytest.fixture(scope="module")
def client() -> TestClient:
    return TestClient(create_app())


def test_list_exercises(client):
    r = client.get("/api/exercises")
    assert r.status_code == 200
    entries = r.json()
    assert len(entries) == 17
    kinds = {e["type"] for e in entries}
    assert kinds == {"dictation", "grid"}


def test_listing_never_leaks_answers(client):
    r = client.get("/api/exercises")
    blob = json.dumps(r.json())
    assert '"target"' not in blob
    assert '"accepted"' not in blob
    for entry in r.json():
        assert "target" not in entry
        assert "accepted" not in entry


def test_grid_entry_shape(client):
    r = client.get("/api/exercises/problem-01-cross")
    assert r.status_code == 200
    entry = r.json()
    assert entry["type"] == "grid"
    assert entry["grid_size"] == 21
    assert entry["constants"]["u"] == [0, 0]
    assert len(entry["yellow"]) == 41  # the problem statement itself
    assert "description" in entry


def test_dictation_entry_shape(client):
    r = client.get("/api/exercises/density")
    entry = r.json()
    assert entry == {
        "id": "density",
        "type": "dictation",
        "prompt": "Strictly between any two distinct real numbers, there is a third one.",
    }


def test_unknown_exercise_404(client):
    r = client.get("/api/exercises/nope")
    assert r.status_code == 404
    assert r.json() == {"error": "unknown_exercise"}
    r = client.post("/api/exercises/nope/check", json={"formula": "x=u"})
    assert r.status_code == 404


def test_check_correct_grid(client):
    r = client.post(
        "/api/exercises/problem-01-cross/check",
        json={"formula": "dist(u,x)=dist(x,u)"},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["category"] == "correct"
    assert body["coloring"]["red"] == []
    assert body["coloring"]["yellow"] == []
    assert len(body["coloring"]["green"]) == 41


def test_check_sufficient_grid(client):
    r = client.post(
        "/api/exercises/problem-01-cross/check", json={"formula": "rechts(u,x)"}
    )
    body = r.json()
    assert body["category"] == "sufficient_not_necessary"
    assert len(body["coloring"]["green"]) == 10
    green = body["coloring"]["green"]
    assert green == sorted(green)


def test_check_rejected_is_200_without_coloring(client):
    r = client.post("/api/exercises/density/check", json={"formula": "x<"})
    assert r.status_code == 200
    body = r.json()
    assert body["category"] == "rejected"
    assert body["reason"]["kind"] == "parse_error"
    assert body["reason"]["offset"] == 2
    assert "coloring" not in body

    r = client.post(
        "/api/exercises/problem-01-cross/check", json={"formula": "rechts(x,y)"}
    )
    body = r.json()
    assert body["category"] == "rejected"
    assert body["reason"]["kind"] == "free_variable_count"
    assert "coloring" not in body


def test_check_correct_dictation(client):
    r = client.post(
        "/api/exercises/strictly-increasing/check",
        json={"formula": "Au:Av:(u<v->f(u)<f(v))"},
    )
    body = r.json()
    assert body["category"] == "correct"
    assert "coloring" not in body


def test_malformed_body_400(client):
    r = client.post(
        "/api/exercises/density/check",
        content=b"{not json",
        headers={"Content-Type": "application/json"},
    )
    assert r.status_code == 400
    r = client.post("/api/exercises/density/check", json={"formula": ""})
    assert r.status_code == 400
    r = client.post("/api/exercises/density/check", json={"wrong": "key"})
    assert r.status_code == 400
    r = client.post("/api/exercises/density/check", json={"formula": "x<y", "extra": 1})
    assert r.status_code == 400


def test_statelessness(client):
    seq = [
        ("problem-01-cross", "rechts(u,x)"),
        ("density", "Ax:Ay:(x<y->Ez:(x<z&z<y))"),
        ("problem-01-cross", "rechts(u,x)"),
    ]
    first = [
        client.post(f"/api/exercises/{ex}/check", json={"formula": f}).json()
        for ex, f in seq
    ]
    second = [
        client.post(f"/api/exercises/{ex}/check", json={"formula": f}).json()
        for ex, f in reversed(seq)
    ]
    assert first[0] == first[2] == second[0] == second[2]
    assert first[1] == second[1]


def test_coloring_sets_disjoint(client):
    r = client.post(
        "/api/exercises/problem-04-border/check", json={"formula": "Ey:nachbar(x,y)"}
    )
    c = r.json()["coloring"]
    green = {tuple(p) for p in c["green"]}
    red = {tuple(p) for p in c["red"]}
    yellow = {tuple(p) for p in c["yellow"]}
    assert not (green & red) and not (green & yellow) and not (red & yellow)


def test_cors_configurable():
    app = create_app(cors_origin="http://localhost:5173")
    with TestClient(app) as c:
        r = c.get("/api/exercises", headers={"Origin": "http://localhost:5173"})
        assert r.headers.get("access-control-allow-origin") == "http://localhost:5173"
