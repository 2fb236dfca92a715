"""Capture service responses used by the frontend contract tests.

Run from the repository root after changing the service:
    python3 scripts/record_ui_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from folex.service import create_app

CASES = [
    ("problem-01-cross", "dist(u,x)=dist(x,u)"),
    ("problem-01-cross", "rechts(u,x)"),
    ("problem-01-cross", "Ey:nachbar(x,y)"),
    ("problem-05-ring", "(nachbar(a,x)v~dist(u,x)=dist(u,a))"),
    ("problem-01-cross", "rechts(u,"),
    ("problem-01-cross", "rechts(x,y)"),
    ("problem-05-ring", "Ea:nachbar(a,x)"),
    ("strictly-increasing", "Au:Av:(u<v->f(u)<f(v))"),
    ("strictly-increasing", "Ax:Ay:f(x)<f(y)"),
    ("strictly-increasing", "x<"),
]


def main():
    client = TestClient(create_app())
    records = []
    for ex_id, formula in CASES:
        entry = client.get(f"/api/exercises/{ex_id}")
        assert entry.status_code == 200, ex_id
        resp = client.post(f"/api/exercises/{ex_id}/check", json={"formula": formula})
        assert resp.status_code == 200, (ex_id, formula)
        records.append(
            {"exercise": entry.json(), "formula": formula, "response": resp.json()}
        )
    out = Path(__file__).resolve().parent.parent / (
        "frontend/tests/fixtures/recorded_responses.json"
    )
    out.write_text(
        json.dumps(records, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    print(f"wrote {out} ({len(records)} records)")


if __name__ == "__main__":
    main()
