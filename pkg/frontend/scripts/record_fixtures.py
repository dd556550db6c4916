#!/usr/bin/env python3
"""Record server responses used by the explorer tests.

Run from the repository root after installing the Python package:

    python3 frontend/scripts/record_fixtures.py

The explorer performs no mathematics of its own, so its tests replay
these genuine server payloads through a stubbed fetch.
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from clusterkit.server import create_app

SEED = {
    "exchangeable": ["x1", "x2"],
    "frozen": ["x3", "x4"],
    "matrix": [[0, 1], [-1, 0], [0, -1], [0, 0]],
}

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> None:
    client = TestClient(create_app())
    fixtures = {}
    created = client.post("/sessions", json=SEED)
    assert created.status_code == 201
    fixtures["create"] = created.json()
    sid = fixtures["create"]["session"]

    first = client.post(f"/sessions/{sid}/mutate", json={"variable": "x1"})
    fixtures["mutate_x1"] = first.json()
    second = client.post(f"/sessions/{sid}/mutate", json={"variable": "x1"})
    fixtures["mutate_x1_again"] = second.json()
    undone = client.post(f"/sessions/{sid}/undo")
    fixtures["undo"] = undone.json()
    graph = client.get(f"/sessions/{sid}/graph", params={"budget": 2})
    fixtures["graph"] = graph.json()
    frozen_attempt = client.post(f"/sessions/{sid}/mutate", json={"variable": "x3"})
    fixtures["mutate_frozen_error"] = {
        "status": frozen_attempt.status_code,
        "body": frozen_attempt.json(),
    }

    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / "a2c_session.json"
    path.write_text(json.dumps(fixtures, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
