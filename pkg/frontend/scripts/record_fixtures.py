#!/usr/bin/env python3
"""Record service fixtures for the frontend contract tests.

Runs the installed cvdrec service in-process and captures real responses,
so the UI tests exercise exactly what the HTTP API returns. Rerun after
any engine or catalog change, then commit the updated files:

    python3 frontend/scripts/record_fixtures.py
"""
from __future__ import annotations

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from cvdrec.intake import parse_questionnaire, serialize
from cvdrec.service import create_app

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# What a person enters for the reference profile: a 49-year-old smoker with
# raised blood pressure, sedentary habits and a poor diet.
WORKED_ENTRIES = {
    "x2": 49,
    "x3": 170,
    "x4": 74,
    "x11": 3.0,
    "x12": 160,
    "x14": 1,
    "x15": 1,
    "x16": 1,
}

URGENT_ENTRIES = {"x2": 55, "x15": 1, "x17": 1}


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    store = Path(tempfile.mkdtemp()) / "store.jsonl"
    client = TestClient(create_app(store_path=str(store)))

    def save(name: str, payload: object) -> None:
        path = FIXTURES / f"{name}.json"
        path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
        print(f"wrote {path.relative_to(Path.cwd()) if path.is_relative_to(Path.cwd()) else path}")

    # The canonical questionnaire document for the worked entries, straight
    # from the engine's own serializer. The form must produce exactly this.
    canonical = json.loads(
        json.dumps(dict(serialize(parse_questionnaire(WORKED_ENTRIES))))
    )
    save("canonical_worked_example", canonical)

    def assess(doc: dict) -> dict:
        response = client.post("/assess", json=doc)
        response.raise_for_status()
        return response.json()

    def recommend(doc: dict) -> dict:
        response = client.post("/recommend", json=doc)
        response.raise_for_status()
        return response.json()

    save("assess_worked_example", assess(WORKED_ENTRIES))
    save("assess_worked_example_nonsmoker", assess({**WORKED_ENTRIES, "x15": 0}))
    save("assess_worked_example_sbp128", assess({**WORKED_ENTRIES, "x12": 128}))
    save("assess_blank", assess({}))
    save("assess_urgent", assess(URGENT_ENTRIES))

    save("recommend_worked_example", recommend(WORKED_ENTRIES))
    save("recommend_blank", recommend({}))
    save("recommend_urgent", recommend(URGENT_ENTRIES))


if __name__ == "__main__":
    main()
