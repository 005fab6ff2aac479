#!/usr/bin/env python3
"""Serve the built UI and the recommendation API from one origin.

Composes the installed cvdrec service with a static mount of this
directory's parent, so the page at / talks to /assess and /recommend
without any cross-origin setup:

    cd frontend && npm run build
    python3 frontend/scripts/dev_server.py --port 8000
"""
from __future__ import annotations

import argparse
from pathlib import Path

import uvicorn
from fastapi.staticfiles import StaticFiles

from cvdrec.service import create_app

FRONTEND_DIR = Path(__file__).resolve().parent.parent


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--store", default=str(FRONTEND_DIR / ".dev-assessments.jsonl"))
    args = parser.parse_args()

    if not (FRONTEND_DIR / "dist" / "main.js").exists():
        raise SystemExit("dist/main.js missing; run `npm run build` in frontend/ first")

    app = create_app(store_path=args.store)
    app.mount("/", StaticFiles(directory=FRONTEND_DIR, html=True), name="ui")
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
