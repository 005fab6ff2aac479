"""HTTP facade over the recommendation pipeline.

Endpoints:

    POST /assess                 questionnaire JSON -> derived profile
    POST /recommend?explain=...  questionnaire JSON -> stored recommendation
    GET  /assessments/{id}       stored document
    GET  /health                 load status and versions
    GET  /catalog/version        active catalog version

Parse problems come back as 400 with per-field details; implausible but
well-formed values pass with warnings; hard validation failures are 422.
Explanation-endpoint trouble never fails a request — the response degrades
to the curated texts.

Configuration (constructor arguments override environment)::

    CVDREC_CATALOG       path to a catalog JSON (default: packaged)
    CVDREC_CALIBRATION   path to a calibration JSON (default: packaged)
    CVDREC_REGION        risk region override (low/moderate/high/very_high)
    CVDREC_STORE         assessment store path (default ./assessments.jsonl)
    CVDREC_LLM_*         see cvdrec.explain

No authentication is built in: deploy behind one when real health data is
involved.
"""

from __future__ import annotations

import logging
import os

from fastapi import FastAPI, Request, Response

from . import __version__
from .catalog import Catalog, CatalogError, load_catalog
from .explain import LlmConfig, ResponseCache
from .intake import ParseError, parse_questionnaire, serialize, validate
from .recommend import build_profile, generate
from .risk import CalibrationError, RiskCalibration, load_calibration
from .serialize import dump_json, profile_payload, recommendation_payload
from .storage import AssessmentStore, new_id, utc_now

logger = logging.getLogger(__name__)

EXPLAIN_MODES = ("fallback", "llm")


def _json_response(payload: object, status_code: int = 200) -> Response:
    return Response(content=dump_json(payload),
                    status_code=status_code, media_type="application/json")


def _error(status_code: int, details: list[dict] | str) -> Response:
    if isinstance(details, str):
        details = [{"field": "$", "message": details}]
    return _json_response({"detail": details}, status_code)


def create_app(catalog_path: str | None = None,
               calibration_path: str | None = None,
               store_path: str | None = None,
               region: str | None = None,
               llm: LlmConfig | None = None) -> FastAPI:
    """Build the service application.

    Catalog and calibration load eagerly; a load failure keeps the app
    serving 503s (visible through /health) instead of crashing the process.
    """
    env = os.environ
    catalog_path = catalog_path or env.get("CVDREC_CATALOG") or None
    calibration_path = calibration_path or env.get("CVDREC_CALIBRATION") or None
    store_path = store_path or env.get("CVDREC_STORE") or "assessments.jsonl"
    region = region or env.get("CVDREC_REGION") or None
    if llm is None:
        llm = LlmConfig.from_env()

    app = FastAPI(title="cvdrec", version=__version__, docs_url=None, redoc_url=None)

    catalog: Catalog | None = None
    calibration: RiskCalibration | None = None
    store: AssessmentStore | None = None
    load_error: str | None = None
    try:
        catalog = load_catalog(catalog_path)
        calibration = load_calibration(calibration_path, region=region)
        store = AssessmentStore(store_path)
    except (CatalogError, CalibrationError, OSError, ValueError) as err:
        load_error = str(err)
        logger.error("service startup failed: %s", err)

    cache = ResponseCache()

    async def _read_questionnaire(request: Request):
        """Returns (indicators, warnings, None) or (None, None, error response)."""
        try:
            body = await request.json()
        except ValueError:
            return None, None, _error(400, "request body is not valid JSON")
        if not isinstance(body, dict):
            return None, None, _error(400, "expected a JSON object of indicator values")
        try:
            ind = parse_questionnaire(body)
        except ParseError as err:
            return None, None, _error(400, err.details())
        report = validate(ind)
        if not report.ok:
            return None, None, _error(
                422, [{"field": e.field, "message": e.message} for e in report.errors])
        return ind, report.warning_messages(), None

    @app.post("/assess")
    async def assess(request: Request):
        if load_error:
            return _error(503, f"service not ready: {load_error}")
        ind, warnings, failure = await _read_questionnaire(request)
        if failure is not None:
            return failure
        profile = build_profile(ind, calibration)
        return _json_response(profile_payload(profile, warnings))

    @app.post("/recommend")
    async def recommend(request: Request, explain: str = "fallback"):
        if load_error:
            return _error(503, f"service not ready: {load_error}")
        if explain not in EXPLAIN_MODES:
            return _error(400, [{"field": "explain",
                                 "message": f"must be one of {EXPLAIN_MODES}"}])
        ind, warnings, failure = await _read_questionnaire(request)
        if failure is not None:
            return failure
        config = llm if explain == "llm" else None
        rec = generate(ind, catalog, calibration, llm=config, cache=cache)

        record_id = new_id()
        created_at = utc_now()
        rec_payload = recommendation_payload(rec, generated_at=created_at)
        store.append({
            "id": record_id,
            "created_at": created_at,
            "indicators": serialize(ind),
            "profile": profile_payload(rec.profile, warnings),
            "recommendation": rec_payload,
            "engine_version": __version__,
            "catalog_version": catalog.version,
        })
        return _json_response({
            "id": record_id,
            "recommendation": rec_payload,
            "warnings": warnings,
        })

    @app.get("/assessments/{record_id}")
    async def get_assessment(record_id: str):
        if load_error:
            return _error(503, f"service not ready: {load_error}")
        record = store.get(record_id)
        if record is None:
            return _error(404, f"no assessment with id {record_id}")
        return _json_response(record)

    @app.get("/health")
    async def health():
        if load_error:
            return _json_response({"status": "error", "detail": load_error}, 503)
        return _json_response({
            "status": "ok",
            "engine_version": __version__,
            "catalog_version": catalog.version,
            "calibration": {
                "name": calibration.name,
                "version": calibration.version,
                "region": calibration.region,
            },
            "stored_assessments": len(store),
        })

    @app.get("/catalog/version")
    async def catalog_version():
        if load_error:
            return _error(503, f"service not ready: {load_error}")
        return _json_response({"version": catalog.version,
                               "language": catalog.language})

    return app
