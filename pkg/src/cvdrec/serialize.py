"""Shared JSON and plain-text rendering.

The CLI and the HTTP service both emit payloads through this module, so a
given record produces byte-identical JSON on either path.
"""

from __future__ import annotations

import json

from . import __version__
from .recommend import Recommendation, UserProfile


def dump_json(payload: object) -> str:
    """Canonical JSON encoding: compact separators, UTF-8 text as-is."""
    return json.dumps(payload, ensure_ascii=False, allow_nan=False,
                      separators=(",", ":"))


def profile_payload(profile: UserProfile,
                    warnings: list[str] | None = None) -> dict:
    """Wire form of a derived profile (the assessment response body).

    ``warnings`` omitted entirely when None (the embedded snapshot inside a
    recommendation carries no validation warnings of its own).
    """
    risk = profile.risk
    payload = {
        "factor": list(profile.factor.flags),
        "bmi": round(profile.factor.bmi, 1),
        "class": list(profile.classes.flags),
        "sco": risk.sco,
        "cvrisk": None if risk.cvrisk is None else round(risk.cvrisk, 2),
        "category": risk.category,
        "risk_note": risk.note,
    }
    if warnings is not None:
        payload["warnings"] = warnings
    return payload


def recommendation_payload(rec: Recommendation,
                           generated_at: str | None = None) -> dict:
    """Wire form of a recommendation, profile snapshot included.

    ``generated_at`` is the only non-deterministic field; callers that need
    reproducible bodies leave it unset.
    """
    payload: dict = {
        "engine_version": __version__,
        "catalog_version": rec.catalog_version,
        "goals": list(rec.goals),
        "category_statement": rec.category_statement,
        "blocks": [
            {
                "factor": b.factor,
                "name": b.name,
                "class_no": b.class_no,
                "utility": b.utility,
                "tactical_goal": b.tactical_goal,
                "information": b.information,
                "explanation": b.explanation,
                "explanation_source": b.explanation_source,
                "plan": b.plan,
            }
            for b in rec.blocks
        ],
        "profile": profile_payload(rec.profile),
        "text": render_text(rec),
    }
    if generated_at is not None:
        payload["generated_at"] = generated_at
    return payload


def render_text(rec: Recommendation) -> str:
    """Four-section plain-text rendering.

    Layout: a "Goal:" paragraph with the strategic and tactical goals, an
    "Information:" paragraph opening with the risk-category sentence, a
    numbered "Explanation:" section and a "Plan of actions:" section. A
    record without factors gets the general guidance texts in the last two
    sections.
    """
    goal_parts = list(rec.goals) + [b.tactical_goal for b in rec.blocks]
    info_parts = [rec.category_statement] + [b.information for b in rec.blocks]

    explanations = [b.explanation for b in rec.blocks]
    if len(explanations) > 1:
        explanations = [f"{i}. {text}" for i, text in enumerate(explanations, start=1)]

    lines = [
        "Goal: " + " ".join(goal_parts),
        "",
        "Information: " + " ".join(info_parts),
        "",
    ]
    if explanations:
        lines.append("Explanation: " + "\n".join(explanations))
    else:
        lines.append("Explanation: " + rec.general_explanation)
    lines.append("")
    if rec.blocks:
        plans = "\n".join(b.plan for b in rec.blocks)
        lines.append("Plan of actions: " + rec.plan_intro + "\n" + plans)
    else:
        lines.append("Plan of actions: " + rec.general_plan)
    return "\n".join(lines)
