"""Recommendation assembly: goals, block ordering and serialization."""

import json

import pytest

from cvdrec.explain import FALLBACK
from cvdrec.intake import parse_questionnaire
from cvdrec.recommend import build_profile, generate
from cvdrec.serialize import dump_json, recommendation_payload, render_text

from .reference import (
    WORKED_BLOCK_ORDER, WORKED_CATEGORY, WORKED_GOAL_CLASSES,
    WORKED_RISK_TOLERANCE_PP,
)


def _generate(doc, catalog, calibration):
    return generate(parse_questionnaire(doc), catalog, calibration)


def test_worked_example_profile(worked_record, calibration):
    profile = build_profile(worked_record, calibration)
    assert profile.risk.category == WORKED_CATEGORY
    assert profile.risk.cvrisk == pytest.approx(6.0, abs=WORKED_RISK_TOLERANCE_PP)
    assert not profile.risk.sco


def test_worked_example_block_order(worked_doc, catalog, calibration):
    rec = _generate(worked_doc, catalog, calibration)
    assert [b.factor for b in rec.blocks] == WORKED_BLOCK_ORDER


def test_worked_example_goals_most_severe_class_first(worked_doc, catalog, calibration):
    rec = _generate(worked_doc, catalog, calibration)
    assert len(rec.goals) == len(WORKED_GOAL_CLASSES)
    profile = rec.profile
    assert sorted(profile.classes.active(), reverse=True) == WORKED_GOAL_CLASSES


def test_goal_texts_come_from_the_catalog(worked_doc, catalog, calibration):
    rec = _generate(worked_doc, catalog, calibration)
    assert rec.goals[0] == catalog.item("EsG", 3).text
    assert rec.goals[1] == catalog.item("EsG", 2).text


def test_blocks_cover_exactly_the_set_factors(worked_doc, catalog, calibration):
    rec = _generate(worked_doc, catalog, calibration)
    assert sorted(b.factor for b in rec.blocks) == sorted(rec.profile.factor.active())
    for block in rec.blocks:
        assert block.tactical_goal and block.information
        assert block.explanation and block.plan


def test_medical_history_blocks_precede_lifestyle(catalog, calibration):
    doc = {"x7": 1, "x15": 1, "x12": 160}
    rec = _generate(doc, catalog, calibration)
    assert [b.class_no for b in rec.blocks] == [4, 3, 2]
    assert [b.factor for b in rec.blocks] == [3, 9, 11]


def test_urgent_block_first(catalog, calibration):
    rec = _generate({"x17": 1, "x15": 1}, catalog, calibration)
    assert rec.blocks[0].factor == 1
    assert rec.blocks[0].class_no == 5


def test_rank_order_within_biological_class(catalog, calibration):
    # factors 7, 8, 9, 10 all set: shipped ranks put blood pressure first,
    # then non-HDL, then total cholesterol, then glucose
    doc = {"x10": 8.0, "x11": 4.0, "x12": 160, "x13": 9.0}
    rec = _generate(doc, catalog, calibration)
    assert [b.factor for b in rec.blocks] == [9, 8, 10, 7]
    weights = [b.utility for b in rec.blocks]
    assert weights == sorted(weights)


def test_unranked_classes_keep_factor_order(catalog, calibration):
    rec = _generate({"x6": 1, "x7": 1, "x9": 1, "x5": 1}, catalog, calibration)
    assert [b.factor for b in rec.blocks] == [2, 3, 4, 5]
    assert all(b.utility == 0.0 for b in rec.blocks)


def test_category_statement_matches_risk(worked_doc, catalog, calibration):
    rec = _generate(worked_doc, catalog, calibration)
    assert rec.category_statement == catalog.category_statement("high")


def test_gate_forces_very_high_statement(catalog, calibration):
    rec = _generate({"x17": 1}, catalog, calibration)
    assert rec.profile.risk.sco
    assert rec.category_statement == catalog.category_statement("very_high")


def test_not_assessed_statement_without_age(catalog, calibration):
    rec = _generate({"x15": 1}, catalog, calibration)
    assert rec.profile.risk.category == "not_assessed"
    assert rec.category_statement == catalog.category_statement("not_assessed")


def test_offline_generation_marks_fallback(worked_doc, catalog, calibration):
    rec = _generate(worked_doc, catalog, calibration)
    assert all(b.explanation_source == FALLBACK for b in rec.blocks)
    assert rec.preamble is None and rec.closing is None


def test_blood_pressure_block_uses_age_banded_target(worked_doc, catalog, calibration):
    rec = _generate(worked_doc, catalog, calibration)
    bp = next(b for b in rec.blocks if b.factor == 9)
    assert "130" in bp.tactical_goal


# --- serialization ------------------------------------------------------------


def test_payload_shape(worked_doc, catalog, calibration):
    rec = _generate(worked_doc, catalog, calibration)
    payload = recommendation_payload(rec)
    assert list(payload) == ["engine_version", "catalog_version", "goals",
                             "category_statement", "blocks", "profile", "text"]
    assert payload["profile"]["category"] == "high"
    assert payload["profile"]["factor"] == list(rec.profile.factor.flags)
    assert payload["profile"]["bmi"] == 25.6
    assert payload["profile"]["cvrisk"] == pytest.approx(5.58, abs=0.01)
    assert "warnings" not in payload["profile"]
    assert len(payload["blocks"]) == 5


def test_payload_timestamp_is_optional_and_last(worked_doc, catalog, calibration):
    rec = _generate(worked_doc, catalog, calibration)
    stamped = recommendation_payload(rec, generated_at="2026-01-01T00:00:00Z")
    assert list(stamped)[-1] == "generated_at"
    assert "generated_at" not in recommendation_payload(rec)


def test_payload_is_deterministic(worked_doc, catalog, calibration):
    first = dump_json(recommendation_payload(_generate(worked_doc, catalog, calibration)))
    second = dump_json(recommendation_payload(_generate(worked_doc, catalog, calibration)))
    assert first == second


def test_dump_json_compact_and_utf8():
    text = dump_json({"a": ["–", 1]})
    assert text == '{"a":["–",1]}'
    with pytest.raises(ValueError):
        dump_json({"a": float("nan")})


def test_text_rendering_sections(worked_doc, catalog, calibration):
    rec = _generate(worked_doc, catalog, calibration)
    text = render_text(rec)
    assert text.startswith("Goal: ")
    assert "\n\nInformation: " in text
    assert "\n\nExplanation: " in text
    assert "\n\nPlan of actions: " in text
    assert rec.category_statement in text
    for i in range(1, 6):
        assert f"{i}. " in text  # numbered explanations


def test_text_rendering_single_factor_unnumbered(catalog, calibration):
    rec = _generate({"x15": 1}, catalog, calibration)
    text = render_text(rec)
    explanation = text.split("Explanation: ")[1].split("\n\n")[0]
    assert not explanation.startswith("1.")


def test_text_rendering_empty_record_uses_general_texts(catalog, calibration):
    rec = _generate({"x2": 45, "x11": 2.0, "x12": 120}, catalog, calibration)
    assert not rec.blocks
    text = render_text(rec)
    assert rec.general_explanation in text
    assert rec.general_plan in text
    assert rec.goals == (catalog.item("EsG", 1).text,)


def test_payload_round_trips_through_json(worked_doc, catalog, calibration):
    rec = _generate(worked_doc, catalog, calibration)
    payload = recommendation_payload(rec, generated_at="2026-01-01T00:00:00Z")
    assert json.loads(dump_json(payload)) == payload
