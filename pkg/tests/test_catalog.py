"""Catalog loading, completeness checks and template rendering."""

import json
from importlib import resources

import pytest

from cvdrec.catalog import (
    KIND_EXPLANATION, KIND_GOAL, KIND_INFO, KIND_PLAN, KIND_TACTICAL,
    CatalogError, bp_target, build_render_context, load_catalog, render_item,
)
from cvdrec.factors import MODIFIABLE_FACTORS, compute_bmi
from cvdrec.intake import parse_questionnaire


def _raw_catalog() -> dict:
    text = resources.files("cvdrec.data").joinpath("catalog_en.json").read_text("utf-8")
    return json.loads(text)


def _write(tmp_path, raw):
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(raw), encoding="utf-8")
    return path


def test_default_catalog_is_complete(catalog):
    for cls in range(1, 6):
        assert catalog.item(KIND_GOAL, cls).text
    for factor in range(1, 14):
        for kind in (KIND_TACTICAL, KIND_INFO, KIND_EXPLANATION, KIND_PLAN):
            assert catalog.item(kind, factor).text, (kind, factor)
    assert set(catalog.ranks) == set(MODIFIABLE_FACTORS)


def test_ranks_are_a_strict_ordering(catalog):
    values = sorted(catalog.ranks.values())
    assert values == list(range(1, len(values) + 1))


def test_missing_item_raises_with_location(catalog):
    with pytest.raises(CatalogError, match="EsR for factor 99 absent"):
        catalog.item(KIND_TACTICAL, 99)


def test_load_rejects_missing_factor_text(tmp_path):
    raw = _raw_catalog()
    raw["items"] = [e for e in raw["items"]
                    if not (e["kind"] == "EsR" and e["key"] == 9)]
    with pytest.raises(CatalogError, match="EsR for factor 9 absent"):
        load_catalog(_write(tmp_path, raw))


def test_load_rejects_missing_class_goal(tmp_path):
    raw = _raw_catalog()
    raw["items"] = [e for e in raw["items"]
                    if not (e["kind"] == "EsG" and e["key"] == 4)]
    with pytest.raises(CatalogError, match="EsG for class 4 absent"):
        load_catalog(_write(tmp_path, raw))


def test_load_rejects_missing_rank(tmp_path):
    raw = _raw_catalog()
    del raw["ranks"]["11"]
    with pytest.raises(CatalogError, match="impact rank for factor 11 absent"):
        load_catalog(_write(tmp_path, raw))


def test_load_rejects_unknown_placeholder(tmp_path):
    raw = _raw_catalog()
    raw["items"][0] = dict(raw["items"][0], text="Mind your {cholesterole}.")
    with pytest.raises(CatalogError, match="cholesterole"):
        load_catalog(_write(tmp_path, raw))


def test_load_rejects_duplicate_item(tmp_path):
    raw = _raw_catalog()
    raw["items"].append(dict(raw["items"][0]))
    with pytest.raises(CatalogError, match="duplicate"):
        load_catalog(_write(tmp_path, raw))


def test_load_rejects_missing_category_sentence(tmp_path):
    raw = _raw_catalog()
    del raw["headers"]["category_statement"]["not_assessed"]
    with pytest.raises(CatalogError, match="not_assessed"):
        load_catalog(_write(tmp_path, raw))


def test_load_rejects_empty_text(tmp_path):
    raw = _raw_catalog()
    raw["items"][3] = dict(raw["items"][3], text="   ")
    with pytest.raises(CatalogError, match="empty text"):
        load_catalog(_write(tmp_path, raw))


def test_bp_target_bands():
    assert bp_target(49) == "130"
    assert bp_target(64.9) == "130"
    assert bp_target(65) == "140"
    assert bp_target(80) == "140"


def test_render_context_prefers_raw_reading():
    ind = parse_questionnaire({"x12": "160/90", "x2": 49})
    ctx = build_render_context(ind, 25.0, "high")
    assert ctx["sbp"] == "160/90"
    assert ctx["bp_target"] == "130"
    assert ctx["category"] == "high"


def test_render_context_formats_numbers():
    ind = parse_questionnaire({"x12": 160, "x2": 49, "x10": 5.25})
    ctx = build_render_context(ind, 25.605536, "very_high")
    assert ctx["sbp"] == "160"
    assert ctx["bmi"] == "25.6"
    assert ctx["total_cholesterol"] == "5.2"
    assert ctx["category"] == "very high"


def test_render_item_fills_bp_target(catalog, worked_record):
    ctx = build_render_context(worked_record, compute_bmi(170, 74), "high")
    text = render_item(catalog.item(KIND_TACTICAL, 9), ctx)
    assert "130" in text
    assert "{" not in text


def test_render_item_reports_missing_value(catalog):
    item = catalog.item(KIND_TACTICAL, 9)
    with pytest.raises(CatalogError, match="bp_target"):
        render_item(item, {"sbp": "160"})


def test_category_statement_covers_every_state(catalog):
    for key in ("low", "moderate", "high", "very_high", "not_assessed"):
        assert catalog.category_statement(key).strip()
