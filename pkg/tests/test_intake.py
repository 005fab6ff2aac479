"""Questionnaire parsing, validation and round-trip serialization."""

import math

import pytest
from hypothesis import given, strategies as st

from cvdrec.intake import (
    FIELDS, HealthIndicators, ParseError, parse_questionnaire, serialize, validate,
)


def test_parse_full_record(worked_doc):
    ind = parse_questionnaire(worked_doc)
    assert ind.x1 == 0
    assert ind.x2 == 49.0
    assert ind.x12 == 160.0
    assert ind.x15 == 1
    assert ind.is_provided("x13")
    assert len(ind.provided) == 17


def test_empty_document_is_a_valid_record():
    ind = parse_questionnaire({})
    assert ind.provided == frozenset()
    for key, value in ind.items():
        assert value == 0


def test_aliases_map_to_canonical_keys():
    ind = parse_questionnaire({"age": 52, "sbp": 145, "smoker": 1})
    assert ind.x2 == 52.0
    assert ind.x12 == 145.0
    assert ind.x15 == 1
    assert ind.provided == frozenset({"x2", "x12", "x15"})


def test_null_means_not_answered():
    ind = parse_questionnaire({"x2": None, "x15": 1})
    assert not ind.is_provided("x2")
    assert ind.is_provided("x15")


def test_unknown_field_rejected():
    with pytest.raises(ParseError) as err:
        parse_questionnaire({"x99": 1})
    assert err.value.details()[0]["field"] == "x99"


def test_malformed_number_rejected_with_field_name():
    with pytest.raises(ParseError) as err:
        parse_questionnaire({"x12": "abc"})
    details = err.value.details()
    assert details[0]["field"] == "x12"
    assert "number" in details[0]["message"]


def test_errors_collected_across_fields():
    with pytest.raises(ParseError) as err:
        parse_questionnaire({"x12": "abc", "x5": 3, "bogus": 1})
    assert {d["field"] for d in err.value.details()} == {"x12", "x5", "bogus"}


def test_flag_accepts_bool_and_string_forms():
    ind = parse_questionnaire({"x5": True, "x6": "1", "x7": 0.0})
    assert (ind.x5, ind.x6, ind.x7) == (1, 1, 0)


def test_flag_out_of_domain_rejected():
    with pytest.raises(ParseError):
        parse_questionnaire({"x5": 2})


def test_negative_number_rejected():
    with pytest.raises(ParseError):
        parse_questionnaire({"x10": -1.0})


def test_nan_rejected():
    with pytest.raises(ParseError):
        parse_questionnaire({"x10": float("nan")})


def test_duplicate_alias_rejected():
    with pytest.raises(ParseError) as err:
        parse_questionnaire({"x2": 50, "age": 51})
    assert "duplicate" in str(err.value)


def test_blood_pressure_reading_string():
    ind = parse_questionnaire({"x12": "160/90"})
    assert ind.x12 == 160.0
    assert ind.display_text("x12") == "160/90"
    # the reading is presentation only; the canonical form stays numeric
    assert serialize(ind) == {"x12": 160.0}


def test_malformed_blood_pressure_rejected():
    with pytest.raises(ParseError):
        parse_questionnaire({"x12": "160/"})


def test_round_trip_preserves_record(worked_doc):
    ind = parse_questionnaire(worked_doc)
    assert parse_questionnaire(serialize(ind)) == ind


def test_round_trip_preserves_provided_zero():
    ind = parse_questionnaire({"x5": 0})
    again = parse_questionnaire(serialize(ind))
    assert again == ind
    assert again.is_provided("x5")


def test_serialize_emits_canonical_key_order():
    ind = parse_questionnaire({"x12": 150, "x2": 60, "x1": 1})
    assert list(serialize(ind)) == ["x1", "x2", "x12"]


def test_plausibility_warning_for_outlandish_sbp():
    ind = parse_questionnaire({"x12": 400})
    report = validate(ind)
    assert report.ok
    assert any(w.field == "x12" for w in report.warnings)


def test_plausibility_silent_for_unanswered_fields():
    report = validate(parse_questionnaire({}))
    assert report.ok
    assert not report.warnings


def test_warning_when_non_hdl_exceeds_total():
    ind = parse_questionnaire({"x10": 4.0, "x11": 5.0})
    report = validate(ind)
    assert any(w.field == "x11" for w in report.warnings)


def test_validate_flags_hand_built_inconsistency():
    report = validate(HealthIndicators(x5=3, provided=frozenset({"x5"})))
    assert not report.ok


@st.composite
def questionnaire_docs(draw):
    doc = {}
    for spec in FIELDS:
        if not draw(st.booleans()):
            continue
        if spec.kind == "flag":
            doc[spec.key] = draw(st.sampled_from([0, 1]))
        else:
            doc[spec.key] = draw(st.floats(
                min_value=0, max_value=500, allow_nan=False, allow_infinity=False))
    return doc


@given(questionnaire_docs())
def test_round_trip_property(doc):
    ind = parse_questionnaire(doc)
    assert parse_questionnaire(serialize(ind)) == ind


@given(questionnaire_docs())
def test_unanswered_fields_stay_zero(doc):
    ind = parse_questionnaire(doc)
    for spec in FIELDS:
        if spec.key not in doc:
            assert ind.value(spec.key) == 0
            assert not ind.is_provided(spec.key)
    assert not math.isnan(ind.x2)
