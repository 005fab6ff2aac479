"""Questionnaire intake: parsing, validation and canonical serialization.

The questionnaire has 17 indicators, addressed internally as ``x1``..``x17``.
A record distinguishes "answered with 0" from "not answered": unanswered
fields stay at 0 for rule evaluation but are excluded from the canonical
wire format, so a serialize/parse round trip preserves the provided set.

Wire format: a flat JSON object of canonical keys (or their aliases) to
numbers. Flags accept 0/1, true/false or "0"/"1". Systolic blood pressure
(``x12``) additionally accepts "160/90"-style readings; the systolic part is
stored numerically and the raw text is kept for display.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any, Iterator, Mapping

FLAG = "flag"
NUMBER = "number"


@dataclass(frozen=True)
class FieldSpec:
    """Static description of one questionnaire indicator."""

    key: str
    kind: str
    label: str
    unit: str | None = None
    aliases: tuple[str, ...] = ()
    plausible: tuple[float, float] | None = None


FIELDS: tuple[FieldSpec, ...] = (
    FieldSpec("x1", FLAG, "sex (1 = male, 0 = female)", aliases=("sex", "gender")),
    FieldSpec("x2", NUMBER, "age", "years", ("age",), (0.0, 120.0)),
    FieldSpec("x3", NUMBER, "height", "cm", ("height",), (50.0, 250.0)),
    FieldSpec("x4", NUMBER, "weight", "kg", ("weight",), (20.0, 300.0)),
    FieldSpec("x5", FLAG, "family history of early CVD",
              aliases=("family_history", "family_history_cvd")),
    FieldSpec("x6", FLAG, "documented cardiovascular disease",
              aliases=("cvd", "documented_cvd")),
    FieldSpec("x7", FLAG, "chronic kidney disease", aliases=("ckd", "kidney_disease")),
    FieldSpec("x8", FLAG, "history of cardiovascular events",
              aliases=("cv_events", "cardiovascular_events")),
    FieldSpec("x9", FLAG, "type 2 diabetes", aliases=("diabetes", "diabetes_type2")),
    FieldSpec("x10", NUMBER, "total cholesterol", "mmol/l",
              ("total_cholesterol", "cholesterol"), (0.0, 20.0)),
    FieldSpec("x11", NUMBER, "non-HDL cholesterol", "mmol/l",
              ("non_hdl", "non_hdl_cholesterol"), (0.0, 15.0)),
    FieldSpec("x12", NUMBER, "systolic blood pressure", "mmHg",
              ("sbp", "systolic_bp", "blood_pressure"), (50.0, 300.0)),
    FieldSpec("x13", NUMBER, "blood glucose", "mmol/l", ("glucose",), (0.0, 40.0)),
    FieldSpec("x14", FLAG, "physical inactivity",
              aliases=("inactivity", "physical_inactivity")),
    FieldSpec("x15", FLAG, "smoking", aliases=("smoking", "smoker")),
    FieldSpec("x16", FLAG, "unhealthy diet", aliases=("unhealthy_diet", "diet")),
    FieldSpec("x17", FLAG, "angina symptoms with deterioration",
              aliases=("angina", "angina_symptoms")),
)

FIELD_BY_KEY: dict[str, FieldSpec] = {spec.key: spec for spec in FIELDS}

_NAME_TO_KEY: dict[str, str] = {}
for _spec in FIELDS:
    _NAME_TO_KEY[_spec.key] = _spec.key
    for _alias in _spec.aliases:
        _NAME_TO_KEY[_alias] = _spec.key


class FieldError(ValueError):
    """A single malformed questionnaire field."""

    def __init__(self, fieldname: str, message: str):
        super().__init__(f"{fieldname}: {message}")
        self.field = fieldname
        self.message = message


class ParseError(ValueError):
    """Raised when one or more fields of a questionnaire document are malformed."""

    def __init__(self, errors: list[FieldError]):
        super().__init__("; ".join(str(e) for e in errors))
        self.errors = errors

    def details(self) -> list[dict[str, str]]:
        return [{"field": e.field, "message": e.message} for e in self.errors]


@dataclass(frozen=True)
class HealthIndicators:
    """One questionnaire record. Unanswered indicators default to 0.

    ``provided`` lists the canonical keys that were actually answered;
    ``display`` keeps raw per-field input text (currently only blood-pressure
    readings such as "160/90") and is ignored for equality.
    """

    x1: int = 0
    x2: float = 0.0
    x3: float = 0.0
    x4: float = 0.0
    x5: int = 0
    x6: int = 0
    x7: int = 0
    x8: int = 0
    x9: int = 0
    x10: float = 0.0
    x11: float = 0.0
    x12: float = 0.0
    x13: float = 0.0
    x14: int = 0
    x15: int = 0
    x16: int = 0
    x17: int = 0
    provided: frozenset[str] = frozenset()
    display: tuple[tuple[str, str], ...] = field(default=(), compare=False)

    def value(self, key: str) -> float:
        return getattr(self, key)

    def is_provided(self, key: str) -> bool:
        return key in self.provided

    def display_text(self, key: str) -> str | None:
        for k, text in self.display:
            if k == key:
                return text
        return None

    def items(self) -> Iterator[tuple[str, float]]:
        for spec in FIELDS:
            yield spec.key, getattr(self, spec.key)

    def with_answers(self, **answers: float) -> "HealthIndicators":
        """Copy of this record with extra/overridden answers (canonical keys)."""
        values: dict[str, Any] = {}
        prov = set(self.provided)
        for name, value in answers.items():
            if name not in FIELD_BY_KEY:
                raise KeyError(name)
            spec = FIELD_BY_KEY[name]
            values[name] = int(value) if spec.kind == FLAG else float(value)
            prov.add(name)
        return replace(self, provided=frozenset(prov), **values)


def _parse_flag(spec: FieldSpec, value: Any) -> int:
    if isinstance(value, bool):
        return 1 if value else 0
    if isinstance(value, (int, float)):
        if value in (0, 1):
            return int(value)
        raise FieldError(spec.key, f"expected 0 or 1 for {spec.label}, got {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if text in ("0", "1"):
            return int(text)
        raise FieldError(spec.key, f"expected 0 or 1 for {spec.label}, got {value!r}")
    raise FieldError(spec.key, f"expected 0 or 1 for {spec.label}, got {type(value).__name__}")


def _parse_number(spec: FieldSpec, value: Any) -> tuple[float, str | None]:
    """Return (numeric value, display text or None)."""
    if isinstance(value, bool):
        raise FieldError(spec.key, f"expected a number for {spec.label}")
    if isinstance(value, (int, float)):
        number = float(value)
        display = None
    elif isinstance(value, str):
        text = value.strip()
        if spec.key == "x12" and "/" in text:
            systolic, _, diastolic = text.partition("/")
            try:
                number = float(systolic.strip())
                float(diastolic.strip())
            except ValueError:
                raise FieldError(spec.key, f"malformed blood pressure reading {value!r}") from None
            display = text
        else:
            try:
                number = float(text)
            except ValueError:
                raise FieldError(spec.key, f"expected a number for {spec.label}, got {value!r}") from None
            display = None
    else:
        raise FieldError(spec.key, f"expected a number for {spec.label}, got {type(value).__name__}")

    if math.isnan(number) or math.isinf(number):
        raise FieldError(spec.key, f"{spec.label} must be a finite number")
    if number < 0:
        raise FieldError(spec.key, f"{spec.label} must be non-negative")
    return number, display


def parse_questionnaire(raw: Mapping[str, Any]) -> HealthIndicators:
    """Parse a questionnaire document into a record.

    Accepts canonical keys and aliases; unknown keys and malformed values are
    collected and reported together in a single :class:`ParseError`. A null
    value means "not answered" and is skipped.
    """
    if not isinstance(raw, Mapping):
        raise ParseError([FieldError("$", "expected a JSON object of indicator values")])

    errors: list[FieldError] = []
    values: dict[str, Any] = {}
    provided: set[str] = set()
    display: list[tuple[str, str]] = []

    for name, value in raw.items():
        key = _NAME_TO_KEY.get(name)
        if key is None:
            errors.append(FieldError(str(name), "unknown field"))
            continue
        if value is None:
            continue
        if key in provided:
            errors.append(FieldError(str(name), f"duplicate value for {key}"))
            continue
        spec = FIELD_BY_KEY[key]
        try:
            if spec.kind == FLAG:
                values[key] = _parse_flag(spec, value)
            else:
                number, text = _parse_number(spec, value)
                values[key] = number
                if text is not None:
                    display.append((key, text))
        except FieldError as err:
            errors.append(err)
            continue
        provided.add(key)

    if errors:
        raise ParseError(errors)

    return HealthIndicators(
        provided=frozenset(provided), display=tuple(display), **values
    )


def serialize(ind: HealthIndicators) -> dict[str, float]:
    """Canonical wire form: provided fields only, canonical key order."""
    doc: dict[str, float] = {}
    for spec in FIELDS:
        if ind.is_provided(spec.key):
            value = getattr(ind, spec.key)
            doc[spec.key] = int(value) if spec.kind == FLAG else float(value)
    return doc


@dataclass(frozen=True)
class ValidationIssue:
    field: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    warnings: tuple[ValidationIssue, ...] = ()
    errors: tuple[ValidationIssue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    def warning_messages(self) -> list[str]:
        return [f"{w.field}: {w.message}" for w in self.warnings]


def validate(ind: HealthIndicators) -> ValidationReport:
    """Plausibility screen. Warnings never block rule evaluation.

    Errors are only produced for records that bypass :func:`parse_questionnaire`
    (hand-constructed values outside the parse contract).
    """
    warnings: list[ValidationIssue] = []
    errors: list[ValidationIssue] = []

    for spec in FIELDS:
        value = getattr(ind, spec.key)
        if spec.kind == FLAG:
            if value not in (0, 1):
                errors.append(ValidationIssue(spec.key, f"{spec.label} must be 0 or 1"))
            continue
        if not isinstance(value, (int, float)) or math.isnan(value) or math.isinf(value):
            errors.append(ValidationIssue(spec.key, f"{spec.label} must be a finite number"))
            continue
        if value < 0:
            errors.append(ValidationIssue(spec.key, f"{spec.label} must be non-negative"))
            continue
        if spec.plausible and ind.is_provided(spec.key):
            lo, hi = spec.plausible
            if not (lo <= value <= hi):
                warnings.append(ValidationIssue(
                    spec.key,
                    f"{spec.label} {_trim(value)} outside plausible range "
                    f"{_trim(lo)}-{_trim(hi)} {spec.unit or ''}".rstrip(),
                ))

    if ind.is_provided("x10") and ind.is_provided("x11") and ind.x11 > ind.x10:
        warnings.append(ValidationIssue(
            "x11", "non-HDL cholesterol exceeds total cholesterol"))

    return ValidationReport(tuple(warnings), tuple(errors))


def _trim(value: float) -> str:
    """Render 160.0 as '160' and 25.61 as '25.61'."""
    if float(value) == int(value):
        return str(int(value))
    return f"{value:g}"
