"""Ten-year cardiovascular risk estimation and categorization.

Two layers:

* a severe-condition gate over the factor vector (angina symptoms,
  documented CVD or events, diabetes, family history) which forces the
  very-high category outright, and
* the sex- and age-band-specific risk function for everyone else, built from
  a calibration file (coefficients, baseline survival, regional rescaling).

The risk function takes age, systolic blood pressure, non-HDL cholesterol
and smoking status. It applies to ages 40-89 (by completed years); outside
that window, or without a usable blood pressure and non-HDL value, the
category is reported as ``not_assessed`` with a reason.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .factors import FactorVector
from .intake import HealthIndicators

logger = logging.getLogger(__name__)

CATEGORY_LOW = "low"
CATEGORY_MODERATE = "moderate"
CATEGORY_HIGH = "high"
CATEGORY_VERY_HIGH = "very_high"
CATEGORY_NOT_ASSESSED = "not_assessed"

CATEGORIES = (CATEGORY_LOW, CATEGORY_MODERATE, CATEGORY_HIGH, CATEGORY_VERY_HIGH)

CATEGORY_TEXT = {
    CATEGORY_LOW: "low",
    CATEGORY_MODERATE: "moderate",
    CATEGORY_HIGH: "high",
    CATEGORY_VERY_HIGH: "very high",
    CATEGORY_NOT_ASSESSED: "not assessed",
}

# Category boundaries in percent, left-closed: [2.5, 5) is moderate, etc.
THRESHOLD_MODERATE = 2.5
THRESHOLD_HIGH = 5.0
THRESHOLD_VERY_HIGH = 10.0

SEXES = ("male", "female")
REGIONS = ("low", "moderate", "high", "very_high")

DEFAULT_CALIBRATION = "calibration_europe.json"


class CalibrationError(ValueError):
    """Malformed or incomplete calibration file."""


class RiskNotApplicable(ValueError):
    """The risk function cannot be evaluated for this record."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class AgeBandModel:
    """One age band of the risk function."""

    label: str
    age_min: int
    age_max: int
    age_center: float
    age_scale: float
    sbp_center: float
    sbp_scale: float
    nonhdl_center: float
    nonhdl_scale: float
    coefficients: Mapping[str, Mapping[str, float]]
    mean_linear_predictor: Mapping[str, float]
    baseline_survival: Mapping[str, float]
    region_scales: Mapping[str, Mapping[str, tuple[float, float]]]

    def linear_predictor(self, sex: str, age: float, nonhdl: float,
                         sbp: float, smoker: int) -> float:
        c = self.coefficients[sex]
        t_age = (age - self.age_center) / self.age_scale
        t_sbp = (sbp - self.sbp_center) / self.sbp_scale
        t_chol = (nonhdl - self.nonhdl_center) / self.nonhdl_scale
        # The smoking main effect and its age attenuation are combined and
        # floored at zero: a smoker never scores below a non-smoker.
        smoking_effect = max(0.0, c["smoking"] + c["smoking_age"] * t_age)
        return (
            c["age"] * t_age
            + c["sbp"] * t_sbp
            + c["nonhdl"] * t_chol
            + smoking_effect * smoker
            + c["sbp_age"] * t_age * t_sbp
            + c["nonhdl_age"] * t_age * t_chol
        )


@dataclass(frozen=True)
class RiskCalibration:
    """Parsed calibration file plus the region it is pinned to."""

    name: str
    version: str
    region: str
    source: str
    models: tuple[AgeBandModel, ...]
    validation_grid: Mapping[str, Any]

    def model_for_age(self, age: float) -> AgeBandModel | None:
        completed = math.floor(age)
        for model in self.models:
            if model.age_min <= completed <= model.age_max:
                return model
        return None

    @property
    def age_min(self) -> int:
        return self.models[0].age_min

    @property
    def age_max(self) -> int:
        return self.models[-1].age_max


def _sex_pair(mapping: Mapping[str, Any], context: str) -> dict[str, Any]:
    out = {}
    for sex in SEXES:
        if sex not in mapping:
            raise CalibrationError(f"{context}: no entry for sex {sex!r}")
        out[sex] = mapping[sex]
    return out


def load_calibration(path: str | Path | None = None,
                     region: str | None = None) -> RiskCalibration:
    """Load and validate a calibration file.

    ``region`` overrides the file's default region. Validation checks that
    both sexes are covered in every band, every region has a scale pair, and
    the age bands tile the supported range without gaps.
    """
    if path is None:
        with resources.files("cvdrec.data").joinpath(DEFAULT_CALIBRATION).open("rb") as fh:
            raw = json.load(fh)
    else:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))

    try:
        chosen_region = region or raw["default_region"]
        if chosen_region not in REGIONS:
            raise CalibrationError(f"unknown risk region {chosen_region!r}")

        models = []
        for entry in raw["models"]:
            tf = entry["transform"]
            coeff = _sex_pair(entry["coefficients"], f"model {entry['label']}")
            needed = {"age", "smoking", "sbp", "nonhdl", "smoking_age", "sbp_age", "nonhdl_age"}
            for sex in SEXES:
                missing = needed - set(coeff[sex])
                if missing:
                    raise CalibrationError(
                        f"model {entry['label']}: {sex} coefficients missing {sorted(missing)}")
            scales = {}
            for reg in REGIONS:
                if reg not in entry["region_scales"]:
                    raise CalibrationError(
                        f"model {entry['label']}: no scales for region {reg!r}")
                pair = _sex_pair(entry["region_scales"][reg], f"region {reg}")
                scales[reg] = {sex: (float(pair[sex][0]), float(pair[sex][1]))
                               for sex in SEXES}
            models.append(AgeBandModel(
                label=entry["label"],
                age_min=int(entry["age_min"]),
                age_max=int(entry["age_max"]),
                age_center=float(tf["age_center"]),
                age_scale=float(tf["age_scale"]),
                sbp_center=float(tf["sbp_center"]),
                sbp_scale=float(tf["sbp_scale"]),
                nonhdl_center=float(tf["nonhdl_center"]),
                nonhdl_scale=float(tf["nonhdl_scale"]),
                coefficients=coeff,
                mean_linear_predictor=_sex_pair(entry["mean_linear_predictor"],
                                                f"model {entry['label']} mean lp"),
                baseline_survival=_sex_pair(entry["baseline_survival"],
                                            f"model {entry['label']} baseline"),
                region_scales=scales,
            ))
    except KeyError as err:
        raise CalibrationError(f"calibration file missing key {err}") from None

    if not models:
        raise CalibrationError("calibration file defines no age-band models")

    models.sort(key=lambda m: m.age_min)
    for prev, nxt in zip(models, models[1:]):
        if nxt.age_min != prev.age_max + 1:
            raise CalibrationError(
                f"age bands {prev.label} and {nxt.label} do not join "
                f"({prev.age_max} then {nxt.age_min})")

    return RiskCalibration(
        name=str(raw.get("name", "unnamed")),
        version=str(raw.get("version", "0")),
        region=chosen_region,
        source=str(raw.get("source", "")),
        models=tuple(models),
        validation_grid=raw.get("validation_grid", {}),
    )


def sco_flag(fv: FactorVector) -> bool:
    """Severe-condition gate: f1 angina, f2 CVD/events, f4 diabetes, f5 family history.

    Kidney disease (f3) counts toward the medical-history class but does not
    trip this gate.
    """
    return bool(fv.flag(1) or fv.flag(2) or fv.flag(4) or fv.flag(5))


def _applicability(ind: HealthIndicators, cal: RiskCalibration) -> str | None:
    """Reason string when the risk function cannot run, else None."""
    if not ind.is_provided("x2"):
        return "age not provided"
    completed = math.floor(ind.x2)
    if not (cal.age_min <= completed <= cal.age_max):
        return f"age {_trim(ind.x2)} outside the {cal.age_min}-{cal.age_max} model range"
    if not ind.is_provided("x11") or ind.x11 <= 0:
        return "non-HDL cholesterol not provided"
    if not ind.is_provided("x12") or ind.x12 <= 0:
        return "systolic blood pressure not provided"
    return None


def score2(ind: HealthIndicators, cal: RiskCalibration) -> float:
    """Ten-year risk in percent for one record under ``cal``.

    Raises :class:`RiskNotApplicable` when the record misses a required
    input or the age falls outside the calibrated range.
    """
    reason = _applicability(ind, cal)
    if reason is not None:
        raise RiskNotApplicable(reason)

    model = cal.model_for_age(ind.x2)
    assert model is not None  # _applicability guarantees the band exists
    sex = "male" if ind.x1 == 1 else "female"
    lp = model.linear_predictor(sex, ind.x2, ind.x11, ind.x12, 1 if ind.x15 == 1 else 0)
    uncalibrated = 1.0 - model.baseline_survival[sex] ** math.exp(
        lp - model.mean_linear_predictor[sex])
    scale1, scale2 = model.region_scales[cal.region][sex]
    calibrated = 1.0 - math.exp(-math.exp(
        scale1 + scale2 * math.log(-math.log(1.0 - uncalibrated))))
    return 100.0 * calibrated


def categorize(risk_percent: float | None, sco: bool) -> str:
    """Total-risk category from the risk estimate and the severe-condition gate."""
    if sco:
        return CATEGORY_VERY_HIGH
    if risk_percent is None:
        return CATEGORY_NOT_ASSESSED
    if risk_percent < THRESHOLD_MODERATE:
        return CATEGORY_LOW
    if risk_percent < THRESHOLD_HIGH:
        return CATEGORY_MODERATE
    if risk_percent < THRESHOLD_VERY_HIGH:
        return CATEGORY_HIGH
    return CATEGORY_VERY_HIGH


@dataclass(frozen=True)
class RiskEstimate:
    """Outcome of the risk stage for one record."""

    sco: bool
    cvrisk: float | None
    category: str
    note: str | None = None

    @property
    def assessed(self) -> bool:
        return self.cvrisk is not None


def assess_risk(ind: HealthIndicators, fv: FactorVector,
                cal: RiskCalibration) -> RiskEstimate:
    """Run the gate and, only when the gate stays open, the risk function.

    A severe condition forces the very-high category outright and the
    predictive model is never evaluated for that record.
    """
    if sco_flag(fv):
        return RiskEstimate(
            sco=True, cvrisk=None, category=CATEGORY_VERY_HIGH,
            note="severe condition present; predictive model bypassed")
    try:
        risk = score2(ind, cal)
        note = None
    except RiskNotApplicable as err:
        risk = None
        note = err.reason
        logger.debug("risk not assessed: %s", err.reason)
    return RiskEstimate(sco=False, cvrisk=risk, category=categorize(risk, False), note=note)


def _trim(value: float) -> str:
    if float(value) == int(value):
        return str(int(value))
    return f"{value:g}"
