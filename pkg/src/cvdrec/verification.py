"""Runtime verification: postcondition checks, fuzzing, survey metrics.

The six postconditions cover the pipeline end to end:

    U  factor flags binary
    Q  class vector valid and consistent with the factor vector
    B  risk category total (exactly one defined outcome per record)
    D  one strategic goal per identified class, never empty
    W  one complete content block per set factor (a bijection)
    V  D or a non-empty block list

``run_simulation`` drives them over a reproducible indicator stream that
deliberately covers all 16 sub-class combinations and the rule boundaries
before switching to seeded random records.

The survey helpers compute the usability score (question mean divided by
the scale maximum of 5) and Cronbach's alpha over a questions-by-
participants score matrix.
"""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Sequence

from .catalog import Catalog
from .factors import FACTOR_COUNT, classify
from .intake import HealthIndicators, serialize
from .recommend import Recommendation, UserProfile, generate
from .risk import (
    CATEGORY_NOT_ASSESSED, CATEGORY_VERY_HIGH, RiskCalibration, categorize,
)

CONDITION_NAMES = ("U", "Q", "B", "D", "W", "V")

LIKERT_MAX = 5.0


@dataclass(frozen=True)
class ConditionOutcome:
    name: str
    passed: bool
    detail: str | None = None


@dataclass(frozen=True)
class PostconditionReport:
    """Pass/fail per condition; aggregated reports carry trials and seed."""

    conditions: tuple[ConditionOutcome, ...]
    trials: int = 1
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def failures(self) -> tuple[ConditionOutcome, ...]:
        return tuple(c for c in self.conditions if not c.passed)

    def outcome(self, name: str) -> ConditionOutcome:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)


def check_postconditions(ind: HealthIndicators, rec: Recommendation,
                         profile: UserProfile) -> PostconditionReport:
    """Evaluate all six postconditions for one pipeline run."""
    fv, cv, risk = profile.factor, profile.classes, profile.risk
    out: list[ConditionOutcome] = []

    # U: factor flags binary.
    bad = [i for i in range(1, FACTOR_COUNT + 1) if fv.flag(i) not in (0, 1)]
    out.append(ConditionOutcome(
        "U", not bad, None if not bad else f"non-binary factor flag(s) {bad}"))

    # Q: class vector valid and re-derivable from the factor vector.
    detail = None
    if any(c not in (0, 1) for c in cv.flags):
        detail = f"non-binary class flag(s) {cv.flags}"
    elif sum(cv.flags) < 1:
        detail = "no class identified"
    elif (cv.flag(1) == 1) != (not fv.any):
        detail = f"class 1 flag {cv.flag(1)} inconsistent with factors {fv.flags}"
    elif cv.flags != classify(fv).flags:
        detail = f"class vector {cv.flags} does not match factors {fv.flags}"
    out.append(ConditionOutcome("Q", detail is None, detail))

    # B: category total.
    detail = None
    if risk.sco:
        if risk.category != CATEGORY_VERY_HIGH:
            detail = f"severe-condition record categorized {risk.category!r}"
    elif risk.cvrisk is not None:
        expected = categorize(risk.cvrisk, False)
        if risk.category != expected:
            detail = (f"category {risk.category!r} does not match "
                      f"risk {risk.cvrisk}% ({expected!r})")
    else:
        if risk.category != CATEGORY_NOT_ASSESSED:
            detail = f"no estimate and no gate, yet category {risk.category!r}"
        elif not risk.note:
            detail = "not-assessed category without a reason note"
    out.append(ConditionOutcome("B", detail is None, detail))

    # D: strategic goals, one per identified class.
    detail = None
    if not rec.goals:
        detail = "no strategic goals"
    elif len(rec.goals) != len(cv.active()):
        detail = (f"{len(rec.goals)} goal(s) for {len(cv.active())} "
                  f"identified class(es)")
    elif any(not g.strip() for g in rec.goals):
        detail = "empty goal text"
    out.append(ConditionOutcome("D", detail is None, detail))

    # W: one complete block per set factor.
    detail = None
    expected_factors = list(fv.active())
    got_factors = [b.factor for b in rec.blocks]
    missing = [f for f in expected_factors if f not in got_factors]
    extra = [f for f in got_factors if f not in expected_factors]
    if missing:
        detail = f"no block for factor {missing[0]}"
    elif extra:
        detail = f"block for unset factor {extra[0]}"
    elif len(got_factors) != len(set(got_factors)):
        detail = "duplicate factor blocks"
    else:
        for b in rec.blocks:
            if not all((b.tactical_goal.strip(), b.information.strip(),
                        b.explanation.strip(), b.plan.strip())):
                detail = f"incomplete block for factor {b.factor}"
                break
    out.append(ConditionOutcome("W", detail is None, detail))

    # V: the recommendation exists (goals or blocks).
    d_ok = out[3].passed
    v_ok = d_ok or len(rec.blocks) > 0
    out.append(ConditionOutcome(
        "V", v_ok, None if v_ok else "neither goals nor blocks present"))

    return PostconditionReport(conditions=tuple(out))


# ---------------------------------------------------------------------------
# Indicator stream
# ---------------------------------------------------------------------------

def _subclass_records() -> list[HealthIndicators]:
    """One representative record per sub-class combination (16 in total)."""
    records = []
    for bits in range(16):
        lifestyle, biological, medical, symptomatic = (
            bits & 1, bits & 2, bits & 4, bits & 8)
        answers: dict[str, float] = {}
        if lifestyle:
            answers["x15"] = 1
        if biological:
            answers["x12"] = 160
        if medical:
            answers["x7"] = 1
        if symptomatic:
            answers["x17"] = 1
        records.append(HealthIndicators().with_answers(**answers))
    return records


def _boundary_records() -> list[HealthIndicators]:
    """Rule thresholds straddled from both sides, plus model age edges."""
    blank = HealthIndicators()
    records = []
    for key, threshold in (("x10", 5.0), ("x11", 3.0), ("x12", 140.0), ("x13", 7.0)):
        for value in (threshold - 0.01, threshold, threshold + 0.01):
            records.append(blank.with_answers(**{key: value}))
    # BMI boundary: weight tuned around 24 kg/m2 at height 170.
    for weight in (69.33, 69.36, 69.39):
        records.append(blank.with_answers(x3=170, x4=weight))
    # Age band edges with complete risk inputs.
    for age, male in ((39, 0), (40, 1), (69, 0), (70, 1), (89, 0), (90, 1)):
        records.append(blank.with_answers(
            x1=male, x2=age, x11=3.5, x12=130, x15=age % 2))
    return records


def random_profiles(seed: int, n: int) -> list[HealthIndicators]:
    """Reproducible indicator stream of length ``n``.

    The stream opens with the 16 sub-class representatives and the boundary
    records, then continues with seeded random records (fields dropped out
    at random, occasional implausible values to exercise the warning path).
    """
    if n < 1:
        raise ValueError("n must be at least 1")

    records = _subclass_records() + _boundary_records()
    rng = random.Random(seed)

    while len(records) < n:
        answers: dict[str, float] = {}
        if rng.random() < 0.9:
            answers["x1"] = rng.randint(0, 1)
        if rng.random() < 0.9:
            answers["x2"] = round(rng.uniform(25, 95), 1)
        if rng.random() < 0.8:
            answers["x3"] = round(rng.uniform(145, 200), 1)
            answers["x4"] = round(rng.uniform(45, 130), 1)
        for key in ("x5", "x6", "x7", "x8", "x9"):
            if rng.random() < 0.5:
                answers[key] = 1 if rng.random() < 0.25 else 0
        if rng.random() < 0.8:
            answers["x10"] = round(rng.uniform(2.5, 9.0), 2)
        if rng.random() < 0.8:
            answers["x11"] = round(rng.uniform(1.5, 7.0), 2)
        if rng.random() < 0.85:
            answers["x12"] = round(rng.uniform(90, 210), 0)
        if rng.random() < 0.8:
            answers["x13"] = round(rng.uniform(3.0, 12.0), 1)
        for key in ("x14", "x15", "x16", "x17"):
            if rng.random() < 0.7:
                answers[key] = 1 if rng.random() < 0.4 else 0
        if rng.random() < 0.02:
            answers["x12"] = round(rng.uniform(301, 400), 0)
        records.append(HealthIndicators().with_answers(**answers))

    return records[:n]


@dataclass
class SimulationReport:
    """Aggregated postcondition results over a generated stream."""

    seed: int
    trials: int
    passes: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    subclass_counts: dict[str, int] = field(default_factory=dict)
    elapsed_seconds: float = 0.0

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict[str, str]:
        return {name: f"pass {self.passes.get(name, 0)}/{self.trials}"
                for name in CONDITION_NAMES}

    def to_payload(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "summary": self.summary(),
            "all_passed": self.all_passed,
            "failures": self.failures,
            "subclass_counts": dict(sorted(self.subclass_counts.items())),
            "elapsed_seconds": round(self.elapsed_seconds, 3),
        }


def run_simulation(seed: int, n: int, catalog: Catalog,
                   cal: RiskCalibration) -> SimulationReport:
    """Push ``n`` generated records through the pipeline and check each one."""
    report = SimulationReport(seed=seed, trials=n,
                              passes={name: 0 for name in CONDITION_NAMES})
    started = time.perf_counter()
    for trial, ind in enumerate(random_profiles(seed, n)):
        rec = generate(ind, catalog, cal)
        checked = check_postconditions(ind, rec, rec.profile)
        key = "".join(str(flag) for flag in rec.profile.classes.flags)
        report.subclass_counts[key] = report.subclass_counts.get(key, 0) + 1
        for outcome in checked.conditions:
            if outcome.passed:
                report.passes[outcome.name] += 1
            else:
                report.failures.append({
                    "trial": trial,
                    "condition": outcome.name,
                    "detail": outcome.detail,
                    "record": serialize(ind),
                })
    report.elapsed_seconds = time.perf_counter() - started
    return report


# ---------------------------------------------------------------------------
# Survey metrics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SurveyMatrix:
    """Likert scores, one row of participant answers per question."""

    questions: tuple[tuple[float, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.questions:
            raise ValueError("survey matrix has no questions")
        width = len(self.questions[0])
        for row in self.questions:
            if len(row) != width:
                raise ValueError("all questions need the same participant count")
            for score in row:
                if not (1.0 <= score <= LIKERT_MAX):
                    raise ValueError(f"score {score} outside the 1-5 scale")
        if self.labels and len(self.labels) != len(self.questions):
            raise ValueError("one label per question required")

    @property
    def participants(self) -> int:
        return len(self.questions[0])


def dus(scores: Sequence[float]) -> float:
    """Degree-of-usability score for one question: mean over the scale maximum."""
    if not scores:
        raise ValueError("no scores given")
    for score in scores:
        if not (1.0 <= score <= LIKERT_MAX):
            raise ValueError(f"score {score} outside the 1-5 scale")
    return sum(scores) / (LIKERT_MAX * len(scores))


def cronbach_alpha(matrix: SurveyMatrix) -> float:
    """Internal-consistency alpha over a survey matrix (sample variances)."""
    n_items = len(matrix.questions)
    if n_items < 2:
        raise ValueError("alpha needs at least two questions")
    if matrix.participants < 2:
        raise ValueError("alpha needs at least two participants")
    item_variance = sum(statistics.variance(row) for row in matrix.questions)
    totals = [sum(row[v] for row in matrix.questions)
              for v in range(matrix.participants)]
    total_variance = statistics.variance(totals)
    if total_variance == 0:
        raise ValueError("total-score variance is zero; alpha undefined")
    return (n_items / (n_items - 1)) * (1.0 - item_variance / total_variance)
