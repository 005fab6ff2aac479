"""Risk-factor and class derivation rules.

Thirteen binary factors are derived from the questionnaire, then grouped
into five classes:

    class 1  no factors at all
    class 2  lifestyle        f11 smoking, f12 inactivity, f13 diet
    class 3  biological       f6 obesity, f7 total chol, f8 non-HDL,
                              f9 systolic BP, f10 glucose
    class 4  medical history  f2 CVD/events, f3 kidney disease,
                              f4 diabetes, f5 family history
    class 5  acute symptoms   f1 angina with deterioration

Unanswered questions never set a factor. All thresholds are strict
comparisons except BMI, which fires at the boundary value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intake import HealthIndicators

FACTOR_COUNT = 13
CLASS_COUNT = 5

# Human names, indexed by factor number.
FACTOR_NAMES: dict[int, str] = {
    1: "angina symptoms with deterioration",
    2: "documented cardiovascular disease or past cardiovascular events",
    3: "chronic kidney disease",
    4: "type 2 diabetes",
    5: "family history of early CVD",
    6: "obesity",
    7: "high total cholesterol",
    8: "high non-HDL cholesterol",
    9: "high systolic blood pressure",
    10: "high blood glucose",
    11: "smoking",
    12: "physical inactivity",
    13: "unhealthy diet",
}

# Which class each factor belongs to.
FACTOR_CLASS: dict[int, int] = {
    1: 5,
    2: 4, 3: 4, 4: 4, 5: 4,
    6: 3, 7: 3, 8: 3, 9: 3, 10: 3,
    11: 2, 12: 2, 13: 2,
}

# The questionnaire indicator a factor is read from (threshold factors point
# at their measured value). Used for measured-value display and for ordering
# factor phrases the way the questionnaire orders its questions.
FACTOR_SOURCE: dict[int, str] = {
    1: "x17",
    2: "x6",   # plus x8; x6 is the primary source
    3: "x7",
    4: "x9",
    5: "x5",
    6: "x3",   # plus x4
    7: "x10",
    8: "x11",
    9: "x12",
    10: "x13",
    11: "x15",
    12: "x14",
    13: "x16",
}

MODIFIABLE_FACTORS: tuple[int, ...] = (6, 7, 8, 9, 10, 11, 12, 13)

BMI_SENTINEL = 25.0


@dataclass(frozen=True)
class Thresholds:
    """Decision limits for the measured indicators."""

    total_cholesterol: float = 5.0
    non_hdl: float = 3.0
    sbp: float = 140.0
    glucose: float = 7.0
    bmi: float = 24.0


DEFAULT_THRESHOLDS = Thresholds()


@dataclass(frozen=True)
class FactorVector:
    """Thirteen factor flags plus the BMI they were derived with."""

    flags: tuple[int, ...]
    bmi: float

    def __post_init__(self):
        if len(self.flags) != FACTOR_COUNT:
            raise ValueError(f"expected {FACTOR_COUNT} factor flags, got {len(self.flags)}")

    def flag(self, i: int) -> int:
        """Factor flag by 1-based factor number."""
        return self.flags[i - 1]

    def active(self) -> tuple[int, ...]:
        """Factor numbers that are set, ascending."""
        return tuple(i for i in range(1, FACTOR_COUNT + 1) if self.flag(i))

    @property
    def any(self) -> bool:
        return any(self.flags)


@dataclass(frozen=True)
class ClassVector:
    """Five class flags; at least one is always set."""

    flags: tuple[int, ...]

    def __post_init__(self):
        if len(self.flags) != CLASS_COUNT:
            raise ValueError(f"expected {CLASS_COUNT} class flags, got {len(self.flags)}")

    def flag(self, j: int) -> int:
        return self.flags[j - 1]

    def active(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, CLASS_COUNT + 1) if self.flag(j))

    def highest(self) -> int:
        """Highest set class number (severity order is ascending by number)."""
        return max(self.active())


def compute_bmi(height_cm: float, weight_kg: float) -> float:
    """Body mass index in kg/m2 from height in cm.

    A zero height is mapped to the conventional sentinel of 25 so the value
    stays defined; callers decide whether a degenerate record should be
    allowed to trip the obesity rule (see :func:`derive_factors`).
    """
    if height_cm == 0:
        return BMI_SENTINEL
    return 10_000.0 * weight_kg / (height_cm * height_cm)


def derive_factors(
    ind: HealthIndicators, thresholds: Thresholds = DEFAULT_THRESHOLDS
) -> FactorVector:
    """Apply the 13 factor rules to a questionnaire record.

    The obesity rule is only evaluated when height or weight was actually
    answered; otherwise the BMI sentinel for an empty record would mark a
    blank questionnaire as obese.
    """
    bmi = compute_bmi(ind.x3, ind.x4)
    anthropometry_given = ind.is_provided("x3") or ind.is_provided("x4")

    flags = (
        1 if ind.x17 == 1 else 0,                              # f1 angina
        1 if (ind.x6 == 1 or ind.x8 == 1) else 0,              # f2 CVD or events
        1 if ind.x7 == 1 else 0,                               # f3 kidney disease
        1 if ind.x9 == 1 else 0,                               # f4 diabetes
        1 if ind.x5 == 1 else 0,                               # f5 family history
        1 if (anthropometry_given and bmi >= thresholds.bmi) else 0,  # f6 obesity
        1 if ind.x10 > thresholds.total_cholesterol else 0,    # f7 total chol
        1 if ind.x11 > thresholds.non_hdl else 0,              # f8 non-HDL
        1 if ind.x12 > thresholds.sbp else 0,                  # f9 systolic BP
        1 if ind.x13 > thresholds.glucose else 0,              # f10 glucose
        1 if ind.x15 == 1 else 0,                              # f11 smoking
        1 if ind.x14 == 1 else 0,                              # f12 inactivity
        1 if ind.x16 == 1 else 0,                              # f13 diet
    )
    return FactorVector(flags=flags, bmi=bmi)


def classify(fv: FactorVector) -> ClassVector:
    """Group a factor vector into the five-class vector."""
    f = fv.flag
    c2 = 1 if (f(11) or f(12) or f(13)) else 0
    c3 = 1 if (f(6) or f(7) or f(8) or f(9) or f(10)) else 0
    c4 = 1 if (f(2) or f(3) or f(4) or f(5)) else 0
    c5 = 1 if f(1) else 0
    c1 = 1 if not (c2 or c3 or c4 or c5) else 0
    return ClassVector(flags=(c1, c2, c3, c4, c5))
