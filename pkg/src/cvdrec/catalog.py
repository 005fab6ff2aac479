"""Recommendation content catalog.

The catalog is a JSON artifact with four families of per-factor texts plus
the per-class strategic goals:

    EsG           strategic goal, one per class 1..5
    EsR           tactical goal, one per factor 1..13
    Inf           informing sentence, one per factor 1..13
    ExplFallback  curated explanation used when no generated text is available
    Plan          action steps, one per factor 1..13

plus ``ranks`` (impact rank per modifiable factor, lower = bigger impact),
and ``headers`` (risk-category sentences, the plan introduction and the
texts used when no factors are present).

Texts are ``str.format`` templates. Placeholders resolve against a render
context built from the questionnaire record; the known names are listed in
``RESOLVER_NAMES`` and loading fails on anything else, so an incomplete or
misspelled catalog is rejected at startup rather than at render time.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping

from .factors import FACTOR_COUNT, CLASS_COUNT, MODIFIABLE_FACTORS
from .intake import HealthIndicators
from .risk import CATEGORY_TEXT

KIND_GOAL = "EsG"
KIND_TACTICAL = "EsR"
KIND_INFO = "Inf"
KIND_EXPLANATION = "ExplFallback"
KIND_PLAN = "Plan"

PER_CLASS_KINDS = (KIND_GOAL,)
PER_FACTOR_KINDS = (KIND_TACTICAL, KIND_INFO, KIND_EXPLANATION, KIND_PLAN)

# Every placeholder a catalog text may use.
RESOLVER_NAMES = frozenset({
    "age", "sex", "height", "weight", "bmi",
    "total_cholesterol", "non_hdl", "sbp", "glucose",
    "bp_target", "category",
})

# Age-banded systolic target used by the {bp_target} resolver (mmHg).
BP_TARGET_BANDS = ((65.0, "130"), (float("inf"), "140"))

DEFAULT_CATALOG = "catalog_en.json"

REQUIRED_HEADERS = ("category_statement", "plan_intro",
                    "general_explanation", "general_plan")
CATEGORY_KEYS = ("low", "moderate", "high", "very_high", "not_assessed")


class CatalogError(ValueError):
    """Malformed or incomplete catalog."""


@dataclass(frozen=True)
class ContentItem:
    kind: str
    key: int
    text: str


@dataclass(frozen=True)
class Catalog:
    version: str
    language: str
    items: Mapping[tuple[str, int], ContentItem]
    ranks: Mapping[int, int]
    headers: Mapping[str, object]

    def item(self, kind: str, key: int) -> ContentItem:
        try:
            return self.items[(kind, key)]
        except KeyError:
            raise CatalogError(f"{kind} for factor {key} absent") from None

    def rank(self, factor: int) -> int:
        return self.ranks[factor]

    def category_statement(self, category: str) -> str:
        return self.headers["category_statement"][category]  # type: ignore[index]

    def header(self, name: str) -> str:
        return str(self.headers[name])


def _placeholders(template: str) -> set[str]:
    names = set()
    for _, fieldname, _, _ in string.Formatter().parse(template):
        if fieldname is None:
            continue
        if fieldname == "":
            raise CatalogError("positional placeholder {} is not allowed")
        names.add(fieldname.split(".")[0].split("[")[0])
    return names


def _check_text(context: str, text: object) -> str:
    if not isinstance(text, str) or not text.strip():
        raise CatalogError(f"{context}: empty text")
    unknown = _placeholders(text) - RESOLVER_NAMES
    if unknown:
        raise CatalogError(
            f"{context}: unknown placeholder {{{sorted(unknown)[0]}}}")
    return text


def load_catalog(path: str | Path | None = None) -> Catalog:
    """Load a catalog file and verify completeness.

    Checks: one EsG per class; EsR/Inf/ExplFallback/Plan for every factor;
    a rank for every modifiable factor; category sentences for every
    category; all placeholders resolvable.
    """
    if path is None:
        with resources.files("cvdrec.data").joinpath(DEFAULT_CATALOG).open("rb") as fh:
            raw = json.load(fh)
    else:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))

    items: dict[tuple[str, int], ContentItem] = {}
    for entry in raw.get("items", ()):
        try:
            kind, key = entry["kind"], int(entry["key"])
            text = entry["text"]
        except (KeyError, TypeError, ValueError) as err:
            raise CatalogError(f"malformed catalog item {entry!r}: {err}") from None
        if kind not in PER_CLASS_KINDS + PER_FACTOR_KINDS:
            raise CatalogError(f"unknown item kind {kind!r}")
        if (kind, key) in items:
            raise CatalogError(f"duplicate catalog item {kind}({key})")
        items[(kind, key)] = ContentItem(kind, key, _check_text(f"{kind}({key})", text))

    for cls in range(1, CLASS_COUNT + 1):
        if (KIND_GOAL, cls) not in items:
            raise CatalogError(f"EsG for class {cls} absent")
    for kind in PER_FACTOR_KINDS:
        for factor in range(1, FACTOR_COUNT + 1):
            if (kind, factor) not in items:
                raise CatalogError(f"{kind} for factor {factor} absent")

    ranks_raw = raw.get("ranks", {})
    ranks: dict[int, int] = {}
    for factor in MODIFIABLE_FACTORS:
        value = ranks_raw.get(str(factor), ranks_raw.get(factor))
        if value is None:
            raise CatalogError(f"impact rank for factor {factor} absent")
        rank = int(value)
        if rank < 1:
            raise CatalogError(f"impact rank for factor {factor} must be positive")
        ranks[factor] = rank

    headers = raw.get("headers", {})
    for name in REQUIRED_HEADERS:
        if name not in headers:
            raise CatalogError(f"header {name!r} absent")
    statements = headers["category_statement"]
    if not isinstance(statements, Mapping):
        raise CatalogError("category_statement must map categories to sentences")
    for category in CATEGORY_KEYS:
        if category not in statements:
            raise CatalogError(f"category sentence for {category!r} absent")
        _check_text(f"category_statement[{category}]", statements[category])
    for name in ("plan_intro", "general_explanation", "general_plan"):
        _check_text(name, headers[name])

    return Catalog(
        version=str(raw.get("version", "0")),
        language=str(raw.get("language", "en")),
        items=items,
        ranks=ranks,
        headers=headers,
    )


def bp_target(age: float) -> str:
    """Age-banded systolic blood-pressure target in mmHg."""
    for upper, target in BP_TARGET_BANDS:
        if age < upper:
            return target
    return BP_TARGET_BANDS[-1][1]


def _fmt(value: float) -> str:
    if float(value) == int(value):
        return str(int(value))
    return f"{value:.1f}"


def build_render_context(ind: HealthIndicators, bmi: float,
                         category: str) -> dict[str, str]:
    """Values for every known placeholder, pre-formatted for prose.

    Blood pressure renders as the raw reading ("160/90") when one was given.
    """
    sbp = ind.display_text("x12") or _fmt(ind.x12)
    return {
        "age": _fmt(ind.x2),
        "sex": "male" if ind.x1 == 1 else "female",
        "height": _fmt(ind.x3),
        "weight": _fmt(ind.x4),
        "bmi": _fmt(bmi),
        "total_cholesterol": _fmt(ind.x10),
        "non_hdl": _fmt(ind.x11),
        "sbp": sbp,
        "glucose": _fmt(ind.x13),
        "bp_target": bp_target(ind.x2),
        "category": CATEGORY_TEXT.get(category, category),
    }


def render_item(item: ContentItem, context: Mapping[str, str]) -> str:
    """Fill a catalog template. Raises CatalogError on an unresolvable name."""
    try:
        return item.text.format(**context)
    except (KeyError, IndexError) as err:
        raise CatalogError(
            f"{item.kind}({item.key}): placeholder {err} has no value") from None


def render_template(name: str, text: str, context: Mapping[str, str]) -> str:
    try:
        return text.format(**context)
    except (KeyError, IndexError) as err:
        raise CatalogError(f"{name}: placeholder {err} has no value") from None
