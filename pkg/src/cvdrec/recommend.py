"""Recommendation assembly.

A recommendation has four dimensions:

    goals        strategic goal per identified class (EsG), most severe first
    information  the risk-category sentence plus one informing item per factor
    explanation  why each factor matters (generated or curated text)
    action plan  concrete steps per factor

Per-factor content is grouped into blocks, one block per set factor.
Blocks are ordered by class severity (class number descending); within the
lifestyle and biological classes, by ascending impact rank so the highest
population-level impact comes first; ties by factor number.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import explain as explain_mod
from .catalog import (
    KIND_EXPLANATION, KIND_GOAL, KIND_INFO, KIND_PLAN, KIND_TACTICAL,
    Catalog, build_render_context, render_item,
)
from .factors import (
    FACTOR_CLASS, FACTOR_NAMES, ClassVector, FactorVector, Thresholds,
    DEFAULT_THRESHOLDS, classify, derive_factors,
)
from .intake import HealthIndicators
from .risk import RiskCalibration, RiskEstimate, assess_risk

# Utility ordering applies inside these classes only; medical-history and
# urgent blocks keep their factor order.
RANK_ORDERED_CLASSES = (2, 3)


@dataclass(frozen=True)
class UserProfile:
    """Everything derived from one questionnaire record."""

    factor: FactorVector
    classes: ClassVector
    risk: RiskEstimate


def build_profile(ind: HealthIndicators, cal: RiskCalibration,
                  thresholds: Thresholds = DEFAULT_THRESHOLDS) -> UserProfile:
    """Derive factors, classes and the risk estimate for a record."""
    fv = derive_factors(ind, thresholds)
    return UserProfile(factor=fv, classes=classify(fv), risk=assess_risk(ind, fv, cal))


@dataclass(frozen=True)
class RecommendationBlock:
    """The per-factor slice of all four dimensions."""

    factor: int
    name: str
    class_no: int
    utility: float
    tactical_goal: str
    information: str
    explanation: str
    explanation_source: str
    plan: str


@dataclass(frozen=True)
class Recommendation:
    """A complete four-dimension recommendation for one record.

    ``plan_intro`` and the two ``general_*`` texts are copied out of the
    catalog at assembly time so rendering needs no catalog access.
    """

    goals: tuple[str, ...]
    category_statement: str
    blocks: tuple[RecommendationBlock, ...]
    profile: UserProfile
    catalog_version: str
    plan_intro: str
    general_explanation: str
    general_plan: str
    preamble: str | None = None
    closing: str | None = None


def utility(block: RecommendationBlock, fv: FactorVector,
            ranks: dict[int, int]) -> float:
    """Impact weight of a block: the rank of its factor when that factor is
    both set and modifiable, else 0. Lower = larger impact = shown earlier."""
    total = 0.0
    for factor, rank in ranks.items():
        if block.factor == factor and fv.flag(factor):
            total += rank
    return total


def select_goals(classes: ClassVector, catalog: Catalog,
                 context: dict[str, str]) -> tuple[str, ...]:
    """One strategic goal per identified class, most severe class first."""
    return tuple(
        render_item(catalog.item(KIND_GOAL, cls), context)
        for cls in sorted(classes.active(), reverse=True)
    )


def _block_sort_key(block: RecommendationBlock) -> tuple:
    in_rank_order = block.class_no in RANK_ORDERED_CLASSES
    return (
        -block.class_no,
        block.utility if in_rank_order else 0.0,
        block.factor,
    )


def assemble(profile: UserProfile, catalog: Catalog,
             explanations: explain_mod.ExplanationResult,
             ind: HealthIndicators) -> Recommendation:
    """Assemble the recommendation for a derived profile.

    ``explanations`` must carry a text for every set factor (the explanation
    stage guarantees this by falling back to catalog texts).
    """
    context = build_render_context(ind, profile.factor.bmi, profile.risk.category)
    goals = select_goals(profile.classes, catalog, context)

    blocks = []
    for factor in profile.factor.active():
        weight = float(catalog.ranks[factor]) if factor in catalog.ranks else 0.0
        blocks.append(RecommendationBlock(
            factor=factor,
            name=FACTOR_NAMES[factor],
            class_no=FACTOR_CLASS[factor],
            utility=weight,
            tactical_goal=render_item(catalog.item(KIND_TACTICAL, factor), context),
            information=render_item(catalog.item(KIND_INFO, factor), context),
            explanation=explanations.texts.get(
                factor,
                render_item(catalog.item(KIND_EXPLANATION, factor), context)),
            explanation_source=explanations.sources.get(factor, explain_mod.FALLBACK),
            plan=render_item(catalog.item(KIND_PLAN, factor), context),
        ))
    blocks.sort(key=_block_sort_key)

    return Recommendation(
        goals=goals,
        category_statement=catalog.category_statement(profile.risk.category),
        blocks=tuple(blocks),
        profile=profile,
        catalog_version=catalog.version,
        plan_intro=catalog.header("plan_intro"),
        general_explanation=catalog.header("general_explanation"),
        general_plan=catalog.header("general_plan"),
        preamble=explanations.preamble,
        closing=explanations.closing,
    )


def generate(ind: HealthIndicators, catalog: Catalog, cal: RiskCalibration,
             llm: explain_mod.LlmConfig | None = None,
             cache: explain_mod.ResponseCache | None = None,
             thresholds: Thresholds = DEFAULT_THRESHOLDS) -> Recommendation:
    """Full pipeline for one record: derive, explain, assemble.

    With ``llm`` unset (or fallback-only) the result is fully deterministic.
    """
    profile = build_profile(ind, cal, thresholds)
    context = build_render_context(ind, profile.factor.bmi, profile.risk.category)
    fallback_texts = {
        factor: render_item(catalog.item(KIND_EXPLANATION, factor), context)
        for factor in profile.factor.active()
    }
    prompt = explain_mod.build_prompt(profile.factor, ind, profile.risk.cvrisk)
    explanations = explain_mod.request_explanations(
        prompt, llm, fallback_texts, cache=cache)
    return assemble(profile, catalog, explanations, ind)
