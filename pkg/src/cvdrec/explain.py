"""Plain-language explanations for identified risk factors.

A prompt of the form ``task + params + constraints`` is sent to a
text-generation endpoint (any HTTP service speaking the common
chat-completions shape). The response is split on numbered headings,
matched to the requested factors by keywords, and passed through a safety
filter. On any failure — transport, timeout, unparseable text, filtered
content — the curated per-factor fallback texts are used instead, so the
recommendation pipeline never depends on the endpoint being up.

Configuration comes from the environment by default::

    CVDREC_LLM_ENDPOINT       full URL of the chat-completions endpoint
    CVDREC_LLM_API_KEY        bearer credential (optional)
    CVDREC_LLM_MODEL          model identifier (default "gpt-4")
    CVDREC_LLM_TIMEOUT        request timeout in seconds (default 20)
    CVDREC_LLM_TTL            response cache TTL in seconds (default 300)
    CVDREC_LLM_FALLBACK_ONLY  "1" disables generation entirely
"""

from __future__ import annotations

import logging
import os
import re
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Mapping

import httpx

from .factors import FACTOR_SOURCE, FactorVector
from .intake import HealthIndicators
from .risk import CATEGORY_TEXT, categorize

logger = logging.getLogger(__name__)

GENERATED = "generated"
FALLBACK = "fallback"

PROMPT_TASK = (
    "Please give the explanations why person need to control her/his CV risk "
    "factors such as "
)
PROMPT_CONSTRAINTS = (
    "The explanation must be understandable to the person, include only person "
    "CV risk factors and contain no more 4 propositions for each CVD risk factors."
)

# Phrase used for each factor inside the prompt parameter list.
PROMPT_PHRASES: dict[int, str] = {
    1: "angina symptoms with worsening condition",
    2: "documented cardiovascular disease",
    3: "chronic kidney disease",
    4: "type 2 diabetes",
    5: "family history of early CV diseases",
    6: "obesity",
    7: "high level of cholesterol",
    8: "high level of non-HDL cholesterol",
    9: "high blood pressure",
    10: "high level of glucose",
    11: "smoking",
    12: "physical inactivity",
    13: "unhealthy diet",
}

# Title keywords for matching response sections back to factors. Checked in
# MATCH_ORDER so that the more specific phrasings win (non-HDL before total
# cholesterol, inactivity before generic "activity").
FACTOR_KEYWORDS: dict[int, tuple[str, ...]] = {
    1: ("angina", "chest pain"),
    2: ("documented cardiovascular", "cardiovascular disease", "heart disease"),
    3: ("kidney",),
    4: ("diabetes",),
    5: ("family",),
    6: ("obesity", "body mass", "weight"),
    7: ("cholesterol",),
    8: ("non-hdl", "non hdl"),
    9: ("blood pressure", "hypertension"),
    10: ("glucose", "blood sugar"),
    11: ("smoking", "tobacco"),
    12: ("inactivity", "physical activity", "sedentary", "exercise"),
    13: ("diet", "nutrition", "eating"),
}
MATCH_ORDER = (8, 7, 9, 10, 11, 12, 13, 6, 4, 3, 5, 1, 2)

CATEGORY_KEYWORDS = ("total cv risk", "total cardiovascular risk", "score model")

# Generated text mentioning concrete medication is dropped in favour of the
# curated fallback: prescribing is out of scope for this system.
_DOSAGE_RE = re.compile(r"\b\d+(?:\.\d+)?\s*(?:mg|mcg|µg|iu)s?\b|\bmilligrams?\b", re.I)
_MEDICATION_TERMS = (
    "statin", "aspirin", "metformin", "insulin", "ramipril", "lisinopril",
    "amlodipine", "bisoprolol", "warfarin", "clopidogrel", "beta-blocker",
    "ace inhibitor", "dosage", "dose of",
)

_HEADING_RE = re.compile(r"^\s*(?:#{1,6}\s*)?(?:\*\*\s*)?(\d{1,2})[.)]\s*(.+?)\s*$")


def medication_content(text: str) -> str | None:
    """Reason string when text contains medication-dosage content, else None."""
    match = _DOSAGE_RE.search(text)
    if match:
        return f"dosage expression {match.group(0)!r}"
    lowered = text.lower()
    for term in _MEDICATION_TERMS:
        if term in lowered:
            return f"medication term {term!r}"
    return None


@dataclass(frozen=True)
class ExplanationPrompt:
    """The three prompt components plus the factors they were built from."""

    task: str
    params: tuple[str, ...]
    constraints: str
    factors: tuple[int, ...]
    category_included: bool

    @property
    def params_text(self) -> str:
        return ", ".join(self.params)

    @property
    def text(self) -> str:
        return f"{self.task}{self.params_text}. {self.constraints}"


def build_prompt(fv: FactorVector, ind: HealthIndicators,
                 cvrisk: float | None = None) -> ExplanationPrompt | None:
    """Build the explanation prompt for a record's set factors.

    Factor phrases are ordered the way the questionnaire orders its
    questions. When a ten-year risk estimate is available its level opens
    the parameter list ("<level> total CV risk on SCORE model"); a
    blood-pressure factor carries the raw reading when one was entered
    ("high blood pressure – 160/90 mmHg"). Returns None when there is
    nothing to explain.
    """
    ordered = sorted(fv.active(), key=lambda i: int(FACTOR_SOURCE[i][1:]))

    params: list[str] = []
    if cvrisk is not None:
        level = CATEGORY_TEXT[categorize(cvrisk, False)]
        params.append(f"{level} total CV risk on SCORE model")
    for factor in ordered:
        phrase = PROMPT_PHRASES[factor]
        if factor == 9:
            reading = ind.display_text("x12")
            if reading:
                phrase = f"{phrase} – {reading} mmHg"
        params.append(phrase)

    if not params:
        return None
    return ExplanationPrompt(
        task=PROMPT_TASK,
        params=tuple(params),
        constraints=PROMPT_CONSTRAINTS,
        factors=tuple(ordered),
        category_included=cvrisk is not None,
    )


@dataclass(frozen=True)
class ParsedResponse:
    """Outcome of splitting a response into per-factor sections."""

    sections: Mapping[int, str]
    category_text: str | None
    preamble: str | None
    closing: str | None
    unmatched_factors: tuple[int, ...]
    extra_sections: tuple[str, ...]


def _split_sections(text: str) -> tuple[str, list[tuple[str, str]]]:
    """Split on numbered headings; returns (preamble, [(title, body), ...]).

    Handles both layouts seen in practice: a heading line followed by body
    paragraphs, and one-line sections where title and body share the line
    separated by "**" ("### 1. Smoking** Smoking damages ...").
    """
    lines = text.splitlines()
    headings: list[tuple[int, str, str]] = []  # (line index, title, inline body)
    for idx, line in enumerate(lines):
        match = _HEADING_RE.match(line)
        if not match:
            continue
        rest = match.group(2)
        if "**" in rest:
            title, _, inline = rest.partition("**")
            title, inline = title.strip(" *"), inline.strip(" *")
        else:
            title, inline = rest.strip(" *"), ""
        marked = line.lstrip().startswith(("#", "*")) or "**" in rest
        # A bare "1. …" line that reads like prose (ends with a period) is a
        # list item inside a section, not a heading.
        if marked or not rest.rstrip().endswith("."):
            headings.append((idx, title, inline))

    if not headings:
        return text.strip(), []

    preamble = "\n".join(lines[: headings[0][0]]).strip()
    sections = []
    for pos, (start, title, inline) in enumerate(headings):
        end = headings[pos + 1][0] if pos + 1 < len(headings) else len(lines)
        tail = "\n".join(lines[start + 1 : end]).strip()
        body = f"{inline}\n{tail}".strip() if inline else tail
        sections.append((title, body))
    return preamble, sections


def parse_response(text: str, requested: tuple[int, ...],
                   category_requested: bool = False) -> ParsedResponse:
    """Match numbered response sections to the requested factors.

    Matching is case-insensitive keyword containment on the section title.
    The paragraph block after the last section's first paragraph is treated
    as a closing remark. Unmatched requested factors are reported so the
    caller can fill them from the fallback catalog; unmatched sections are
    kept verbatim.
    """
    preamble, raw_sections = _split_sections(text)
    if not raw_sections:
        return ParsedResponse(
            sections={}, category_text=None,
            preamble=preamble or None, closing=None,
            unmatched_factors=tuple(requested), extra_sections=(),
        )

    # Peel trailing paragraphs of the last section off into the closing.
    closing = None
    title, body = raw_sections[-1]
    paragraphs = re.split(r"\n\s*\n", body)
    if len(paragraphs) > 1:
        raw_sections[-1] = (title, paragraphs[0].strip())
        closing = "\n\n".join(p.strip() for p in paragraphs[1:]).strip() or None

    matched: dict[int, str] = {}
    category_text = None
    extras: list[str] = []
    pending = [f for f in MATCH_ORDER if f in requested]

    for title, body in raw_sections:
        lowered = title.lower()
        hit = None
        for factor in pending:
            if any(kw in lowered for kw in FACTOR_KEYWORDS[factor]):
                hit = factor
                break
        if hit is not None:
            matched[hit] = body or title
            pending.remove(hit)
        elif category_requested and category_text is None and any(
                kw in lowered for kw in CATEGORY_KEYWORDS):
            category_text = body or title
        else:
            extras.append(f"{title}\n{body}".strip())

    unmatched = tuple(f for f in requested if f not in matched)
    return ParsedResponse(
        sections=matched,
        category_text=category_text,
        preamble=preamble or None,
        closing=closing,
        unmatched_factors=unmatched,
        extra_sections=tuple(extras),
    )


@dataclass(frozen=True)
class ExplanationResult:
    """Per-factor explanation texts with their provenance."""

    texts: Mapping[int, str]
    sources: Mapping[int, str]
    preamble: str | None = None
    closing: str | None = None
    category_text: str | None = None
    raw_response: str | None = None
    notes: tuple[str, ...] = ()

    @property
    def source(self) -> str:
        return GENERATED if GENERATED in self.sources.values() else FALLBACK


@dataclass
class LlmConfig:
    """Endpoint configuration; ``transport`` is injectable for tests."""

    endpoint: str | None = None
    api_key: str | None = None
    model: str = "gpt-4"
    timeout: float = 20.0
    temperature: float = 0.0
    max_tokens: int = 1024
    cache_ttl: float = 300.0
    fallback_only: bool = False
    transport: httpx.BaseTransport | None = field(default=None, repr=False)

    @classmethod
    def from_env(cls, env: Mapping[str, str] | None = None) -> "LlmConfig":
        env = dict(os.environ if env is None else env)
        return cls(
            endpoint=env.get("CVDREC_LLM_ENDPOINT") or None,
            api_key=env.get("CVDREC_LLM_API_KEY") or None,
            model=env.get("CVDREC_LLM_MODEL", "gpt-4"),
            timeout=float(env.get("CVDREC_LLM_TIMEOUT", "20")),
            cache_ttl=float(env.get("CVDREC_LLM_TTL", "300")),
            fallback_only=env.get("CVDREC_LLM_FALLBACK_ONLY", "") in ("1", "true", "yes"),
        )

    @property
    def enabled(self) -> bool:
        return bool(self.endpoint) and not self.fallback_only


class _GenerationFailure(Exception):
    pass


class ResponseCache:
    """TTL cache over raw response texts with per-prompt request coalescing."""

    def __init__(self, clock: Callable[[], float] = time.monotonic):
        self._clock = clock
        self._lock = threading.Lock()
        self._entries: dict[str, tuple[float, str]] = {}
        self._inflight: dict[str, threading.Lock] = {}

    def get_or_fetch(self, key: str, ttl: float,
                     fetch: Callable[[], str], bypass: bool = False) -> str:
        if not bypass:
            with self._lock:
                hit = self._entries.get(key)
                if hit and hit[0] > self._clock():
                    return hit[1]

        with self._lock:
            gate = self._inflight.setdefault(key, threading.Lock())
        with gate:
            if not bypass:
                with self._lock:
                    hit = self._entries.get(key)
                    if hit and hit[0] > self._clock():
                        return hit[1]
            value = fetch()
            with self._lock:
                self._entries[key] = (self._clock() + ttl, value)
                self._inflight.pop(key, None)
            return value


def _call_endpoint(prompt: ExplanationPrompt, config: LlmConfig) -> str:
    headers = {}
    if config.api_key:
        headers["Authorization"] = f"Bearer {config.api_key}"
    payload = {
        "model": config.model,
        "messages": [{"role": "user", "content": prompt.text}],
        "temperature": config.temperature,
        "max_tokens": config.max_tokens,
    }
    try:
        with httpx.Client(transport=config.transport, timeout=config.timeout) as client:
            response = client.post(config.endpoint, json=payload, headers=headers)
            response.raise_for_status()
            data = response.json()
        text = data["choices"][0]["message"]["content"]
    except (httpx.HTTPError, KeyError, IndexError, TypeError, ValueError) as err:
        raise _GenerationFailure(f"{type(err).__name__}: {err}") from err
    if not isinstance(text, str) or not text.strip():
        raise _GenerationFailure("endpoint returned empty text")
    return text


def _fallback_result(prompt: ExplanationPrompt | None,
                     fallback_texts: Mapping[int, str],
                     notes: tuple[str, ...]) -> ExplanationResult:
    factors = prompt.factors if prompt else tuple(sorted(fallback_texts))
    return ExplanationResult(
        texts={f: fallback_texts[f] for f in factors},
        sources={f: FALLBACK for f in factors},
        notes=notes,
    )


def request_explanations(
    prompt: ExplanationPrompt | None,
    config: LlmConfig | None,
    fallback_texts: Mapping[int, str],
    cache: ResponseCache | None = None,
    cache_bypass: bool = False,
) -> ExplanationResult:
    """Generate explanations for a prompt, falling back per factor.

    Never raises for endpoint problems: any transport, format or parsing
    failure degrades to the curated texts with a note. ``fallback_texts``
    must cover every factor in the prompt.
    """
    if prompt is None:
        return _fallback_result(None, fallback_texts, ("nothing to explain",))
    if config is None or not config.enabled:
        return _fallback_result(prompt, fallback_texts, ("generation disabled",))

    try:
        if cache is not None:
            raw = cache.get_or_fetch(
                f"{config.model}\n{prompt.text}", config.cache_ttl,
                lambda: _call_endpoint(prompt, config), bypass=cache_bypass)
        else:
            raw = _call_endpoint(prompt, config)
    except _GenerationFailure as err:
        logger.warning("explanation generation failed, using fallback: %s", err)
        return _fallback_result(prompt, fallback_texts, (f"generation failed: {err}",))

    parsed = parse_response(raw, prompt.factors, prompt.category_included)

    texts: dict[int, str] = {}
    sources: dict[int, str] = {}
    notes: list[str] = []
    for factor in prompt.factors:
        generated = parsed.sections.get(factor)
        if generated:
            reason = medication_content(generated)
            if reason is None:
                texts[factor] = generated
                sources[factor] = GENERATED
                continue
            notes.append(f"factor {factor}: generated text dropped ({reason})")
        else:
            notes.append(f"factor {factor}: no matching section in response")
        texts[factor] = fallback_texts[factor]
        sources[factor] = FALLBACK
    if parsed.extra_sections:
        notes.append(f"{len(parsed.extra_sections)} unmatched response section(s)")

    return ExplanationResult(
        texts=texts,
        sources=sources,
        preamble=parsed.preamble,
        closing=parsed.closing,
        category_text=parsed.category_text,
        raw_response=raw,
        notes=tuple(notes),
    )
