"""CSV ingestion for sentence-pair corpora, per-split error-distribution
analysis, and classifier-informed prompt synthesis.
"""
from __future__ import annotations

import csv
import hashlib
import logging
from dataclasses import dataclass

from .classifier import CATEGORY_ORDER, ErrorCategory, classify_pair
from .errors import InputError, ParseError, SchemaError
from .textnorm import DEFAULT_POLICY, NormalizationPolicy, normalize_text
from .tokenizer import LanguageProfile

log = logging.getLogger(__name__)

SPLITS = ("train", "dev", "test")

# Accepted header spellings (case-insensitive, trimmed).
INPUT_HEADERS = {"input sentence", "input"}
OUTPUT_HEADERS = {"output sentence", "output"}


@dataclass(frozen=True)
class SentencePair:
    input: str
    output: str
    row: int  # 0-based data-row index in the source CSV
    split: str
    lang: str


@dataclass(frozen=True)
class DistributionReport:
    lang: str
    split: str
    total: int
    counts: dict  # ErrorCategory -> int, every category present
    precedence_order: tuple = CATEGORY_ORDER

    def to_dict(self, profile: LanguageProfile | None = None) -> dict:
        return {
            "lang": self.lang,
            "split": self.split,
            "total": self.total,
            "counts": {cat.value: self.counts[cat] for cat in CATEGORY_ORDER},
            "display_labels": {
                cat.value: cat.display_label(profile) for cat in CATEGORY_ORDER
            },
            "precedence_order": [cat.value for cat in self.precedence_order],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DistributionReport":
        try:
            counts = {
                ErrorCategory(name): int(count)
                for name, count in data["counts"].items()
            }
            report = cls(
                lang=data["lang"],
                split=data["split"],
                total=int(data["total"]),
                counts={cat: counts.get(cat, 0) for cat in CATEGORY_ORDER},
            )
        except (KeyError, ValueError) as exc:
            raise SchemaError(f"bad distribution report: {exc}") from exc
        return report


@dataclass(frozen=True)
class PromptSpec:
    """A frozen prompt: category emphasis plus fixed minimal-edit rules."""

    lang: str
    prioritized: tuple  # ErrorCategory, most frequent first (with promotion)
    deprioritized: tuple
    constraints: tuple  # text clauses
    rendered: str

    def sha256(self) -> str:
        return hashlib.sha256(self.rendered.encode("utf-8")).hexdigest()


def _resolve_columns(header: list[str], path) -> tuple[int, int]:
    names = [h.strip().lower() for h in header]
    in_idx = out_idx = None
    for i, name in enumerate(names):
        if name in INPUT_HEADERS and in_idx is None:
            in_idx = i
        elif name in OUTPUT_HEADERS and out_idx is None:
            out_idx = i
    if in_idx is None or out_idx is None:
        raise SchemaError(
            f"{path}: header {header!r} does not name the two required columns "
            f"(expected one of {sorted(INPUT_HEADERS)} and one of {sorted(OUTPUT_HEADERS)})"
        )
    return in_idx, out_idx


def load_pairs(
    path,
    lang: str,
    split: str,
    policy: NormalizationPolicy = DEFAULT_POLICY,
    drop_duplicates: bool = False,
) -> list[SentencePair]:
    """Read a two-column CSV into normalized SentencePairs.

    Null entries stay as empty strings (the classifier maps them to
    Null/Empty); drop_duplicates removes exact (input, output) repeats after
    normalization, keeping first occurrences and their row indices.
    """
    if split not in SPLITS:
        raise InputError(f"unknown split: {split!r} (expected one of {SPLITS})")
    pairs: list[SentencePair] = []
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise SchemaError(f"{path}: empty file, expected a CSV header row")
            in_idx, out_idx = _resolve_columns(header, path)
            for row_idx, row in enumerate(reader):
                if len(row) != len(header):
                    raise ParseError(
                        f"{path}: row {row_idx}: expected {len(header)} fields, got {len(row)}"
                    )
                pairs.append(
                    SentencePair(
                        input=normalize_text(row[in_idx], policy),
                        output=normalize_text(row[out_idx], policy),
                        row=row_idx,
                        split=split,
                        lang=lang,
                    )
                )
    except UnicodeDecodeError as exc:
        raise ParseError(
            f"{path}: invalid UTF-8 byte sequence at offset {exc.start}"
        ) from exc
    if drop_duplicates:
        seen: set[tuple[str, str]] = set()
        unique = []
        for pair in pairs:
            key = (pair.input, pair.output)
            if key not in seen:
                seen.add(key)
                unique.append(pair)
        if len(unique) < len(pairs):
            log.info("dropped %d exact duplicate pairs", len(pairs) - len(unique))
        pairs = unique
    return pairs


def analyze(pairs: list[SentencePair], profile: LanguageProfile) -> DistributionReport:
    """Classify every pair and tally categories; totals include Null/Empty
    so they equal the ingested pair count."""
    if not pairs:
        raise InputError("no pairs to analyze")
    langs = {p.lang for p in pairs}
    splits = {p.split for p in pairs}
    if len(langs) > 1 or len(splits) > 1:
        raise InputError(
            f"pairs must share one lang and split, got langs={sorted(langs)} "
            f"splits={sorted(splits)}"
        )
    counts = {cat: 0 for cat in CATEGORY_ORDER}
    for pair in pairs:
        counts[classify_pair(pair.input, pair.output, profile).category] += 1
    return DistributionReport(
        lang=pairs[0].lang, split=pairs[0].split, total=len(pairs), counts=counts
    )


# Error categories a correction prompt can meaningfully emphasize.
_PROMOTED = (ErrorCategory.PUNCT_WHITESPACE, ErrorCategory.MORPHOLOGY)
_NON_ERRORS = {ErrorCategory.NO_ERROR, ErrorCategory.NULL_EMPTY}
DEPRIORITIZED = (ErrorCategory.WORD_ORDER, ErrorCategory.MISSING_EXTRA_WORD)

CONSTRAINT_CLAUSES = (
    "Make the fewest possible edits.",
    "Do not paraphrase and do not translate.",
    "Preserve numerals and named entities exactly.",
    "End the sentence with its appropriate terminal punctuation mark.",
)

_LANGUAGE_NAMES = {"hi": "Hindi", "ml": "Malayalam"}

_DEPRIORITIZED_NOTES = {
    ErrorCategory.WORD_ORDER: "do not reorder words unless the sentence is ungrammatical as written",
    ErrorCategory.MISSING_EXTRA_WORD: "do not add or delete words unless strictly required",
}

_PROMPT_TEMPLATE = """\
You are a careful grammatical error correction system for {language}.
Rewrite the input sentence so that it is grammatically correct while changing as little as possible.

Give priority to fixing, in this order:
{priorities}

Handle with caution:
{cautions}

Rules:
{rules}

Return only the corrected sentence, nothing else.
"""


def render_prompt(
    lang: str, prioritized: tuple, deprioritized: tuple, constraints: tuple
) -> str:
    """Deterministic template instantiation; a pure function of its inputs."""
    labels = {cat: cat.display_label() for cat in CATEGORY_ORDER}
    if lang == "hi":
        labels[ErrorCategory.SYNTAX_AGREEMENT] = "Syntax/Case/Agreement"
    priorities = "\n".join(
        f"  {i}. {labels[cat]}" for i, cat in enumerate(prioritized, start=1)
    ) or "  (no category emphasis)"
    cautions = "\n".join(
        f"  - {labels[cat]}: {_DEPRIORITIZED_NOTES[cat]}" for cat in deprioritized
    )
    rules = "\n".join(f"  - {clause}" for clause in constraints)
    return _PROMPT_TEMPLATE.format(
        language=_LANGUAGE_NAMES.get(lang, lang),
        priorities=priorities,
        cautions=cautions,
        rules=rules,
    )


def synthesize_prompt(
    report: DistributionReport, profile: LanguageProfile
) -> PromptSpec:
    """Turn a distribution report into a frozen correction prompt.

    Categories are ordered by descending count (ties broken by precedence
    order), with Punctuation/Whitespace and Morphology promoted to the front
    when present; pure reorderings and word additions/deletions are always
    listed as deprioritized.
    """
    if report.total <= 0:
        raise InputError("cannot synthesize a prompt from an empty report")
    by_count = sorted(
        (cat for cat in CATEGORY_ORDER if cat not in _NON_ERRORS and report.counts[cat] > 0),
        key=lambda cat: (-report.counts[cat], CATEGORY_ORDER.index(cat)),
    )
    promoted = [cat for cat in _PROMOTED if report.counts[cat] > 0]
    prioritized = tuple(promoted + [cat for cat in by_count if cat not in promoted])
    rendered = render_prompt(report.lang, prioritized, DEPRIORITIZED, CONSTRAINT_CLAUSES)
    return PromptSpec(
        lang=report.lang,
        prioritized=prioritized,
        deprioritized=DEPRIORITIZED,
        constraints=CONSTRAINT_CLAUSES,
        rendered=rendered,
    )
