"""Deterministic, priority-ordered, single-label error classifier for
(input, output) sentence pairs.

Precedence (earlier stages short-circuit later ones):
  1. Null/Empty: either side blank or a nan/null/none sentinel
  2. No Error: strings bit-identical
  3. Punct/WS: alphanumeric projections equal
  4. Word Order: same non-punct token multiset, different sequence
  5. Alignment typing: insert/delete before replace; within replace,
     syntax > morphology > spelling > grammar
  6. Grammar/Syntax: fallback
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .alignment import align, levenshtein, suffix_tail_change, touches_syntax
from .textnorm import alnum_projection
from .tokenizer import LanguageProfile, is_punct, same_script, token_texts, tokenize

SPELL_THRESHOLD = 2  # max Levenshtein distance still counted as a spelling slip

_NULL_SENTINELS = {"nan", "null", "none"}


class ErrorCategory(Enum):
    NULL_EMPTY = "null_empty"
    NO_ERROR = "no_error"
    PUNCT_WHITESPACE = "punct_whitespace"
    WORD_ORDER = "word_order"
    MISSING_EXTRA_WORD = "missing_extra_word"
    SYNTAX_AGREEMENT = "syntax_agreement"
    MORPHOLOGY = "morphology"
    SPELLING = "spelling"
    GRAMMAR_SYNTAX = "grammar_syntax"

    def display_label(self, profile: LanguageProfile | None = None) -> str:
        if self is ErrorCategory.SYNTAX_AGREEMENT and profile is not None:
            return profile.syntax_label
        return _DISPLAY_LABELS[self]

    @classmethod
    def from_string(cls, s: str) -> "ErrorCategory":
        for cat in cls:
            if s == cat.value or s == _DISPLAY_LABELS[cat]:
                return cat
        for lang_label in ("Syntax/Case/Agreement",):
            if s == lang_label:
                return cls.SYNTAX_AGREEMENT
        raise ValueError(f"unknown error category: {s!r}")


_DISPLAY_LABELS = {
    ErrorCategory.NULL_EMPTY: "Null/Empty Pair",
    ErrorCategory.NO_ERROR: "No Error",
    ErrorCategory.PUNCT_WHITESPACE: "Punctuation/Whitespace",
    ErrorCategory.WORD_ORDER: "Word Order",
    ErrorCategory.MISSING_EXTRA_WORD: "Missing/Extra Word",
    ErrorCategory.SYNTAX_AGREEMENT: "Syntax/Agreement",
    ErrorCategory.MORPHOLOGY: "Morphology (Inflection/Affix)",
    ErrorCategory.SPELLING: "Spelling/Orthography",
    ErrorCategory.GRAMMAR_SYNTAX: "Grammar/Syntax",
}

CATEGORY_ORDER: tuple[ErrorCategory, ...] = tuple(ErrorCategory)


@dataclass(frozen=True)
class Evidence:
    """Which precedence stage fired and why; never alters the category."""

    stage: int
    rule: str
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Classification:
    category: ErrorCategory
    evidence: Evidence


def nullish(x) -> bool:
    """Blank after trim, or one of the nan/null/none sentinels (any case)."""
    s = "" if x is None else str(x).strip()
    return s == "" or s.lower() in _NULL_SENTINELS


def constants() -> dict:
    """Fixed classifier constants, exposed for tests and reports."""
    return {"SPELL_THR": SPELL_THRESHOLD}


def _nonpunct_multiset(tokens, profile) -> Counter:
    return Counter(t.text for t in tokens if not is_punct(t, profile))


def classify_pair(inp, out, profile: LanguageProfile) -> Classification:
    """Assign exactly one category to the pair; total on any input."""
    if nullish(inp) or nullish(out):
        return Classification(ErrorCategory.NULL_EMPTY, Evidence(1, "nullish"))
    inp, out = str(inp), str(out)

    if inp == out:
        return Classification(ErrorCategory.NO_ERROR, Evidence(2, "identical"))

    if alnum_projection(inp) == alnum_projection(out):
        return Classification(
            ErrorCategory.PUNCT_WHITESPACE, Evidence(3, "equal_projection")
        )

    toks_a, toks_b = tokenize(inp, profile), tokenize(out, profile)
    a, b = token_texts(toks_a), token_texts(toks_b)
    if _nonpunct_multiset(toks_a, profile) == _nonpunct_multiset(toks_b, profile) and a != b:
        return Classification(ErrorCategory.WORD_ORDER, Evidence(4, "permuted_multiset"))

    touched_syn = saw_insdel = saw_repl = saw_morph = saw_spell = False
    syntax_hits: list[str] = []
    morph_hits: list[list[str]] = []
    for op in align(a, b).ops:
        seg_a, seg_b = a[op.a_start:op.a_end], b[op.b_start:op.b_end]
        if op.tag in ("insert", "delete"):
            saw_insdel = True
            if touches_syntax(seg_a, profile) or touches_syntax(seg_b, profile):
                touched_syn = True
                syntax_hits.extend(seg_a + seg_b)
        elif op.tag == "replace":
            saw_repl = True
            if touches_syntax(seg_a, profile) or touches_syntax(seg_b, profile):
                touched_syn = True
                syntax_hits.extend(seg_a + seg_b)
            else:
                # Length-mismatched replace segments are zipped pairwise;
                # the overhang carries no morphology/spelling signal.
                for ta, tb in zip(seg_a, seg_b):
                    if same_script(ta, tb, profile) and suffix_tail_change(
                        ta, tb, profile.suffixes
                    ):
                        saw_morph = True
                        morph_hits.append([ta, tb])
                    elif levenshtein(ta, tb) <= SPELL_THRESHOLD:
                        saw_spell = True

    # Insert/delete outranks replace; syntax outranks the rest on both paths.
    if saw_insdel:
        if touched_syn:
            return Classification(
                ErrorCategory.SYNTAX_AGREEMENT,
                Evidence(5, "insert_delete_syntax", {"hits": syntax_hits}),
            )
        return Classification(
            ErrorCategory.MISSING_EXTRA_WORD, Evidence(5, "insert_delete")
        )
    if saw_repl:
        if touched_syn:
            return Classification(
                ErrorCategory.SYNTAX_AGREEMENT,
                Evidence(5, "replace_syntax", {"hits": syntax_hits}),
            )
        if saw_morph:
            return Classification(
                ErrorCategory.MORPHOLOGY,
                Evidence(5, "replace_suffix_tail", {"pairs": morph_hits}),
            )
        if saw_spell:
            return Classification(
                ErrorCategory.SPELLING,
                Evidence(5, "replace_small_distance", {"threshold": SPELL_THRESHOLD}),
            )
        return Classification(ErrorCategory.GRAMMAR_SYNTAX, Evidence(5, "replace_other"))
    return Classification(ErrorCategory.GRAMMAR_SYNTAX, Evidence(6, "fallback"))
