"""Script-aware Unicode normalization for Hindi/Malayalam GEC text.

Three layers live here: ingestion normalization (NFKC, invisible-character
removal, whitespace collapse, digit and danda mapping), the alphanumeric
projection used to detect punctuation/whitespace-only edits, and the
surface-level post-processor applied to model hypotheses.
"""
from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, replace
from enum import Enum
from importlib import resources

from .errors import InputError

# Fixed invisible-character inventory; the authoritative copy ships as a
# versioned data table (data/invisible_chars.json) and is loaded below.
_INVISIBLE_TABLE = json.loads(
    resources.files("gec_forge").joinpath("data/invisible_chars.json").read_text("utf-8")
)
INVISIBLE_CHARS = frozenset(chr(int(cp[2:], 16)) for cp in _INVISIBLE_TABLE["codepoints"])
JOINER_CHARS = frozenset(chr(int(cp[2:], 16)) for cp in _INVISIBLE_TABLE["joiners"])

DANDA = "।"  # Devanagari sentence terminator (।)
TERMINAL_MARKS = ".।?!"

# Native decimal digits mapped by digit_policy=to_ascii. Devanagari digits
# occupy U+0966-U+096F and Malayalam digits U+0D66-U+0D6F.
_DIGIT_MAP = {chr(0x0966 + i): str(i) for i in range(10)}
_DIGIT_MAP.update({chr(0x0D66 + i): str(i) for i in range(10)})
_DIGIT_TRANSLATION = str.maketrans(_DIGIT_MAP)

_WHITESPACE_RUN = re.compile(r"\s+")
# Trailing run of sentence-final marks (optionally space-separated); the run
# collapses to its final member.
_TERMINAL_RUN = re.compile(r"\s*([.।?!](?:\s*[.।?!])*)\s*$")
_SPACE_BEFORE_PUNCT = re.compile(r"\s+([,;:.।?!])")
_MID_PUNCT_GAP = re.compile(r"([,;:])(?=\S)")


class DandaPolicy(Enum):
    KEEP_DANDA = "keep_danda"
    MAP_DANDA_TO_PERIOD = "map_danda_to_period"
    MAP_PERIOD_TO_DANDA = "map_period_to_danda"


class DigitPolicy(Enum):
    TO_ASCII = "to_ascii"
    KEEP_NATIVE = "keep_native"


@dataclass(frozen=True)
class NormalizationPolicy:
    """Switches for normalize_text; the defaults reproduce the ingestion
    pipeline (NFKC, invisibles stripped, whitespace collapsed, ASCII digits,
    danda kept as-is)."""

    strip_invisibles: bool = True
    collapse_whitespace: bool = True
    unify_terminal_punct: bool = False
    danda_policy: DandaPolicy = DandaPolicy.KEEP_DANDA
    digit_policy: DigitPolicy = DigitPolicy.TO_ASCII
    # ZWJ/ZWNJ are orthographically meaningful in some ligature contexts;
    # keep_joiners retains them while still stripping the other invisibles.
    keep_joiners: bool = False

    def to_dict(self) -> dict:
        return {
            "strip_invisibles": self.strip_invisibles,
            "collapse_whitespace": self.collapse_whitespace,
            "unify_terminal_punct": self.unify_terminal_punct,
            "danda_policy": self.danda_policy.value,
            "digit_policy": self.digit_policy.value,
            "keep_joiners": self.keep_joiners,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NormalizationPolicy":
        policy = cls()
        for key, value in data.items():
            if key == "danda_policy":
                value = DandaPolicy(value)
            elif key == "digit_policy":
                value = DigitPolicy(value)
            elif key not in {
                "strip_invisibles",
                "collapse_whitespace",
                "unify_terminal_punct",
                "keep_joiners",
            }:
                raise InputError(f"unknown normalization key: {key!r}")
            elif not isinstance(value, bool):
                raise InputError(f"normalization key {key!r} expects a boolean")
            policy = replace(policy, **{key: value})
        return policy


DEFAULT_POLICY = NormalizationPolicy()


def _strip_invisibles(s: str, keep_joiners: bool) -> str:
    drop = INVISIBLE_CHARS - JOINER_CHARS if keep_joiners else INVISIBLE_CHARS
    return "".join(ch for ch in s if ch not in drop)


def _unify_terminal_run(s: str) -> str:
    m = _TERMINAL_RUN.search(s)
    if not m:
        return s
    marks = [ch for ch in m.group(1) if ch in TERMINAL_MARKS]
    return s[: m.start()] + marks[-1]


def normalize_text(s: str | bytes, policy: NormalizationPolicy = DEFAULT_POLICY) -> str:
    """Normalize one text unit: NFKC plus the policy-selected steps.

    Bytes input is decoded as strict UTF-8 first, so an invalid byte sequence
    raises UnicodeDecodeError with the offending offset. Invisibles are
    removed before NFKC so joiner removal cannot expose new compositions on a
    second pass; the whole function is idempotent for any policy.
    """
    if isinstance(s, bytes):
        s = s.decode("utf-8")  # UnicodeDecodeError carries the byte offset
    if policy.strip_invisibles:
        s = _strip_invisibles(s, policy.keep_joiners)
    s = unicodedata.normalize("NFKC", s)
    if policy.danda_policy is DandaPolicy.MAP_DANDA_TO_PERIOD:
        s = s.replace(DANDA, ".")
    elif policy.danda_policy is DandaPolicy.MAP_PERIOD_TO_DANDA:
        s = s.replace(".", DANDA)
    if policy.digit_policy is DigitPolicy.TO_ASCII:
        s = s.translate(_DIGIT_TRANSLATION)
    if policy.collapse_whitespace:
        s = _WHITESPACE_RUN.sub(" ", s).strip()
    if policy.unify_terminal_punct:
        s = _unify_terminal_run(s)
    return s


def alnum_projection(s: str, profile=None) -> str:
    """Letters-and-digits view of s: everything that is not a letter, digit,
    or combining mark is dropped.

    Combining marks (Unicode M*) must survive because Indic vowel signs and
    virama are combining characters; dropping them would make inflectional
    edits look like punctuation-only edits. Two strings with equal
    projections differ only in whitespace/punctuation. The profile argument
    is accepted for signature symmetry and currently unused (the rule is
    script-independent).
    """
    return "".join(
        ch for ch in s if ch.isalnum() or unicodedata.category(ch).startswith("M")
    )


def _strip_prompt_echo(s: str, prompt_prefix: str | None) -> str:
    s = s.lstrip()
    if prompt_prefix:
        while s.startswith(prompt_prefix):
            s = s[len(prompt_prefix):].lstrip()
    return s


def _space_after_mid_punct(m: re.Match) -> str:
    # Keep digit groupings like 1,000 intact.
    pos = m.start(1)
    prev_ch = m.string[pos - 1] if pos > 0 else ""
    next_ch = m.string[m.end(1)]
    if prev_ch.isdigit() and next_ch.isdigit():
        return m.group(1)
    return m.group(1) + " "


def postprocess_hypothesis(s: str, prompt_prefix: str | None = None) -> str:
    """Surface-level cleanup of a raw model output line.

    Removes any leading prompt echo, collapses whitespace, fixes punctuation
    spacing (no space before a mark, one space after mid-sentence marks), and
    collapses a trailing run of sentence-final marks to its final member.
    Never touches letters or digits: the alphanumeric projection of the
    result equals the projection of the echo-stripped input.
    """
    s = _strip_prompt_echo(str(s), prompt_prefix)
    s = _WHITESPACE_RUN.sub(" ", s).strip()
    s = _SPACE_BEFORE_PUNCT.sub(r"\1", s)
    s = _MID_PUNCT_GAP.sub(_space_after_mid_punct, s)
    s = _unify_terminal_run(s)
    return s.strip()
