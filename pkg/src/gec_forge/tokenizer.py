"""Language-profile-driven tokenization into script words, digit runs, and
punctuation/symbol residue, plus script membership tests.

Tokenization is script-universal across the supported scripts (Devanagari,
Malayalam, Latin) regardless of the active profile, so code-mixed pairs still
align token-by-token; the profile contributes lexica and labels.
"""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import Iterable, Sequence

from .errors import SchemaError

# Script blocks recognized as word material. Danda, abbreviation signs, and
# the archaic Malayalam number/date signs sit inside these blocks but carry
# punctuation/symbol categories, so block membership alone is not enough:
# a script character must also be a letter or combining mark.
SCRIPT_BLOCKS: dict[str, tuple[int, int]] = {
    "deva": (0x0900, 0x097F),
    "mlym": (0x0D00, 0x0D7F),
}
DEVANAGARI_DIGITS = (0x0966, 0x096F)
MALAYALAM_DIGITS = (0x0D66, 0x0D6F)

SYNTAX_LABELS = {"hi": "Syntax/Case/Agreement", "ml": "Syntax/Agreement"}


class TokenKind(Enum):
    SCRIPT_WORD = "script_word"
    DIGIT_RUN = "digit_run"
    PUNCT_SYMBOL = "punct_symbol"


@dataclass(frozen=True)
class Token:
    text: str
    kind: TokenKind
    span: tuple[int, int]  # [start, end) character offsets into the source


@dataclass(frozen=True)
class LanguageProfile:
    """Per-language lexica and script metadata, immutable after load."""

    name: str  # "hi" | "ml"
    script_ranges: tuple[tuple[int, int], ...]
    auxiliaries: frozenset[str]
    postpositions: frozenset[str]
    suffixes: tuple[str, ...]  # deduplicated, longest-first
    digit_range: tuple[int, int]
    syntax_label: str

    def __post_init__(self):
        if self.name not in SYNTAX_LABELS:
            raise SchemaError(f"unknown language: {self.name!r} (expected hi or ml)")
        if self.syntax_label != SYNTAX_LABELS[self.name]:
            raise SchemaError(
                f"syntax label for {self.name} must be {SYNTAX_LABELS[self.name]!r}"
            )
        if self.name == "ml" and self.postpositions:
            raise SchemaError("Malayalam profiles use suffixes, not postpositions")


def _char_class(ch: str) -> tuple[str, str | None]:
    """Classify one character: ('digit'|'script'|'punct', script id or None)."""
    cp = ord(ch)
    if "0" <= ch <= "9" or DEVANAGARI_DIGITS[0] <= cp <= DEVANAGARI_DIGITS[1] \
            or MALAYALAM_DIGITS[0] <= cp <= MALAYALAM_DIGITS[1]:
        return "digit", None
    if "A" <= ch <= "Z" or "a" <= ch <= "z":
        return "script", "latn"
    for script, (lo, hi) in SCRIPT_BLOCKS.items():
        if lo <= cp <= hi:
            cat = unicodedata.category(ch)
            if cat.startswith("L") or cat.startswith("M"):
                return "script", script
            return "punct", None
    return "punct", None


_KIND_BY_CLASS = {
    "digit": TokenKind.DIGIT_RUN,
    "script": TokenKind.SCRIPT_WORD,
    "punct": TokenKind.PUNCT_SYMBOL,
}


def tokenize(s: str, profile: LanguageProfile) -> list[Token]:
    """Split s into maximal same-class runs; whitespace only separates.

    Spans index into s exactly as given, so callers should pass normalized
    text when they need span arithmetic over the normalized source.
    """
    tokens: list[Token] = []
    i, n = 0, len(s)
    while i < n:
        if s[i].isspace():
            i += 1
            continue
        cls = _char_class(s[i])
        j = i + 1
        while j < n and not s[j].isspace() and _char_class(s[j]) == cls:
            j += 1
        tokens.append(Token(s[i:j], _KIND_BY_CLASS[cls[0]], (i, j)))
        i = j
    return tokens


def _text_of(tok: Token | str) -> str:
    return tok.text if isinstance(tok, Token) else tok


def is_punct(tok: Token | str, profile: LanguageProfile | None = None) -> bool:
    """True iff every character is outside the script and digit classes."""
    text = _text_of(tok)
    return all(_char_class(ch)[0] == "punct" for ch in text)


def token_script(tok: Token | str) -> str | None:
    """The single script of a token's letters, or None if mixed/absent."""
    scripts = {scr for cls, scr in map(_char_class, _text_of(tok)) if cls == "script"}
    if len(scripts) == 1:
        return scripts.pop()
    return None


def same_script(a: Token | str, b: Token | str, profile: LanguageProfile | None = None) -> bool:
    """True iff both tokens' letters fall within the same single script."""
    sa = token_script(a)
    return sa is not None and sa == token_script(b)


def _order_suffixes(suffixes: Iterable[str]) -> tuple[str, ...]:
    # Longest-first so the longest suffix cue matches first; ties lexicographic.
    return tuple(sorted(set(suffixes), key=lambda s: (-len(s), s)))


def load_lexicon(path) -> dict[str, list[str]]:
    """Parse a lexicon file: [auxiliaries]/[postpositions]/[suffixes] sections,
    one entry per line, '#' comments."""
    sections: dict[str, list[str]] = {"auxiliaries": [], "postpositions": [], "suffixes": []}
    current: str | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                name = line[1:-1].strip().lower()
                if name not in sections:
                    raise SchemaError(
                        f"{path}: line {lineno}: unknown section [{name}] "
                        f"(expected {sorted(sections)})"
                    )
                current = name
                continue
            if current is None:
                raise SchemaError(f"{path}: line {lineno}: entry before any [section]")
            sections[current].append(line)
    return sections


def _profile_from_sections(name: str, sections: dict[str, list[str]]) -> LanguageProfile:
    block = SCRIPT_BLOCKS["deva"] if name == "hi" else SCRIPT_BLOCKS["mlym"]
    digits = DEVANAGARI_DIGITS if name == "hi" else MALAYALAM_DIGITS
    return LanguageProfile(
        name=name,
        script_ranges=(block,),
        auxiliaries=frozenset(sections["auxiliaries"]),
        postpositions=frozenset(sections["postpositions"]),
        suffixes=_order_suffixes(sections["suffixes"]),
        digit_range=digits,
        syntax_label=SYNTAX_LABELS[name],
    )


def profile_for(lang: str, lexicon_path=None) -> LanguageProfile:
    """Build the profile for hi/ml from the bundled lexicon or a user file."""
    if lang not in SYNTAX_LABELS:
        raise SchemaError(f"unknown language: {lang!r} (expected hi or ml)")
    if lexicon_path is not None:
        sections = load_lexicon(lexicon_path)
    else:
        ref = resources.files("gec_forge").joinpath(f"data/{lang}.lexicon")
        with resources.as_file(ref) as path:
            sections = load_lexicon(path)
    return _profile_from_sections(lang, sections)


def token_texts(tokens: Sequence[Token]) -> list[str]:
    return [t.text for t in tokens]
