"""Token-sequence alignment into edit opcodes, plus the intra-token
comparators (Levenshtein distance, common-prefix suffix-tail test) consumed
by the error classifier.

align() uses longest-matching-block decomposition: recursively anchor on the
longest common contiguous block, preferring the earliest start in `a`, then
the earliest in `b`, on ties. This reproduces classic sequence-matcher
opcodes without any junk heuristic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

from .errors import InputError
from .tokenizer import LanguageProfile, Token, _text_of

OPCODE_TAGS = ("equal", "insert", "delete", "replace")


@dataclass(frozen=True)
class EditOp:
    tag: str
    a_start: int
    a_end: int
    b_start: int
    b_end: int

    def astuple(self) -> tuple:
        return (self.tag, self.a_start, self.a_end, self.b_start, self.b_end)


@dataclass(frozen=True)
class EditScript:
    """Ordered opcodes whose spans tile both sequences in order."""

    ops: tuple[EditOp, ...]

    def validate(self, a: Sequence, b: Sequence) -> None:
        """Raise InputError unless the script is a well-formed edit of a→b."""
        ai = bi = 0
        prev_tag = None
        for op in self.ops:
            if op.tag not in OPCODE_TAGS:
                raise InputError(f"unknown opcode tag {op.tag!r}")
            if (op.a_start, op.b_start) != (ai, bi):
                raise InputError("opcode spans do not tile the sequences")
            if op.tag == prev_tag:
                raise InputError(f"adjacent {op.tag!r} opcodes are not merged")
            a_len, b_len = op.a_end - op.a_start, op.b_end - op.b_start
            if op.tag == "equal":
                if a_len != b_len or a_len == 0:
                    raise InputError("equal opcode with mismatched or empty spans")
                if list(a[op.a_start:op.a_end]) != list(b[op.b_start:op.b_end]):
                    raise InputError("equal opcode over unequal content")
            elif op.tag == "insert":
                if a_len != 0 or b_len == 0:
                    raise InputError("bad insert spans")
            elif op.tag == "delete":
                if a_len == 0 or b_len != 0:
                    raise InputError("bad delete spans")
            elif op.tag == "replace":
                if a_len == 0 or b_len == 0:
                    raise InputError("bad replace spans")
            ai, bi = op.a_end, op.b_end
            prev_tag = op.tag
        if ai != len(a) or bi != len(b):
            raise InputError("opcodes do not cover both sequences")

    def apply(self, a: Sequence, b: Sequence) -> list:
        """Reconstruct b from a plus the b-side material of the script."""
        out: list = []
        for op in self.ops:
            if op.tag == "equal":
                out.extend(a[op.a_start:op.a_end])
            elif op.tag in ("insert", "replace"):
                out.extend(b[op.b_start:op.b_end])
        return out


def _longest_match(a: Sequence, b: Sequence, alo: int, ahi: int, blo: int, bhi: int):
    """Longest block a[i:i+k]==b[j:j+k] within the window; smallest i, then j."""
    b_positions: dict[Hashable, list[int]] = {}
    for j in range(blo, bhi):
        b_positions.setdefault(b[j], []).append(j)
    besti, bestj, bestsize = alo, blo, 0
    run_ending_at: dict[int, int] = {}
    for i in range(alo, ahi):
        new_runs: dict[int, int] = {}
        for j in b_positions.get(a[i], ()):
            k = run_ending_at.get(j - 1, 0) + 1
            new_runs[j] = k
            if k > bestsize:
                besti, bestj, bestsize = i - k + 1, j - k + 1, k
        run_ending_at = new_runs
    return besti, bestj, bestsize


def _matching_blocks(a, b, alo, ahi, blo, bhi, out: list) -> None:
    i, j, k = _longest_match(a, b, alo, ahi, blo, bhi)
    if k:
        _matching_blocks(a, b, alo, i, blo, j, out)
        out.append((i, j, k))
        _matching_blocks(a, b, i + k, ahi, j + k, bhi, out)


def align(a: Sequence, b: Sequence) -> EditScript:
    """Align two sequences of hashable items (token texts, strings, ints)."""
    blocks: list[tuple[int, int, int]] = []
    _matching_blocks(a, b, 0, len(a), 0, len(b), blocks)
    # Merge adjacent blocks so equal opcodes are maximal.
    merged: list[tuple[int, int, int]] = []
    for i, j, k in blocks:
        if merged and merged[-1][0] + merged[-1][2] == i and merged[-1][1] + merged[-1][2] == j:
            pi, pj, pk = merged[-1]
            merged[-1] = (pi, pj, pk + k)
        else:
            merged.append((i, j, k))
    merged.append((len(a), len(b), 0))  # sentinel

    ops: list[EditOp] = []
    ai = bi = 0
    for i, j, k in merged:
        if ai < i and bi < j:
            ops.append(EditOp("replace", ai, i, bi, j))
        elif ai < i:
            ops.append(EditOp("delete", ai, i, bi, j))
        elif bi < j:
            ops.append(EditOp("insert", ai, i, bi, j))
        if k:
            ops.append(EditOp("equal", i, i + k, j, j + k))
        ai, bi = i + k, j + k
    return EditScript(tuple(ops))


def levenshtein(a: Sequence, b: Sequence) -> int:
    """Unit-cost edit distance; works on strings and on token-text lists."""
    n, m = len(a), len(b)
    if n == 0:
        return m
    if m == 0:
        return n
    dp = list(range(m + 1))
    for i in range(1, n + 1):
        prev, dp[0] = dp[0], i
        for j in range(1, m + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            prev, dp[j] = dp[j], min(dp[j] + 1, dp[j - 1] + 1, prev + cost)
    return dp[m]


def suffix_tail_change(a: str, b: str, suffixes: Sequence[str]) -> bool:
    """After the longest common prefix, do the tails differ with either tail
    ending in a listed suffix? Symmetric in a and b; False when a == b.

    Prefix comparison is per codepoint, not per grapheme cluster, because the
    suffix cues are codepoint strings.
    """
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    tail_a, tail_b = a[k:], b[k:]
    if tail_a == tail_b:
        return False
    return any(tail_a.endswith(s) or tail_b.endswith(s) for s in suffixes)


def touches_syntax(segment: Sequence[Token | str], profile: LanguageProfile) -> bool:
    """True iff any token in the segment is an auxiliary or postposition."""
    return any(
        _text_of(t) in profile.auxiliaries or _text_of(t) in profile.postpositions
        for t in segment
    )
