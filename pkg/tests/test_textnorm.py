import unicodedata

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gec_forge import (
    DandaPolicy,
    DigitPolicy,
    InputError,
    NormalizationPolicy,
    alnum_projection,
    normalize_text,
    postprocess_hypothesis,
)
from gec_forge.textnorm import DEFAULT_POLICY, INVISIBLE_CHARS, JOINER_CHARS

from _oracles import projection_filter

PUNCT_POOL = " \t।॥.,;:!?()[]\"'-_/"

policies = st.builds(
    NormalizationPolicy,
    strip_invisibles=st.booleans(),
    collapse_whitespace=st.booleans(),
    unify_terminal_punct=st.booleans(),
    danda_policy=st.sampled_from(DandaPolicy),
    digit_policy=st.sampled_from(DigitPolicy),
    keep_joiners=st.booleans(),
)


def test_whitespace_collapse():
    assert normalize_text("a  b ") == "a b"
    assert normalize_text("\t a \n b \r") == "a b"


def test_invisible_removal():
    assert normalize_text("क‍ख") == "कख"
    for ch in INVISIBLE_CHARS:
        assert ch not in normalize_text(f"x{ch}y")


def test_keep_joiners_retains_zwj_zwnj():
    policy = NormalizationPolicy(keep_joiners=True)
    out = normalize_text("क‍ख​", policy)
    assert "‍" in out and "​" not in out
    assert JOINER_CHARS == {"‌", "‍"}


def test_native_digit_table_to_ascii():
    # Independent digit tables built straight from the block codepoints.
    devanagari = {chr(0x0966 + i): str(i) for i in range(10)}
    malayalam = {chr(0x0D66 + i): str(i) for i in range(10)}
    for native, ascii_digit in {**devanagari, **malayalam}.items():
        assert normalize_text(native) == ascii_digit
    assert normalize_text("१२३") == "123"
    assert normalize_text("൦൯") == "09"


def test_keep_native_digits():
    policy = NormalizationPolicy(digit_policy=DigitPolicy.KEEP_NATIVE)
    assert normalize_text("१२३", policy) == "१२३"


def test_digit_mapping_touches_nothing_else():
    text = "क ख ग । ? abc"
    assert normalize_text(text) == text


def test_danda_policies():
    keep = NormalizationPolicy(danda_policy=DandaPolicy.KEEP_DANDA)
    to_period = NormalizationPolicy(danda_policy=DandaPolicy.MAP_DANDA_TO_PERIOD)
    to_danda = NormalizationPolicy(danda_policy=DandaPolicy.MAP_PERIOD_TO_DANDA)
    assert normalize_text("क।", keep) == "क।"
    assert normalize_text("क।", to_period) == "क."
    assert normalize_text("क.", to_danda) == "क।"


def test_nfkc_applied():
    assert normalize_text("ﬁle") == "file"  # fi ligature
    assert normalize_text("１２３") == "123"  # fullwidth digits via NFKC


def test_unify_terminal_punct_policy():
    policy = NormalizationPolicy(unify_terminal_punct=True)
    assert normalize_text("वाक्य ।।", policy) == "वाक्य।"
    assert normalize_text("वाक्य . !", policy) == "वाक्य!"
    assert normalize_text("वाक्य", policy) == "वाक्य"


def test_bytes_input_decoding_error_has_offset():
    with pytest.raises(UnicodeDecodeError) as exc:
        normalize_text(b"ok\xffbad")
    assert exc.value.start == 2


def test_policy_dict_round_trip():
    policy = NormalizationPolicy(
        strip_invisibles=False,
        danda_policy=DandaPolicy.MAP_DANDA_TO_PERIOD,
        digit_policy=DigitPolicy.KEEP_NATIVE,
    )
    assert NormalizationPolicy.from_dict(policy.to_dict()) == policy
    with pytest.raises(InputError):
        NormalizationPolicy.from_dict({"bogus": True})


@given(st.text(), policies)
def test_normalize_idempotent(s, policy):
    once = normalize_text(s, policy)
    assert normalize_text(once, policy) == once


@given(st.text())
def test_projection_matches_character_filter(s):
    assert alnum_projection(s) == projection_filter(s)


def test_projection_examples():
    assert alnum_projection("नमस्ते ।") == alnum_projection("नमस्ते.") == "नमस्ते"
    assert alnum_projection("a, b!") == "ab"


@given(st.text(), st.lists(st.sampled_from(PUNCT_POOL), max_size=8), st.data())
def test_projection_stable_under_punct_mutations(s, inserts, data):
    mutated = s
    for ch in inserts:
        pos = data.draw(st.integers(min_value=0, max_value=len(mutated)))
        mutated = mutated[:pos] + ch + mutated[pos:]
    assert alnum_projection(mutated) == alnum_projection(s)


def test_postprocess_examples():
    assert postprocess_hypothesis("वाक्य ।।") == "वाक्य।"
    assert postprocess_hypothesis(
        "PROMPT: fix this\nवाक्य।", prompt_prefix="PROMPT: fix this"
    ) == "वाक्य।"
    assert postprocess_hypothesis("क ,ख ।") == "क, ख।"
    assert postprocess_hypothesis("a , b ?!") == "a, b!"


def test_postprocess_keeps_digit_groupings():
    assert postprocess_hypothesis("कुल 1,000 रुपये ।") == "कुल 1,000 रुपये।"


def test_postprocess_removes_repeated_echo():
    assert postprocess_hypothesis("P: P: वाक्य", prompt_prefix="P:") == "वाक्य"


@given(st.text())
def test_postprocess_preserves_projection(s):
    assert alnum_projection(postprocess_hypothesis(s)) == alnum_projection(s)


@given(st.text())
def test_postprocess_idempotent(s):
    once = postprocess_hypothesis(s)
    assert postprocess_hypothesis(once) == once


@given(st.text())
def test_nfkc_output_has_no_invisibles(s):
    # Guards the step ordering inside normalize_text: stripping before NFKC
    # is only sound if NFKC cannot reintroduce a stripped character.
    out = unicodedata.normalize("NFKC", "".join(c for c in s if c not in INVISIBLE_CHARS))
    assert not (set(out) & INVISIBLE_CHARS)
