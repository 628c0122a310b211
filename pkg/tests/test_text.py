import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turnkit.text import TagPolicy, UNK_TOKEN, default_segmenter, normalize_utterance_text, tokenize


def test_entity_decode_and_whitespace_collapse():
    assert normalize_utterance_text("so&amp;  then ") == "so& then"


def test_canonical_map_replacement():
    tags = TagPolicy(canonical_map={"((laughs))": "[laugh]"})
    assert normalize_utterance_text("((laughs)) yes", tags) == "[laugh] yes"


def test_non_latin_identity():
    assert normalize_utterance_text("嗯 好") == "嗯 好"


def test_xml_tag_removal():
    assert normalize_utterance_text("a <i>b</i> c") == "a b c"
    assert normalize_utterance_text("&lt;i&gt;x&lt;/i&gt;") == "x"


def test_bracket_unknown_markers():
    assert normalize_utterance_text("((coughs)) ja") == "[coughs] ja"
    assert normalize_utterance_text("&=laughs ja") == "[laughs] ja"
    off = TagPolicy(bracket_unknown=False)
    assert normalize_utterance_text("((coughs)) ja", off) == "((coughs)) ja"


def test_tag_policy_validation():
    with pytest.raises(ValueError):
        TagPolicy(canonical_map={"x": "laugh"})  # not bracketed
    with pytest.raises(ValueError):
        TagPolicy(canonical_map={"x": "[LAUGH]"})  # not lowercase
    with pytest.raises(ValueError):
        TagPolicy(canonical_map={"abc": "[abc]"})  # key inside value: not idempotent
    TagPolicy(canonical_map={"[laugh]": "[laugh]"})  # identity is fine


_plain = st.text(
    alphabet=st.characters(blacklist_characters="<>&()[]\\", blacklist_categories=("Cs", "Cc")),
    max_size=60,
)


@settings(max_examples=150, deadline=None)
@given(raw=_plain)
def test_normalize_idempotent_plain(raw):
    tags = TagPolicy(canonical_map={"hhh": "[breath]", "xxx": "[unk]"})
    once = normalize_utterance_text(raw, tags)
    assert normalize_utterance_text(once, tags) == once


@settings(max_examples=150, deadline=None)
@given(raw=st.text(max_size=60))
def test_normalize_idempotent_arbitrary_text_default_policy(raw):
    once = normalize_utterance_text(raw)
    assert normalize_utterance_text(once) == once


def test_tokenize_examples():
    assert tokenize("Oh, nee hoor.", lowercase=True) == ["oh", "nee", "hoor"]
    assert tokenize("[laugh] ja") == ["[laugh]", "ja"]
    assert tokenize("") == []


def test_tokenize_keeps_internal_apostrophes_and_hyphens():
    assert tokenize("don't re-do 'quoted'") == ["don't", "re-do", "quoted"]


def test_tokenize_tag_with_trailing_punctuation():
    assert tokenize("[laugh], ja") == ["[laugh]", "ja"]


def test_tokenize_custom_segmenter():
    def chars(s):
        return [c for c in s if not c.isspace()]

    assert tokenize("嗯好", segmenter=chars) == ["嗯", "好"]
    assert tokenize("AB", segmenter=chars, lowercase=True) == ["a", "b"]


def test_default_segmenter_drops_pure_punctuation():
    assert default_segmenter("... -- !?") == []


def test_unk_token_is_literal():
    assert UNK_TOKEN == "[unk]"
