"""Utterance text normalization, tag policies, and tokenization."""

from __future__ import annotations

import html
import re
import unicodedata
from dataclasses import dataclass, field

UNK_TOKEN = "[unk]"

TAG_RE = re.compile(r"\[[^\[\]\s]+\]")
_XML_TAG_RE = re.compile(r"</?[A-Za-z][^<>]*>")
_WS_RE = re.compile(r"\s+")
_PAREN_MARKER_RE = re.compile(r"\(\(([^()]*)\)\)")
_AMP_MARKER_RE = re.compile(r"&=(\w+)")
_CANONICAL_VALUE_RE = re.compile(r"^\[[a-z0-9_]+\]$")


@dataclass(frozen=True)
class TagPolicy:
    """How non-verbal markers are rewritten.

    canonical_map sends raw markers (e.g. "((laughs))") to bracketed
    lowercase tokens (e.g. "[laugh]"). With bracket_unknown, unmapped
    markers in the ((x)) and &=x conventions become bracketed tokens too.
    """

    canonical_map: dict = field(default_factory=dict)
    bracket_unknown: bool = True

    def __post_init__(self):
        for key, value in self.canonical_map.items():
            if not _CANONICAL_VALUE_RE.match(value):
                raise ValueError(
                    f"canonical value {value!r} must be a bracketed lowercase ASCII token"
                )
            if not key:
                raise ValueError("canonical_map keys must be non-empty")
        # A key occurring inside a value would make normalization non-idempotent.
        for key in self.canonical_map:
            for value in self.canonical_map.values():
                if key in value and key != value:
                    raise ValueError(f"canonical key {key!r} occurs in value {value!r}")


_IDENTITY_POLICY = TagPolicy()


def normalize_utterance_text(raw: str, tags: TagPolicy | None = None) -> str:
    """Clean residual markup and unify non-verbal markers; idempotent.

    Entities are decoded to a fixed point, XML-ish tags removed, whitespace
    runs collapsed, and the tag policy applied. Characters of any script
    pass through untouched.
    """
    tags = tags or _IDENTITY_POLICY
    text = raw
    while True:
        decoded = html.unescape(text)
        if decoded == text:
            break
        text = decoded
    while True:
        stripped = _XML_TAG_RE.sub(" ", text)
        if stripped == text:
            break
        text = stripped
    text = _WS_RE.sub(" ", text).strip()
    if tags.canonical_map:
        pattern = re.compile(
            "|".join(re.escape(k) for k in sorted(tags.canonical_map, key=len, reverse=True))
        )
        text = pattern.sub(lambda m: tags.canonical_map[m.group(0)], text)
    if tags.bracket_unknown:
        text = _PAREN_MARKER_RE.sub(lambda m: _bracketize(m.group(1)), text)
        text = _AMP_MARKER_RE.sub(lambda m: _bracketize(m.group(1)), text)
    return _WS_RE.sub(" ", text).strip()


def _bracketize(inner: str) -> str:
    token = re.sub(r"[^a-z0-9_]+", "_", inner.strip().lower()).strip("_")
    return f"[{token}]" if token else UNK_TOKEN


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def default_segmenter(utterance: str) -> list[str]:
    """Split on Unicode whitespace, then trim leading/trailing punctuation.

    Bracketed tags like [laugh] survive whole; apostrophes and hyphens stay
    word-internal because only the token edges are trimmed.
    """
    tokens: list[str] = []
    for piece in utterance.split():
        while piece and not TAG_RE.fullmatch(piece):
            if _is_punct(piece[-1]):
                piece = piece[:-1]
            elif _is_punct(piece[0]):
                piece = piece[1:]
            else:
                break
        if piece:
            tokens.append(piece)
    return tokens


def tokenize(utterance: str, segmenter=None, lowercase: bool = False) -> list[str]:
    """Segment an utterance into tokens.

    A segmenter is any callable str -> list[str], so language-specific
    word splitters can be swapped in; the default is whitespace-based.
    """
    tokens = (segmenter or default_segmenter)(utterance)
    if lowercase:
        tokens = [t.lower() for t in tokens]
    return tokens
