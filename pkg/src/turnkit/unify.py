"""Turn the format-neutral parse result into the unified turn table."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fnmatch import fnmatchcase

from .document import ParsedDocument, RawTier
from .errors import EmptySelection, NoUtteranceTier
from .table import CorpusTable, Turn
from .text import TagPolicy, normalize_utterance_text

ROLE_UTTERANCE = "utterance"
ROLE_TRANSLATION = "translation"
ROLE_IGNORE = "ignore"
_EXTRA_PREFIX = "extra:"

_PREFIX_SPLIT_RE = re.compile(r"[-_@. ]")


@dataclass(frozen=True)
class TierMapConfig:
    """Which tiers feed the table and in which role.

    Patterns are shell globs matched against tier_id and category; the
    first matching role_map entry wins. include_patterns is shorthand for
    role_map entries with role `utterance`.
    """

    include_patterns: tuple = ()
    role_map: dict = field(default_factory=dict)
    participant_from: str = "tier_attribute"

    def __post_init__(self):
        if self.participant_from not in ("tier_attribute", "tier_id_prefix"):
            raise ValueError(f"unknown participant_from {self.participant_from!r}")
        for pattern, role in self.role_map.items():
            if role in (ROLE_UTTERANCE, ROLE_TRANSLATION, ROLE_IGNORE):
                continue
            if role.startswith(_EXTRA_PREFIX) and role[len(_EXTRA_PREFIX):]:
                continue
            raise ValueError(f"unknown role {role!r} for pattern {pattern!r}")
        if not self.effective_roles() or not any(
            role == ROLE_UTTERANCE for _, role in self.effective_roles()
        ):
            raise ValueError("at least one pattern must map to role 'utterance'")

    def effective_roles(self) -> list:
        roles = [(p, ROLE_UTTERANCE) for p in self.include_patterns]
        roles.extend(self.role_map.items())
        return roles

    def role_for(self, tier: RawTier) -> str | None:
        for pattern, role in self.effective_roles():
            if fnmatchcase(tier.tier_id, pattern) or fnmatchcase(tier.category, pattern):
                return role
        return None


def _default_role(tier: RawTier) -> str | None:
    # Without a tier map: top-level tiers are utterances, dependent ones skipped.
    if tier.parent_tier is None and not tier.tier_id.startswith("%"):
        return ROLE_UTTERANCE
    return None


def _participant_for(tier: RawTier, hint: str, mode: str) -> str:
    if mode == "tier_id_prefix":
        head = _PREFIX_SPLIT_RE.split(tier.tier_id, 1)[0]
        return head or tier.tier_id
    return hint or tier.participant or tier.tier_id


def unify(
    doc: ParsedDocument,
    cfg: TierMapConfig | None = None,
    tags: TagPolicy | None = None,
    unmatched: list | None = None,
) -> CorpusTable:
    """Build the flat turn table for one parsed document.

    Utterance-role annotations become turns; translation/extra annotations
    attach to the turn with the identical span whose tier is their parent
    (or, lacking tier parentage, whose participant matches). Content is
    normalized; empty content becomes the [unk] token. Translation/extra
    annotations that align to no turn go to `unmatched` when given.
    """
    tags = tags or TagPolicy()
    roles: dict[int, str] = {}
    matched_any = False
    for idx, tier in enumerate(doc.tiers):
        role = cfg.role_for(tier) if cfg is not None else _default_role(tier)
        if cfg is not None and role is not None:
            matched_any = True
        if role is not None and role != ROLE_IGNORE:
            roles[idx] = role

    if cfg is not None and not matched_any:
        raise EmptySelection(f"{doc.source_id}: tier map matched no tier")
    if not any(role == ROLE_UTTERANCE for role in roles.values()):
        raise NoUtteranceTier(f"{doc.source_id}: no tier selected as utterance")

    source = doc.media_refs[0] if doc.media_refs else doc.source_id
    participant_mode = cfg.participant_from if cfg is not None else "tier_attribute"

    turns: list[Turn] = []
    by_tier_span: dict = {}  # (begin, end, tier_id) -> turn position
    by_span: dict = {}  # (begin, end) -> [(participant, position)]
    ordinal = 0
    for ann in doc.annotations:
        if roles.get(ann.tier) != ROLE_UTTERANCE:
            continue
        tier = doc.tiers[ann.tier]
        ordinal += 1
        participant = _participant_for(tier, ann.participant_hint, participant_mode)
        extra: dict[str, str] = {}
        if ann.untimed:
            extra["untimed"] = "true"
        turn = Turn(
            uid=f"{doc.source_id}-{ordinal:06d}",
            begin_ms=ann.begin_ms,
            end_ms=ann.end_ms,
            participant=participant,
            utterance=normalize_utterance_text(ann.text, tags),
            utterance_raw=ann.text,
            source=source,
            extra=extra,
        )
        by_tier_span.setdefault((ann.begin_ms, ann.end_ms, tier.tier_id), len(turns))
        by_span.setdefault((ann.begin_ms, ann.end_ms), []).append((participant, len(turns)))
        turns.append(turn)

    for ann in doc.annotations:
        role = roles.get(ann.tier)
        if role in (None, ROLE_UTTERANCE):
            continue
        tier = doc.tiers[ann.tier]
        name = ROLE_TRANSLATION if role == ROLE_TRANSLATION else role[len(_EXTRA_PREFIX):]
        value = normalize_utterance_text(ann.text, tags)
        position = _aligned_turn(by_tier_span, by_span, ann, tier)
        if position is None:
            if unmatched is not None:
                unmatched.append((doc.source_id, tier.tier_id, name, ann))
            continue
        turn = turns[position]
        extra = dict(turn.extra)
        extra[name] = f"{extra[name]} | {value}" if name in extra else value
        turns[position] = replace(turn, extra=extra)

    return CorpusTable(corpus_id=doc.source_id, turns=tuple(turns))


def _aligned_turn(by_tier_span, by_span, ann, tier):
    if tier.parent_tier is not None:
        return by_tier_span.get((ann.begin_ms, ann.end_ms, tier.parent_tier))
    # No tier parentage (e.g. CHAT %-tiers): fall back to span + participant.
    for participant, position in by_span.get((ann.begin_ms, ann.end_ms), []):
        if not ann.participant_hint or participant == ann.participant_hint:
            return position
    return None


def transliterate_hook(turn: Turn, func=None) -> Turn:
    """Apply a romanizer to the utterance, preserving the prior text.

    The default transliterator is the identity; no romanizers ship with
    the toolkit.
    """
    func = func or (lambda s: s)
    original = turn.utterance
    extra = dict(turn.extra)
    extra["original_script"] = original
    return replace(turn, utterance=func(original), extra=extra)
