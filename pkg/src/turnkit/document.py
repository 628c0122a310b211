"""Format-neutral parse results: tiers of raw time-anchored annotations."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class SourceFormat(str, Enum):
    EAF = "eaf"
    CHA = "cha"
    TEXTGRID = "textgrid"
    EXB = "exb"


@dataclass(frozen=True)
class RawTier:
    tier_id: str
    participant: str = ""
    category: str = ""
    parent_tier: str | None = None


@dataclass(frozen=True)
class RawAnnotation:
    """One time-anchored annotation as read from a source file.

    Text is kept verbatim; `tier` indexes into the owning document's tier
    list. `untimed` marks annotations whose span had to be fabricated
    (e.g. CHAT lines without a time bullet) so QC can count them.
    """

    tier: int
    begin_ms: int
    end_ms: int
    text: str
    participant_hint: str = ""
    untimed: bool = False

    def __post_init__(self):
        if self.begin_ms < 0:
            raise ValueError(f"begin_ms must be >= 0, got {self.begin_ms}")
        if self.begin_ms > self.end_ms:
            raise ValueError(f"begin_ms {self.begin_ms} > end_ms {self.end_ms}")


@dataclass(frozen=True)
class ParsedDocument:
    source_id: str
    format: SourceFormat
    tiers: tuple[RawTier, ...] = ()
    annotations: tuple[RawAnnotation, ...] = ()
    media_refs: tuple[str, ...] = ()
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.source_id:
            raise ValueError("source_id must be non-empty")
        seen: set[str] = set()
        for tier in self.tiers:
            if tier.tier_id in seen:
                raise ValueError(f"duplicate tier_id {tier.tier_id!r}")
            seen.add(tier.tier_id)
        for tier in self.tiers:
            if tier.parent_tier is not None and tier.parent_tier not in seen:
                raise ValueError(
                    f"tier {tier.tier_id!r} names unknown parent {tier.parent_tier!r}"
                )
        for ann in self.annotations:
            if not 0 <= ann.tier < len(self.tiers):
                raise ValueError(f"annotation tier index {ann.tier} out of range")

    def tier_index(self, tier_id: str) -> int:
        for i, tier in enumerate(self.tiers):
            if tier.tier_id == tier_id:
                return i
        raise KeyError(tier_id)

    def annotations_for(self, tier_id: str) -> list[RawAnnotation]:
        idx = self.tier_index(tier_id)
        return [a for a in self.annotations if a.tier == idx]

    def as_dict(self) -> dict:
        """Plain-data view, stable across runs; used by goldens and `inspect --json`."""
        return {
            "source_id": self.source_id,
            "format": self.format.value,
            "tiers": [
                {
                    "tier_id": t.tier_id,
                    "participant": t.participant,
                    "category": t.category,
                    "parent_tier": t.parent_tier,
                }
                for t in self.tiers
            ],
            "annotations": [
                {
                    "tier": a.tier,
                    "begin_ms": a.begin_ms,
                    "end_ms": a.end_ms,
                    "text": a.text,
                    "participant_hint": a.participant_hint,
                    "untimed": a.untimed,
                }
                for a in self.annotations
            ],
            "media_refs": list(self.media_refs),
            "metadata": dict(self.metadata),
        }
