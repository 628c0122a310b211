"""CHAT .cha reader: @-headers, *SPK main lines, %-dependent tiers, NAK time bullets."""

from __future__ import annotations

import re

from ..document import ParsedDocument, RawAnnotation, RawTier, SourceFormat
from ..errors import MalformedTimeBullet, MissingHeader

_BULLET_RE = re.compile("\x15(\\d+)_(\\d+)\x15")
_MAIN_RE = re.compile(r"^\*([^:\t]+):\t?(.*)$")
_DEP_RE = re.compile(r"^(%[^:\t]+):\t?(.*)$")
_HEADER_RE = re.compile(r"^@([^:\t]+):\t?(.*)$")


def parse_cha(data: bytes, source_id: str) -> ParsedDocument:
    """Parse a CHAT transcript.

    Continuation lines (leading tab) are joined to the previous line with a
    single space before interpretation. Main lines without a time bullet get
    a zero-length span at the end of the nearest preceding timed line and
    are flagged `untimed`.
    """
    text = data.decode("utf-8-sig", errors="replace").replace("\r\n", "\n").replace("\r", "\n")
    physical = text.split("\n")

    lines: list[str] = []
    for raw in physical:
        if raw.startswith("\t") and lines:
            lines[-1] = lines[-1] + " " + raw[1:]
        else:
            lines.append(raw)

    if not any(line.strip() == "@Begin" for line in lines):
        raise MissingHeader(f"{source_id}: no @Begin header")

    metadata: dict[str, str] = {}
    media_refs: list[str] = []
    tiers: list[RawTier] = []
    tier_index: dict[str, int] = {}
    annotations: list[RawAnnotation] = []
    last_timed_end = 0
    last_main: RawAnnotation | None = None
    orphan_dependents = 0

    def ensure_tier(tier: RawTier) -> int:
        if tier.tier_id not in tier_index:
            tier_index[tier.tier_id] = len(tiers)
            tiers.append(tier)
        return tier_index[tier.tier_id]

    for line in lines:
        if not line.strip():
            continue
        if line.startswith("@"):
            match = _HEADER_RE.match(line)
            if match:
                key, value = match.group(1), match.group(2).strip()
                metadata[key] = value if key not in metadata else metadata[key] + "\n" + value
                if key == "Media" and value:
                    media_refs.append(value.split(",")[0].strip())
            continue
        if line.startswith("*"):
            match = _MAIN_RE.match(line)
            if not match:
                continue
            speaker, content = match.group(1), match.group(2)
            begin, end, utterance = _split_bullet(source_id, content)
            untimed = begin is None
            if untimed:
                begin = end = last_timed_end
            else:
                last_timed_end = end
            idx = ensure_tier(RawTier(tier_id=speaker, participant=speaker, category="main"))
            last_main = RawAnnotation(
                tier=idx,
                begin_ms=begin,
                end_ms=end,
                text=utterance,
                participant_hint=speaker,
                untimed=untimed,
            )
            annotations.append(last_main)
            continue
        if line.startswith("%"):
            match = _DEP_RE.match(line)
            if not match:
                continue
            if last_main is None:
                orphan_dependents += 1
                continue
            code, content = match.group(1), match.group(2)
            content = _BULLET_RE.sub("", content).rstrip()
            idx = ensure_tier(RawTier(tier_id=code, participant="", category="dependent"))
            annotations.append(
                RawAnnotation(
                    tier=idx,
                    begin_ms=last_main.begin_ms,
                    end_ms=last_main.end_ms,
                    text=content,
                    participant_hint=last_main.participant_hint,
                    untimed=last_main.untimed,
                )
            )

    if orphan_dependents:
        metadata["orphan_dependent_lines"] = str(orphan_dependents)

    return ParsedDocument(
        source_id=source_id,
        format=SourceFormat.CHA,
        tiers=tuple(tiers),
        annotations=tuple(annotations),
        media_refs=tuple(media_refs),
        metadata=metadata,
    )


def _split_bullet(source_id: str, content: str):
    """Return (begin_ms, end_ms, text-without-bullets); times are None if untimed.

    Word-aligned lines carry several bullets: the span runs from the first
    begin to the last end and every bullet is removed from the text.
    """
    if "\x15" not in content:
        return None, None, content.rstrip()
    pairs = _BULLET_RE.findall(content)
    leftover = _BULLET_RE.sub("", content)
    if not pairs or "\x15" in leftover:
        raise MalformedTimeBullet(f"{source_id}: unparsable time bullet in {content!r}")
    for raw_begin, raw_end in pairs:
        if int(raw_begin) > int(raw_end):
            raise MalformedTimeBullet(
                f"{source_id}: bullet begin {raw_begin} > end {raw_end}"
            )
    return int(pairs[0][0]), int(pairs[-1][1]), leftover.rstrip()
