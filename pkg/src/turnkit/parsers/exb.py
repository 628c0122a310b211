"""EXMARaLDA .exb reader: common timeline plus per-speaker event tiers."""

from __future__ import annotations

import xml.etree.ElementTree as ET

from ..document import ParsedDocument, RawAnnotation, RawTier, SourceFormat
from ..errors import DanglingTliRef, MalformedXml, UnresolvableTime
from ..stats import interpolate_between, ms_from_seconds
from .eaf import media_name


def parse_exb(data: bytes, source_id: str) -> ParsedDocument:
    """Parse an EXMARaLDA basic transcription.

    Timeline points without a time attribute are linearly interpolated
    between their nearest timed neighbors in timeline order.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXml(f"{source_id}: {exc}") from exc
    if root.tag != "basic-transcription":
        raise MalformedXml(f"{source_id}: root element is {root.tag!r}")

    metadata: dict[str, str] = {}
    media_refs: list[str] = []
    for meta in root.iter("meta-information"):
        for child in meta:
            if child.tag == "referenced-file":
                url = child.get("url", "")
                if url:
                    media_refs.append(media_name(url))
            elif child.text and child.text.strip():
                metadata[child.tag] = child.text.strip()

    timeline = root.find("./basic-body/common-timeline")
    if timeline is None:
        raise MalformedXml(f"{source_id}: no common-timeline")
    tli_ids: list[str] = []
    tli_times: list[int | None] = []
    for tli in timeline.findall("tli"):
        tli_id = tli.get("id")
        if tli_id is None:
            raise MalformedXml(f"{source_id}: tli without id")
        tli_ids.append(tli_id)
        raw = tli.get("time")
        tli_times.append(ms_from_seconds(raw) if raw not in (None, "") else None)

    times = _interpolate_timeline(source_id, tli_ids, tli_times)
    time_of = dict(zip(tli_ids, times))

    tiers: list[RawTier] = []
    annotations: list[RawAnnotation] = []
    for tier_el in root.findall("./basic-body/tier"):
        tier_id = tier_el.get("id", "")
        if not tier_id:
            raise MalformedXml(f"{source_id}: tier without id")
        speaker = tier_el.get("speaker", "")
        tiers.append(
            RawTier(tier_id=tier_id, participant=speaker, category=tier_el.get("category", ""))
        )
        tier_idx = len(tiers) - 1
        for event in tier_el.findall("event"):
            start_ref, end_ref = event.get("start"), event.get("end")
            for ref in (start_ref, end_ref):
                if ref not in time_of:
                    raise DanglingTliRef(f"{source_id}: undeclared timeline point {ref!r}")
            annotations.append(
                RawAnnotation(
                    tier=tier_idx,
                    begin_ms=time_of[start_ref],
                    end_ms=time_of[end_ref],
                    text="".join(event.itertext()),
                    participant_hint=speaker,
                )
            )

    return ParsedDocument(
        source_id=source_id,
        format=SourceFormat.EXB,
        tiers=tuple(tiers),
        annotations=tuple(annotations),
        media_refs=tuple(media_refs),
        metadata=metadata,
    )


def _interpolate_timeline(source_id, tli_ids, values):
    anchored = [i for i, v in enumerate(values) if v is not None]
    resolved: list[int] = []
    for i, v in enumerate(values):
        if v is not None:
            resolved.append(v)
            continue
        before = max((j for j in anchored if j < i), default=None)
        after = min((j for j in anchored if j > i), default=None)
        if before is None or after is None:
            raise UnresolvableTime(
                f"{source_id}: timeline point {tli_ids[i]!r} has no timed neighbor on one side"
            )
        a, b = values[before], values[after]
        if b < a:
            raise UnresolvableTime(f"{source_id}: timeline decreases around {tli_ids[i]!r}")
        resolved.append(interpolate_between(a, b, i - before, after - before - 1))
    return resolved
