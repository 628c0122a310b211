"""ELAN .eaf reader: XML with a global time order and per-tier annotations."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from urllib.parse import unquote, urlparse

from ..document import ParsedDocument, RawAnnotation, RawTier, SourceFormat
from ..errors import DanglingTimeSlotRef, MalformedXml, UnresolvableTime
from ..stats import interpolate_between


def media_name(url: str) -> str:
    """Bare file name of a media reference (drops scheme, path, percent-escapes)."""
    path = urlparse(url).path or url
    return unquote(path.rsplit("/", 1)[-1])


def parse_eaf(data: bytes, source_id: str) -> ParsedDocument:
    """Parse an ELAN annotation document.

    Alignable annotations take their times from TIME_SLOT references; slots
    without a TIME_VALUE are linearly interpolated between the nearest
    anchored slots of the same annotation chain (consecutive annotations on
    one tier that share boundary slots). Reference annotations inherit the
    full span of their parent annotation.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXml(f"{source_id}: {exc}") from exc
    if root.tag != "ANNOTATION_DOCUMENT":
        raise MalformedXml(f"{source_id}: root element is {root.tag!r}")

    metadata: dict[str, str] = {}
    for key, value in root.attrib.items():
        if "{" not in key and value:
            metadata[key] = value
    header = root.find("HEADER")
    media_refs: list[str] = []
    if header is not None:
        for key, value in header.attrib.items():
            if "{" not in key and value:
                metadata[key] = value
        for descriptor in header.findall("MEDIA_DESCRIPTOR"):
            url = descriptor.get("MEDIA_URL", "")
            if url:
                media_refs.append(media_name(url))

    slot_values: dict[str, int | None] = {}
    time_order = root.find("TIME_ORDER")
    if time_order is not None:
        for slot in time_order.findall("TIME_SLOT"):
            slot_id = slot.get("TIME_SLOT_ID")
            if slot_id is None:
                raise MalformedXml(f"{source_id}: TIME_SLOT without id")
            raw = slot.get("TIME_VALUE")
            slot_values[slot_id] = int(raw) if raw not in (None, "") else None

    tiers: list[RawTier] = []
    # (tier index, annotation id, begin slot, end slot, text) in document order
    alignable: list[tuple[int, str, str, str, str]] = []
    # annotation id -> (tier index, parent annotation id, text)
    refs: dict[str, tuple[int, str, str]] = {}
    order: list[tuple[str, str]] = []  # (kind, annotation id) in document order

    for tier_el in root.findall("TIER"):
        tier_id = tier_el.get("TIER_ID", "")
        if not tier_id:
            raise MalformedXml(f"{source_id}: TIER without TIER_ID")
        tiers.append(
            RawTier(
                tier_id=tier_id,
                participant=tier_el.get("PARTICIPANT", ""),
                category=tier_el.get("LINGUISTIC_TYPE_REF", ""),
                parent_tier=tier_el.get("PARENT_REF"),
            )
        )
        tier_idx = len(tiers) - 1
        for wrapper in tier_el.findall("ANNOTATION"):
            align = wrapper.find("ALIGNABLE_ANNOTATION")
            ref = wrapper.find("REF_ANNOTATION")
            if align is not None:
                ann_id = align.get("ANNOTATION_ID", "")
                begin_ref = align.get("TIME_SLOT_REF1")
                end_ref = align.get("TIME_SLOT_REF2")
                if begin_ref is None or end_ref is None:
                    raise MalformedXml(f"{source_id}: alignable annotation without slot refs")
                alignable.append((tier_idx, ann_id, begin_ref, end_ref, _value_text(align)))
                order.append(("align", ann_id))
            elif ref is not None:
                ann_id = ref.get("ANNOTATION_ID", "")
                parent = ref.get("ANNOTATION_REF")
                if parent is None:
                    raise MalformedXml(f"{source_id}: REF_ANNOTATION without ANNOTATION_REF")
                refs[ann_id] = (tier_idx, parent, _value_text(ref))
                order.append(("ref", ann_id))

    for _, _, begin_ref, end_ref, _ in alignable:
        for slot_ref in (begin_ref, end_ref):
            if slot_ref not in slot_values:
                raise DanglingTimeSlotRef(f"{source_id}: undeclared slot {slot_ref!r}")

    resolved = _resolve_chains(source_id, tiers, alignable, slot_values)

    spans: dict[str, tuple[int, int]] = {}
    for (tier_idx, ann_id, _, _, _), span in zip(alignable, resolved):
        spans[ann_id] = span

    def ref_span(ann_id: str, trail: set[str]) -> tuple[int, int]:
        if ann_id in spans:
            return spans[ann_id]
        if ann_id not in refs:
            raise MalformedXml(f"{source_id}: annotation reference {ann_id!r} unresolvable")
        if ann_id in trail:
            raise MalformedXml(f"{source_id}: circular annotation reference at {ann_id!r}")
        trail.add(ann_id)
        span = ref_span(refs[ann_id][1], trail)
        spans[ann_id] = span
        return span

    align_by_id = {ann_id: (tier_idx, text) for tier_idx, ann_id, _, _, text in alignable}
    annotations: list[RawAnnotation] = []
    for kind, ann_id in order:
        if kind == "align":
            tier_idx, text = align_by_id[ann_id]
            begin, end = spans[ann_id]
        else:
            tier_idx, _, text = refs[ann_id]
            begin, end = ref_span(ann_id, set())
        annotations.append(
            RawAnnotation(
                tier=tier_idx,
                begin_ms=begin,
                end_ms=end,
                text=text,
                participant_hint=tiers[tier_idx].participant,
            )
        )

    return ParsedDocument(
        source_id=source_id,
        format=SourceFormat.EAF,
        tiers=tuple(tiers),
        annotations=tuple(annotations),
        media_refs=tuple(media_refs),
        metadata=metadata,
    )


def _value_text(annotation_el) -> str:
    value = annotation_el.find("ANNOTATION_VALUE")
    if value is None:
        return ""
    return "".join(value.itertext())


def _resolve_chains(source_id, tiers, alignable, slot_values):
    """Resolve begin/end times for every alignable annotation.

    Consecutive annotations on one tier that share a boundary slot form a
    chain; the chain's boundary sequence is interpolated where unanchored.
    """
    per_tier: dict[int, list[int]] = {}
    for pos, (tier_idx, *_rest) in enumerate(alignable):
        per_tier.setdefault(tier_idx, []).append(pos)

    resolved: list[tuple[int, int] | None] = [None] * len(alignable)
    for tier_idx, positions in per_tier.items():
        chain: list[int] = []
        for pos in positions:
            if chain and alignable[chain[-1]][3] != alignable[pos][2]:
                _resolve_one_chain(source_id, tiers[tier_idx], alignable, chain, slot_values, resolved)
                chain = []
            chain.append(pos)
        if chain:
            _resolve_one_chain(source_id, tiers[tier_idx], alignable, chain, slot_values, resolved)
    return resolved


def _resolve_one_chain(source_id, tier, alignable, chain, slot_values, resolved):
    boundary_slots = [alignable[chain[0]][2]] + [alignable[pos][3] for pos in chain]
    values: list[int | None] = [slot_values[s] for s in boundary_slots]

    anchored = [i for i, v in enumerate(values) if v is not None]
    if not anchored and any(v is None for v in values):
        raise UnresolvableTime(
            f"{source_id}: tier {tier.tier_id!r} has a chain with no anchored slot"
        )
    for i, v in enumerate(values):
        if v is not None:
            continue
        before = max((j for j in anchored if j < i), default=None)
        after = min((j for j in anchored if j > i), default=None)
        if before is None or after is None:
            raise UnresolvableTime(
                f"{source_id}: slot {boundary_slots[i]!r} on tier {tier.tier_id!r} "
                "has no anchored slot on one side"
            )
        a, b = values[before], values[after]
        if b < a:
            raise UnresolvableTime(
                f"{source_id}: anchors decrease across slot {boundary_slots[i]!r}"
            )
        values[i] = interpolate_between(a, b, i - before, after - before - 1)

    for k, pos in enumerate(chain):
        resolved[pos] = (values[k], values[k + 1])
