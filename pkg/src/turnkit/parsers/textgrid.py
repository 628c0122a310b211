"""Praat .TextGrid reader for both the long (keyed) and short (bare) forms."""

from __future__ import annotations

import re

from ..document import ParsedDocument, RawAnnotation, RawTier, SourceFormat
from ..errors import MalformedTextGrid, NonMonotoneIntervals
from ..stats import ms_from_seconds

_NUMBER_RE = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")
_FLAG_RE = re.compile(r"^<[^>]*>$")
_FLAG_SEARCH = re.compile(r"<[^<>]*>")


def parse_textgrid(data: bytes, source_id: str) -> ParsedDocument:
    """Parse an ooTextFile TextGrid into interval-tier annotations.

    Both syntaxes reduce to the same stream of values: numbers, quoted
    strings (with doubled "" escapes, possibly spanning lines) and <exists>
    flags. Structural labels of the long form are discarded. Interval tiers
    become RawTiers (participant = tier name); point tiers are skipped and
    counted in metadata; empty intervals emit nothing.
    """
    text = _decode(data, source_id)
    values = _token_stream(text, source_id)
    reader = _ValueReader(values, source_id)

    grid_xmin = reader.number("grid xmin")
    grid_xmax = reader.number("grid xmax")
    exists = reader.take("tiers flag")
    if not _FLAG_RE.match(exists):
        raise MalformedTextGrid(f"{source_id}: expected <exists> flag, got {exists!r}")
    n_tiers = reader.integer("tier count")

    tiers: list[RawTier] = []
    annotations: list[RawAnnotation] = []
    skipped_point_tiers = 0

    for _ in range(n_tiers):
        tier_class = reader.string("tier class")
        tier_name = reader.string("tier name")
        reader.number("tier xmin")
        reader.number("tier xmax")
        count = reader.integer("element count")
        if tier_class == "IntervalTier":
            tier_idx = len(tiers)
            tiers.append(RawTier(tier_id=tier_name, participant=tier_name, category=tier_class))
            prev_end = None
            for _ in range(count):
                begin = ms_from_seconds(reader.number_text("interval xmin"))
                end = ms_from_seconds(reader.number_text("interval xmax"))
                mark = reader.string("interval text")
                if prev_end is not None and begin < prev_end - 1:
                    raise NonMonotoneIntervals(
                        f"{source_id}: tier {tier_name!r} interval starts at {begin} ms "
                        f"before previous end {prev_end} ms"
                    )
                prev_end = end
                if mark.strip():
                    annotations.append(
                        RawAnnotation(
                            tier=tier_idx,
                            begin_ms=begin,
                            end_ms=end,
                            text=mark,
                            participant_hint=tier_name,
                        )
                    )
        else:
            # Point tiers carry no duration; consume their values and move on.
            skipped_point_tiers += 1
            for _ in range(count):
                reader.number("point time")
                reader.string("point mark")

    metadata = {"xmin": grid_xmin, "xmax": grid_xmax}
    if skipped_point_tiers:
        metadata["skipped_point_tiers"] = str(skipped_point_tiers)

    return ParsedDocument(
        source_id=source_id,
        format=SourceFormat.TEXTGRID,
        tiers=tuple(tiers),
        annotations=tuple(annotations),
        metadata=metadata,
    )


def _decode(data: bytes, source_id: str) -> str:
    if data.startswith(b"\xff\xfe") or data.startswith(b"\xfe\xff"):
        codec = "utf-16"
    else:
        codec = "utf-8-sig"
    try:
        return data.decode(codec)
    except UnicodeDecodeError as exc:
        raise MalformedTextGrid(f"{source_id}: cannot decode as {codec}: {exc}") from exc


def _token_stream(text: str, source_id: str) -> list[str]:
    """Normalize long/short syntax into one value list.

    Quoted strings keep doubled "" escapes resolved; numbers are returned as
    their source text so millisecond conversion stays exact.
    """
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    if not lines or "ooTextFile" not in lines[0]:
        raise MalformedTextGrid(f"{source_id}: missing ooTextFile header")
    if len(lines) < 2 or "TextGrid" not in lines[1]:
        raise MalformedTextGrid(f"{source_id}: missing TextGrid object class")

    values: list[str] = []
    i = 2
    while i < len(lines):
        line = lines[i].strip()
        i += 1
        if not line:
            continue
        # Long form: strip the `key =` prefix; keep the bare value.
        if "=" in line and not line.startswith('"'):
            line = line.split("=", 1)[1].strip()
            if not line:
                continue
        if line.startswith('"'):
            # Accumulate until the quote count balances (doubled "" inside).
            buf = line
            while buf.count('"') % 2 != 0:
                if i >= len(lines):
                    raise MalformedTextGrid(f"{source_id}: unterminated string")
                buf += "\n" + lines[i]
                i += 1
            closing = _closing_quote(buf)
            values.append('"' + buf[1:closing].replace('""', '"') + '"')
            continue
        flag = _FLAG_SEARCH.search(line)
        if flag:
            values.append(flag.group(0))
            continue
        token = line.split()[0] if line.split() else ""
        if _NUMBER_RE.match(token):
            values.append(token)
        # Anything else is a structural label (item [1]:, intervals: ...) - skip.
    return values


def _closing_quote(buf: str) -> int:
    pos = 1
    while pos < len(buf):
        if buf[pos] == '"':
            if pos + 1 < len(buf) and buf[pos + 1] == '"':
                pos += 2
                continue
            return pos
        pos += 1
    return len(buf) - 1


class _ValueReader:
    def __init__(self, values: list[str], source_id: str):
        self.values = values
        self.pos = 0
        self.source_id = source_id

    def take(self, what: str) -> str:
        if self.pos >= len(self.values):
            raise MalformedTextGrid(f"{self.source_id}: unexpected end of file reading {what}")
        value = self.values[self.pos]
        self.pos += 1
        return value

    def number_text(self, what: str) -> str:
        value = self.take(what)
        if not _NUMBER_RE.match(value):
            raise MalformedTextGrid(f"{self.source_id}: expected number for {what}, got {value!r}")
        return value

    def number(self, what: str) -> str:
        return self.number_text(what)

    def integer(self, what: str) -> int:
        value = self.number_text(what)
        try:
            return int(float(value))
        except ValueError as exc:
            raise MalformedTextGrid(f"{self.source_id}: bad count for {what}: {value!r}") from exc

    def string(self, what: str) -> str:
        value = self.take(what)
        if not (value.startswith('"') and value.endswith('"') and len(value) >= 2):
            raise MalformedTextGrid(f"{self.source_id}: expected string for {what}, got {value!r}")
        return value[1:-1]
