"""Readers for the supported transcript formats, plus format detection."""

from __future__ import annotations

from pathlib import Path

from ..document import ParsedDocument, SourceFormat
from ..errors import UnknownFormat
from .cha import parse_cha
from .eaf import parse_eaf
from .exb import parse_exb
from .textgrid import parse_textgrid

_EXTENSIONS = {
    ".eaf": SourceFormat.EAF,
    ".cha": SourceFormat.CHA,
    ".textgrid": SourceFormat.TEXTGRID,
    ".exb": SourceFormat.EXB,
}

_PARSERS = {
    SourceFormat.EAF: parse_eaf,
    SourceFormat.CHA: parse_cha,
    SourceFormat.TEXTGRID: parse_textgrid,
    SourceFormat.EXB: parse_exb,
}


def detect_format(path, head: bytes | None = None) -> SourceFormat:
    """Identify the transcript format from the first 4096 bytes.

    Content rules decide; the file extension only breaks ties between
    several matching rules.
    """
    path = Path(path)
    if head is None:
        with open(path, "rb") as handle:
            head = handle.read(4096)

    if head.startswith(b"\xff\xfe") or head.startswith(b"\xfe\xff"):
        text = head.decode("utf-16", errors="replace")
    else:
        text = head.decode("utf-8", errors="replace")
        if text.startswith("﻿"):
            text = text[1:]

    matches: list[SourceFormat] = []
    if "<ANNOTATION_DOCUMENT" in text:
        matches.append(SourceFormat.EAF)
    if "<basic-transcription" in text:
        matches.append(SourceFormat.EXB)
    if 'File type = "ooTextFile"' in text or '"TextGrid"' in text:
        matches.append(SourceFormat.TEXTGRID)
    first_line = next((line for line in text.splitlines() if line.strip()), "")
    if first_line.startswith("@"):
        matches.append(SourceFormat.CHA)

    if not matches:
        raise UnknownFormat(f"{path}: no format rule matched")
    if len(matches) == 1:
        return matches[0]
    by_extension = _EXTENSIONS.get(path.suffix.lower())
    if by_extension in matches:
        return by_extension
    return matches[0]


def parse_bytes(data: bytes, fmt: SourceFormat, source_id: str) -> ParsedDocument:
    return _PARSERS[fmt](data, source_id)


def parse_file(path) -> ParsedDocument:
    """Detect the format of `path` and parse it; source_id is the file stem."""
    path = Path(path)
    data = path.read_bytes()
    fmt = detect_format(path, data[:4096])
    return parse_bytes(data, fmt, path.stem)


__all__ = [
    "detect_format",
    "parse_bytes",
    "parse_file",
    "parse_eaf",
    "parse_cha",
    "parse_textgrid",
    "parse_exb",
]
