"""Locating source media files and reading durations from WAV headers."""

from __future__ import annotations

import os
import struct
from pathlib import Path
from urllib.parse import unquote, urlparse

from .errors import MediaDirUnreadable
from .stats import round_half_away

MEDIA_EXTENSIONS = {".wav", ".mp3", ".mp4", ".mov", ".ogg", ".flac"}


def source_stem(source: str) -> str:
    """Case-folded bare stem of a source reference (handles URLs and paths)."""
    path = urlparse(source).path or source
    name = unquote(path.replace("\\", "/").rsplit("/", 1)[-1])
    return Path(name).stem.casefold()


def wav_duration_ms(path) -> int | None:
    """Duration of a PCM WAV from its RIFF header: data bytes / byte rate.

    Returns None for non-PCM or unparsable files (found, duration unknown).
    """
    try:
        with open(path, "rb") as handle:
            riff = handle.read(12)
            if len(riff) < 12 or riff[:4] != b"RIFF" or riff[8:12] != b"WAVE":
                return None
            byte_rate = None
            audio_format = None
            data_size = None
            while True:
                header = handle.read(8)
                if len(header) < 8:
                    break
                chunk_id, size = struct.unpack("<4sI", header)
                if chunk_id == b"fmt ":
                    fmt = handle.read(size)
                    if len(fmt) < 16:
                        return None
                    audio_format, _channels, _rate, byte_rate = struct.unpack("<HHII", fmt[:12])
                    if size % 2:
                        handle.seek(1, os.SEEK_CUR)
                elif chunk_id == b"data":
                    data_size = size
                    handle.seek(size + (size % 2), os.SEEK_CUR)
                else:
                    handle.seek(size + (size % 2), os.SEEK_CUR)
                if byte_rate is not None and data_size is not None:
                    break
    except OSError:
        return None
    if audio_format != 1 or not byte_rate or data_size is None:
        return None
    return round_half_away(data_size * 1000, byte_rate)


def find_media_files(media_dir) -> dict:
    """Map casefolded stem -> media paths found recursively under media_dir.

    Paths per stem are ordered deterministically: WAV files first, then by
    relative path.
    """
    media_dir = Path(media_dir)
    if not media_dir.is_dir():
        raise MediaDirUnreadable(f"{media_dir}: not a readable directory")
    found: dict[str, list[Path]] = {}
    for root, dirs, files in os.walk(media_dir):
        dirs.sort()
        for name in sorted(files):
            path = Path(root) / name
            if path.suffix.lower() in MEDIA_EXTENSIONS:
                found.setdefault(path.stem.casefold(), []).append(path)
    for paths in found.values():
        paths.sort(key=lambda p: (p.suffix.lower() != ".wav", str(p)))
    return found
