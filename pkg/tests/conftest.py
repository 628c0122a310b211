import struct

import pytest

from fixturedata import FIXTURE_FILES


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    """Materialize the transcript fixtures as real files."""
    root = tmp_path_factory.mktemp("fixtures")
    for name, text in FIXTURE_FILES.items():
        (root / name).write_text(text, encoding="utf-8", newline="")
    return root


def make_wav(path, data_bytes: int, sample_rate: int = 16000, channels: int = 1, bits: int = 16):
    """Write a canonical PCM WAV with a data chunk of exactly data_bytes."""
    byte_rate = sample_rate * channels * bits // 8
    block_align = channels * bits // 8
    with open(path, "wb") as handle:
        handle.write(b"RIFF")
        handle.write(struct.pack("<I", 36 + data_bytes))
        handle.write(b"WAVE")
        handle.write(b"fmt ")
        handle.write(struct.pack("<IHHIIHH", 16, 1, channels, sample_rate, byte_rate, block_align, bits))
        handle.write(b"data")
        handle.write(struct.pack("<I", data_bytes))
        handle.write(b"\x00" * data_bytes)
    return path


@pytest.fixture(scope="session")
def media_dir(tmp_path_factory):
    """A media directory with WAVs matching the fixture sources."""
    root = tmp_path_factory.mktemp("media")
    # 320000 bytes at 16 kHz mono 16-bit -> 10 s
    make_wav(root / "conv01.wav", 320000)
    nested = root / "nested"
    nested.mkdir()
    make_wav(nested / "CONV02.WAV", 64000)  # 2 s, case-insensitive match
    return root
