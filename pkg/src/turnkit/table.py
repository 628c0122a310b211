"""The unified turn table and its TSV interchange format."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import SchemaMismatch
from .text import UNK_TOKEN

CORE_COLUMNS = ("begin", "end", "participant", "utterance", "source")
RESERVED_COLUMNS = ("uid", "utterance_raw")


@dataclass(frozen=True)
class Turn:
    """One participant utterance: the atomic row of the unified format."""

    uid: str
    begin_ms: int
    end_ms: int
    participant: str
    utterance: str
    utterance_raw: str = ""
    source: str = ""
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.uid:
            raise ValueError("uid must be non-empty")
        if self.begin_ms < 0:
            raise ValueError(f"begin_ms must be >= 0, got {self.begin_ms}")
        if self.begin_ms > self.end_ms:
            raise ValueError(f"begin_ms {self.begin_ms} > end_ms {self.end_ms}")
        if not self.participant:
            raise ValueError("participant must be non-empty")
        if not self.utterance.strip():
            object.__setattr__(self, "utterance", UNK_TOKEN)
        # Empty extra values cannot survive a TSV round trip; drop them.
        cleaned = {k: v for k, v in self.extra.items() if v != ""}
        if len(cleaned) != len(self.extra):
            object.__setattr__(self, "extra", cleaned)

    @property
    def duration_ms(self) -> int:
        return self.end_ms - self.begin_ms

    def sort_key(self):
        return (self.source, self.begin_ms, self.end_ms, self.participant, self.uid)


@dataclass(frozen=True)
class CorpusTable:
    """Ordered collection of turns plus per-corpus metadata.

    Turns are kept sorted by (source, begin, end, participant, uid);
    extra_columns is derived from the turns and kept alphabetical.
    """

    corpus_id: str
    turns: tuple = ()
    language: str = ""
    extra_columns: tuple = ()

    def __post_init__(self):
        turns = tuple(sorted(self.turns, key=Turn.sort_key))
        object.__setattr__(self, "turns", turns)
        uids = set()
        for turn in turns:
            if turn.uid in uids:
                raise ValueError(f"duplicate uid {turn.uid!r}")
            uids.add(turn.uid)
        names = sorted({key for turn in turns for key in turn.extra})
        object.__setattr__(self, "extra_columns", tuple(names))

    def __len__(self) -> int:
        return len(self.turns)

    def sources(self) -> list[str]:
        seen: dict[str, None] = {}
        for turn in self.turns:
            seen.setdefault(turn.source, None)
        return list(seen)

    def by_source(self) -> dict:
        grouped: dict[str, list[Turn]] = {}
        for turn in self.turns:
            grouped.setdefault(turn.source, []).append(turn)
        return grouped


def concat_tables(tables, corpus_id: str, language: str = "") -> CorpusTable:
    turns: list[Turn] = []
    for table in tables:
        turns.extend(table.turns)
    return CorpusTable(corpus_id=corpus_id, turns=tuple(turns), language=language)


def escape_field(value: str) -> str:
    return value.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def unescape_field(value: str) -> str:
    if "\\" not in value:
        return value
    out: list[str] = []
    i = 0
    while i < len(value):
        ch = value[i]
        if ch == "\\" and i + 1 < len(value):
            nxt = value[i + 1]
            out.append({"\\": "\\", "t": "\t", "n": "\n"}.get(nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def write_table(table: CorpusTable, path) -> None:
    """Write the tab-separated interchange file: UTF-8, LF, header row.

    Field content containing tab/newline/backslash is escaped as \\t, \\n,
    \\\\ so any string round-trips exactly.
    """
    path = Path(path)
    columns = list(CORE_COLUMNS) + list(RESERVED_COLUMNS) + list(table.extra_columns)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\t".join(columns) + "\n")
        for turn in table.turns:
            row = [
                str(turn.begin_ms),
                str(turn.end_ms),
                escape_field(turn.participant),
                escape_field(turn.utterance),
                escape_field(turn.source),
                escape_field(turn.uid),
                escape_field(turn.utterance_raw),
            ]
            row.extend(escape_field(turn.extra.get(name, "")) for name in table.extra_columns)
            handle.write("\t".join(row) + "\n")


def read_table(path, corpus_id: str | None = None, language: str = "") -> CorpusTable:
    """Read a table written by write_table (or any file with the core columns).

    Missing uid/utterance_raw columns are tolerated for third-party files;
    corpus_id defaults to the file stem.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as handle:
        content = handle.read()
    lines = content.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise SchemaMismatch(f"{path}: empty file")

    header = [unescape_field(cell) for cell in lines[0].split("\t")]
    missing = [name for name in CORE_COLUMNS if name not in header]
    if missing:
        raise SchemaMismatch(f"{path}: missing core columns {missing}")
    col = {name: i for i, name in enumerate(header)}
    extra_names = [name for name in header if name not in CORE_COLUMNS + RESERVED_COLUMNS]

    corpus_id = corpus_id if corpus_id is not None else path.stem
    turns: list[Turn] = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split("\t")
        if len(cells) != len(header):
            raise SchemaMismatch(
                f"{path}:{lineno}: expected {len(header)} columns, got {len(cells)}"
            )
        cells = [unescape_field(cell) for cell in cells]
        try:
            begin = int(cells[col["begin"]])
            end = int(cells[col["end"]])
        except ValueError as exc:
            raise SchemaMismatch(f"{path}:{lineno}: non-integer time value") from exc
        utterance = cells[col["utterance"]]
        uid = cells[col["uid"]] if "uid" in col else f"{corpus_id}-{lineno - 1:06d}"
        raw = cells[col["utterance_raw"]] if "utterance_raw" in col else utterance
        extra = {name: cells[col[name]] for name in extra_names if cells[col[name]] != ""}
        try:
            turns.append(
                Turn(
                    uid=uid,
                    begin_ms=begin,
                    end_ms=end,
                    participant=cells[col["participant"]],
                    utterance=utterance,
                    utterance_raw=raw,
                    source=cells[col["source"]],
                    extra=extra,
                )
            )
        except ValueError as exc:
            raise SchemaMismatch(f"{path}:{lineno}: {exc}") from exc
    return CorpusTable(corpus_id=corpus_id, turns=tuple(turns), language=language)
