import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synth import random_table

from turnkit.errors import SchemaMismatch
from turnkit.table import (
    CorpusTable,
    Turn,
    concat_tables,
    escape_field,
    read_table,
    unescape_field,
    write_table,
)


def _make_table(turns, corpus_id="fuzz"):
    return CorpusTable(corpus_id=corpus_id, turns=tuple(turns))


def test_round_trip_simple(tmp_path):
    table = _make_table(
        [
            Turn(uid="fuzz-1", begin_ms=0, end_ms=10, participant="A", utterance="hi", source="s"),
            Turn(
                uid="fuzz-2",
                begin_ms=5,
                end_ms=20,
                participant="B",
                utterance="ho",
                utterance_raw="ho ",
                source="s",
                extra={"translation": "hey"},
            ),
        ]
    )
    path = tmp_path / "fuzz.tsv"
    write_table(table, path)
    assert read_table(path) == table


def test_round_trip_adversarial_fields(tmp_path):
    table = _make_table(
        [
            Turn(
                uid="fuzz-1",
                begin_ms=0,
                end_ms=10,
                participant="A\tB",
                utterance='line\nbreak "quote" \\slash',
                utterance_raw="\t\t\n\\",
                source="s ource",
                extra={"translation": "a\tb\nc\\d", "x1": "嗯 好"},
            ),
            Turn(
                uid="fuzz-2",
                begin_ms=1,
                end_ms=2,
                participant="\\n",
                utterance="ك legs வந",
                source="s\rwindows",
            ),
        ]
    )
    path = tmp_path / "fuzz.tsv"
    write_table(table, path)
    assert read_table(path) == table


def test_missing_core_column_raises(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("begin\tend\tutterance\tsource\n", encoding="utf-8")
    with pytest.raises(SchemaMismatch):
        read_table(path)


def test_ragged_row_raises(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text(
        "begin\tend\tparticipant\tutterance\tsource\n0\t1\tA\n", encoding="utf-8"
    )
    with pytest.raises(SchemaMismatch):
        read_table(path)


def test_non_integer_times_raise(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text(
        "begin\tend\tparticipant\tutterance\tsource\nzero\t1\tA\thi\ts\n", encoding="utf-8"
    )
    with pytest.raises(SchemaMismatch):
        read_table(path)


def test_third_party_table_without_uid(tmp_path):
    path = tmp_path / "minimal.tsv"
    path.write_text(
        "begin\tend\tparticipant\tutterance\tsource\n"
        "0\t100\tA\thello\trec\n"
        "100\t200\tB\tyes\trec\n",
        encoding="utf-8",
    )
    table = read_table(path)
    assert table.corpus_id == "minimal"
    assert len(table) == 2
    assert table.turns[0].uid == "minimal-000001"
    assert table.turns[0].utterance_raw == "hello"


def test_empty_utterance_reads_as_unk(tmp_path):
    path = tmp_path / "t.tsv"
    path.write_text(
        "begin\tend\tparticipant\tutterance\tsource\n0\t1\tA\t\ts\n", encoding="utf-8"
    )
    table = read_table(path)
    assert table.turns[0].utterance == "[unk]"


def test_column_order_is_stable(tmp_path):
    table = _make_table(
        [
            Turn(
                uid="fuzz-1",
                begin_ms=0,
                end_ms=1,
                participant="A",
                utterance="x",
                source="s",
                extra={"zeta": "1", "alpha": "2"},
            )
        ]
    )
    path = tmp_path / "t.tsv"
    write_table(table, path)
    header = path.read_text(encoding="utf-8").split("\n")[0]
    assert header == "begin\tend\tparticipant\tutterance\tsource\tuid\tutterance_raw\talpha\tzeta"


def test_escape_round_trip_unit():
    for value in ["", "a\tb", "a\nb", "a\\nb", "\\", "\\\\t", "tab\\there\n"]:
        assert unescape_field(escape_field(value)) == value


@settings(max_examples=100, deadline=None)
@given(st.text(max_size=40))
def test_escape_round_trip_property(value):
    assert unescape_field(escape_field(value)) == value


def test_randomized_round_trip_sample(tmp_path):
    rng = random.Random(99)
    for i in range(40):
        table = random_table(rng)
        path = tmp_path / f"t{i}.tsv"
        write_table(table, path)
        assert read_table(path, corpus_id=table.corpus_id) == table


def test_table_sorting_and_uid_uniqueness():
    turns = [
        Turn(uid="b", begin_ms=50, end_ms=60, participant="B", utterance="x", source="s"),
        Turn(uid="a", begin_ms=0, end_ms=10, participant="A", utterance="y", source="s"),
    ]
    table = _make_table(turns, corpus_id="t")
    assert [t.uid for t in table.turns] == ["a", "b"]
    with pytest.raises(ValueError):
        _make_table(
            [
                Turn(uid="a", begin_ms=0, end_ms=1, participant="A", utterance="x", source="s"),
                Turn(uid="a", begin_ms=2, end_ms=3, participant="A", utterance="y", source="s"),
            ]
        )


def test_concat_tables():
    t1 = _make_table(
        [Turn(uid="x-1", begin_ms=0, end_ms=1, participant="A", utterance="u", source="x")],
        corpus_id="x",
    )
    t2 = _make_table(
        [Turn(uid="y-1", begin_ms=0, end_ms=1, participant="A", utterance="u", source="y")],
        corpus_id="y",
    )
    merged = concat_tables([t1, t2], "xy")
    assert len(merged) == 2
    assert merged.corpus_id == "xy"


def test_turn_tie_break_sorting():
    turns = [
        Turn(uid="2", begin_ms=0, end_ms=10, participant="B", utterance="x", source="s"),
        Turn(uid="1", begin_ms=0, end_ms=10, participant="A", utterance="y", source="s"),
        Turn(uid="0", begin_ms=0, end_ms=10, participant="B", utterance="z", source="s"),
    ]
    table = _make_table(turns)
    assert [t.uid for t in table.turns] == ["1", "0", "2"]
