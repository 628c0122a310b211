"""Quality assessment: transition timing, density, rank-frequency, samples."""

from __future__ import annotations

import json
import math
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass

from .errors import EmptyTable, TooFewTokens, ZeroRecording
from .media import find_media_files, source_stem, wav_duration_ms
from .stats import HistogramSeries, SeededGenerator, interval_union_ms, least_squares
from .table import CorpusTable, Turn
from .text import UNK_TOKEN, tokenize

DYADIC_CONTEXT_MS = 10000


@dataclass(frozen=True)
class TransitionRecord:
    """A speaker change between onset-consecutive turns in one recording.

    fto_ms is the floor transfer offset: next onset minus previous offset;
    positive values are gaps, negative values overlaps.
    """

    prev_uid: str
    next_uid: str
    fto_ms: int
    prev_duration_ms: int
    next_duration_ms: int
    dyadic: bool


@dataclass(frozen=True)
class DyadicSample:
    source: str
    start_ms: int
    end_ms: int
    participants: tuple
    turns: tuple


@dataclass
class AssessmentReport:
    corpus_id: str
    n_turns: int
    total_annotated_ms: int
    recording_ms: int
    recording_estimated: bool
    density: float
    over_density: bool
    turns_per_minute: float
    n_unk: int
    n_untimed: int
    transition_histogram: HistogramSeries
    duration_vs_fto: list
    rank_frequency: list
    zipf_slope: float
    zipf_r2: float
    samples: list
    sample_shortfall: bool
    source_check: dict


def _is_untimed(turn: Turn) -> bool:
    return "untimed" in turn.extra


def compute_transitions(table: CorpusTable) -> list[TransitionRecord]:
    """Emit one record per consecutive pair of turns with a speaker change.

    Pairs are consecutive by onset within one source; pairs involving
    untimed-flagged turns are skipped. The dyadic flag is true when only
    two participants have turns within 10 s around the transition.
    """
    records: list[TransitionRecord] = []
    for _, turns in table.by_source().items():
        begins = [t.begin_ms for t in turns]
        max_duration = max((t.duration_ms for t in turns), default=0)
        for prev, nxt in zip(turns, turns[1:]):
            if prev.participant == nxt.participant:
                continue
            if _is_untimed(prev) or _is_untimed(nxt):
                continue
            lo = prev.begin_ms - DYADIC_CONTEXT_MS
            hi = nxt.end_ms + DYADIC_CONTEXT_MS
            speakers: set[str] = set()
            start = bisect_left(begins, lo - max_duration)
            for turn in turns[start:]:
                if turn.begin_ms > hi:
                    break
                if turn.end_ms >= lo:
                    speakers.add(turn.participant)
            records.append(
                TransitionRecord(
                    prev_uid=prev.uid,
                    next_uid=nxt.uid,
                    fto_ms=nxt.begin_ms - prev.end_ms,
                    prev_duration_ms=prev.duration_ms,
                    next_duration_ms=nxt.duration_ms,
                    dyadic=len(speakers) == 2,
                )
            )
    return records


def annotation_density(table: CorpusTable, recording_ms: int):
    """(annotated fraction of the recording, turns per minute).

    The annotated time is the union of [begin, end) turn intervals,
    computed per source and summed.
    """
    if recording_ms <= 0:
        raise ZeroRecording("recording_ms must be positive")
    annotated = total_annotated_ms(table)
    return annotated / recording_ms, len(table.turns) * 60000 / recording_ms


def total_annotated_ms(table: CorpusTable) -> int:
    return sum(
        interval_union_ms((t.begin_ms, t.end_ms) for t in turns)
        for turns in table.by_source().values()
    )


def rank_frequency(table: CorpusTable, segmenter=None):
    """Token counts ranked by frequency plus the log-log regression slope."""
    counts: Counter = Counter()
    for turn in table.turns:
        for token in tokenize(turn.utterance, segmenter, lowercase=True):
            if token != UNK_TOKEN:
                counts[token] += 1
    if len(counts) < 2:
        raise TooFewTokens(f"need at least 2 distinct tokens, got {len(counts)}")
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    series = [(rank, token, count) for rank, (token, count) in enumerate(ordered, start=1)]
    xs = [math.log10(rank) for rank, _, _ in series]
    ys = [math.log10(count) for _, _, count in series]
    slope, _, _ = least_squares(xs, ys)
    return series, slope


def sample_dyadic_stretches(
    table: CorpusTable,
    n: int = 3,
    window_ms: int = 10000,
    seed: int = 1,
) -> list[DyadicSample]:
    """Draw up to n windows in which exactly two participants speak.

    Candidate windows start at each turn onset; sampling is without
    replacement with the fixed-constant generator, so a given seed always
    returns the same stretches.
    """
    candidates: list[DyadicSample] = []
    seen: set = set()
    for source, turns in table.by_source().items():
        for anchor in turns:
            start = anchor.begin_ms
            if (source, start) in seen:
                continue
            seen.add((source, start))
            end = start + window_ms
            inside = [t for t in turns if t.begin_ms < end and t.end_ms > start]
            participants = sorted({t.participant for t in inside})
            if len(participants) == 2 and len(inside) >= 2:
                candidates.append(
                    DyadicSample(
                        source=source,
                        start_ms=start,
                        end_ms=end,
                        participants=tuple(participants),
                        turns=tuple(inside),
                    )
                )
    rng = SeededGenerator(seed)
    return [candidates[i] for i in rng.sample_indices(len(candidates), n)]


def verify_sources(table: CorpusTable, media_dir) -> dict:
    """Check each distinct source value against files under media_dir.

    Matching is by case-insensitive stem over recognized media extensions;
    PCM WAV matches also report the duration read from the RIFF header.
    """
    found = find_media_files(media_dir)
    check: dict[str, dict] = {}
    for source in table.sources():
        paths = found.get(source_stem(source))
        if not paths:
            check[source] = {"found": False, "duration_ms": None}
            continue
        best = paths[0]
        duration = wav_duration_ms(best) if best.suffix.lower() == ".wav" else None
        check[source] = {"found": True, "duration_ms": duration}
    return check


def build_report(
    table: CorpusTable,
    media_dir=None,
    recording_ms: int | None = None,
    seed: int = 1,
    fto_bin_ms: int = 50,
    sample_count: int = 3,
    sample_window_ms: int = 10000,
) -> AssessmentReport:
    """Assemble the per-corpus assessment report.

    The transition histogram is binned at fto_bin_ms centered on zero over
    dyadic transitions only; duration-vs-offset pairs use the incoming
    turn's duration over all speaker changes.
    """
    if not table.turns:
        raise EmptyTable(f"{table.corpus_id}: no turns")

    source_check = (
        verify_sources(table, media_dir)
        if media_dir is not None
        else {source: {"found": False, "duration_ms": None} for source in table.sources()}
    )

    estimated = False
    if recording_ms is None:
        recording_ms = 0
        for source, turns in table.by_source().items():
            known = source_check.get(source, {}).get("duration_ms")
            if known:
                recording_ms += known
            else:
                estimated = True
                recording_ms += max(t.end_ms for t in turns)

    annotated = total_annotated_ms(table)
    if recording_ms > 0:
        raw_density = annotated / recording_ms
        tpm = len(table.turns) * 60000 / recording_ms
    else:
        raw_density, tpm = 0.0, 0.0

    transitions = compute_transitions(table)
    dyadic_ftos = [r.fto_ms for r in transitions if r.dyadic]
    histogram = HistogramSeries.from_values(dyadic_ftos, fto_bin_ms, origin_ms=-(fto_bin_ms // 2))

    try:
        series, slope = rank_frequency(table)
        xs = [math.log10(r) for r, _, _ in series]
        ys = [math.log10(c) for _, _, c in series]
        _, _, r2 = least_squares(xs, ys)
    except TooFewTokens:
        series, slope, r2 = [], 0.0, 0.0

    samples = sample_dyadic_stretches(table, sample_count, sample_window_ms, seed)

    return AssessmentReport(
        corpus_id=table.corpus_id,
        n_turns=len(table.turns),
        total_annotated_ms=annotated,
        recording_ms=recording_ms,
        recording_estimated=estimated,
        density=min(raw_density, 1.0),
        over_density=raw_density > 1.0,
        turns_per_minute=tpm,
        n_unk=sum(1 for t in table.turns if t.utterance == UNK_TOKEN),
        n_untimed=sum(1 for t in table.turns if _is_untimed(t)),
        transition_histogram=histogram,
        duration_vs_fto=[(r.fto_ms, r.next_duration_ms) for r in transitions],
        rank_frequency=series,
        zipf_slope=slope,
        zipf_r2=r2,
        samples=samples,
        sample_shortfall=len(samples) < sample_count,
        source_check=source_check,
    )


def report_to_json(report: AssessmentReport) -> str:
    """Serialize the report deterministically (same report -> same bytes)."""
    payload = {
        "corpus_id": report.corpus_id,
        "n_turns": report.n_turns,
        "total_annotated_ms": report.total_annotated_ms,
        "recording_ms": report.recording_ms,
        "recording_estimated": report.recording_estimated,
        "density": report.density,
        "over_density": report.over_density,
        "turns_per_minute": report.turns_per_minute,
        "n_unk": report.n_unk,
        "n_untimed": report.n_untimed,
        "transition_histogram": {
            "bin_width_ms": report.transition_histogram.bin_width_ms,
            "origin_ms": report.transition_histogram.origin_ms,
            "counts": report.transition_histogram.as_pairs(),
        },
        "duration_vs_fto": [list(pair) for pair in report.duration_vs_fto],
        "rank_frequency": [[rank, token, count] for rank, token, count in report.rank_frequency],
        "zipf_slope": report.zipf_slope,
        "zipf_r2": report.zipf_r2,
        "samples": [
            {
                "source": s.source,
                "start_ms": s.start_ms,
                "end_ms": s.end_ms,
                "participants": list(s.participants),
                "turns": [
                    {
                        "uid": t.uid,
                        "begin_ms": t.begin_ms,
                        "end_ms": t.end_ms,
                        "participant": t.participant,
                        "utterance": t.utterance,
                    }
                    for t in s.turns
                ],
            }
            for s in report.samples
        ],
        "sample_shortfall": report.sample_shortfall,
        "source_check": {k: report.source_check[k] for k in sorted(report.source_check)},
    }
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
