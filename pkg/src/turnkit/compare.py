"""Compare two corpora on utterance durations and distinctive tokens."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .errors import CorpusTooSmall, EmptyTable
from .stats import HistogramSeries, average_ranks, histogram_overlap
from .table import CorpusTable
from .text import TAG_RE, UNK_TOKEN, tokenize


@dataclass(frozen=True)
class DurationDistribution:
    n: int
    mean_ms: float
    sd_ms: float
    median_ms: float
    modal_ms: int
    histogram: HistogramSeries
    mean_words: float
    mean_chars: float


@dataclass(frozen=True)
class TokenAssociation:
    token: str
    count_a: int
    count_b: int
    score: float


@dataclass(frozen=True)
class ComparisonReport:
    corpus_a: str
    corpus_b: str
    duration_a: DurationDistribution
    duration_b: DurationDistribution
    modal_ratio: float
    histogram_overlap: float
    top_tokens_a: list
    top_tokens_b: list
    sfs_variant: str = "rank"


def duration_distribution(table: CorpusTable, bin_width_ms: int = 100) -> DurationDistribution:
    """Summarize turn durations; the mode is the densest bin's midpoint."""
    if not table.turns:
        raise EmptyTable(f"{table.corpus_id}: no turns")
    durations = [t.duration_ms for t in table.turns]
    n = len(durations)
    mean = sum(durations) / n
    sd = math.sqrt(sum((d - mean) ** 2 for d in durations) / (n - 1)) if n > 1 else 0.0
    ordered = sorted(durations)
    mid = n // 2
    median = float(ordered[mid]) if n % 2 else (ordered[mid - 1] + ordered[mid]) / 2
    histogram = HistogramSeries.from_values(durations, bin_width_ms)
    words = [len(tokenize(t.utterance)) for t in table.turns]
    chars = [len(t.utterance) for t in table.turns]
    return DurationDistribution(
        n=n,
        mean_ms=mean,
        sd_ms=sd,
        median_ms=median,
        modal_ms=histogram.modal_center(),
        histogram=histogram,
        mean_words=sum(words) / n,
        mean_chars=sum(chars) / n,
    )


def _token_counts(table: CorpusTable) -> Counter:
    counts: Counter = Counter()
    for turn in table.turns:
        for token in tokenize(turn.utterance, lowercase=True):
            if token != UNK_TOKEN and not TAG_RE.fullmatch(token):
                counts[token] += 1
    return counts


def scaled_f_score(
    table_a: CorpusTable,
    table_b: CorpusTable,
    min_count: int = 5,
) -> list[TokenAssociation]:
    """Token distinctiveness between two corpora, in [-1, 1].

    For each qualifying token, its precision (share of occurrences in A)
    and its frequency share within A are rank-normalized to (0, 1) across
    the token set (average ranks on ties) and combined by harmonic mean;
    the same is computed with roles swapped and the score is the
    difference. Positive scores mark tokens distinctive of corpus A.
    The rank normalization makes the score antisymmetric under corpus
    swap and exactly zero everywhere for identical corpora.
    """
    counts_a = _token_counts(table_a)
    counts_b = _token_counts(table_b)
    if sum(counts_a.values()) < min_count or sum(counts_b.values()) < min_count:
        raise CorpusTooSmall(f"both corpora need at least {min_count} tokens")

    tokens = sorted(
        t for t in counts_a.keys() | counts_b.keys() if counts_a[t] + counts_b[t] >= min_count
    )
    if not tokens:
        return []
    total_a = sum(counts_a[t] for t in tokens)
    total_b = sum(counts_b[t] for t in tokens)

    def side_scores(primary: Counter, total: int) -> list[float]:
        precision = [primary[t] / (counts_a[t] + counts_b[t]) for t in tokens]
        share = [primary[t] / total if total else 0.0 for t in tokens]
        denominator = len(tokens) + 1
        p_norm = [r / denominator for r in average_ranks(precision)]
        f_norm = [r / denominator for r in average_ranks(share)]
        return [2 * p * f / (p + f) for p, f in zip(p_norm, f_norm)]

    f_a = side_scores(counts_a, total_a)
    f_b = side_scores(counts_b, total_b)
    associations = [
        TokenAssociation(token=t, count_a=counts_a[t], count_b=counts_b[t], score=fa - fb)
        for t, fa, fb in zip(tokens, f_a, f_b)
    ]
    associations.sort(key=lambda assoc: (-assoc.score, assoc.token))
    return associations


def compare_corpora(
    table_a: CorpusTable,
    table_b: CorpusTable,
    bin_width_ms: int = 100,
    min_count: int = 5,
    top_k: int = 20,
) -> ComparisonReport:
    """Bundle duration distributions, modal ratio, histogram overlap and tokens.

    The modal ratio is symmetric: longer mode over shorter mode, so 1.0
    means equal typical durations regardless of argument order.
    """
    dist_a = duration_distribution(table_a, bin_width_ms)
    dist_b = duration_distribution(table_b, bin_width_ms)
    low = min(dist_a.modal_ms, dist_b.modal_ms)
    high = max(dist_a.modal_ms, dist_b.modal_ms)
    associations = scaled_f_score(table_a, table_b, min_count)
    top_a = [a for a in associations if a.score > 0][:top_k]
    top_b = sorted(
        (a for a in associations if a.score < 0),
        key=lambda assoc: (assoc.score, assoc.token),
    )[:top_k]
    return ComparisonReport(
        corpus_a=table_a.corpus_id,
        corpus_b=table_b.corpus_id,
        duration_a=dist_a,
        duration_b=dist_b,
        modal_ratio=high / low if low else math.inf,
        histogram_overlap=histogram_overlap(dist_a.histogram, dist_b.histogram),
        top_tokens_a=top_a,
        top_tokens_b=top_b,
    )
