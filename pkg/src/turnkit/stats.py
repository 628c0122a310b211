"""Small numeric building blocks: rounding, histograms, least squares, seeded RNG."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, ROUND_HALF_UP

_MASK64 = (1 << 64) - 1
_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407


def round_half_away(numerator: int, denominator: int) -> int:
    """Integer division rounded to nearest, ties away from zero."""
    if denominator <= 0:
        raise ValueError("denominator must be positive")
    if numerator >= 0:
        return (2 * numerator + denominator) // (2 * denominator)
    return -((2 * -numerator + denominator) // (2 * denominator))


def ms_from_seconds(text: str) -> int:
    """Convert a decimal seconds literal to integer milliseconds.

    Works on the textual value so 1.2345 rounds to 1235 regardless of
    float representation; ties round away from zero.
    """
    value = Decimal(text.strip()) * 1000
    return int(value.to_integral_value(rounding=ROUND_HALF_UP))


def interpolate_between(a: int, b: int, k: int, n: int) -> int:
    """k-th of n evenly spaced points strictly between anchors a and b."""
    return a + round_half_away(k * (b - a), n + 1)


def interval_union_ms(intervals) -> int:
    """Total length of the union of half-open [begin, end) intervals."""
    total = 0
    cur_begin = cur_end = None
    for begin, end in sorted(intervals):
        if cur_end is None:
            cur_begin, cur_end = begin, end
        elif begin <= cur_end:
            cur_end = max(cur_end, end)
        else:
            total += cur_end - cur_begin
            cur_begin, cur_end = begin, end
    if cur_end is not None:
        total += cur_end - cur_begin
    return total


def least_squares(xs, ys):
    """Ordinary least squares of y on x: returns (slope, intercept, r_squared)."""
    n = len(xs)
    if n < 2 or n != len(ys):
        raise ValueError("need at least two paired points")
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    syy = sum((y - mean_y) ** 2 for y in ys)
    if sxx == 0:
        raise ValueError("x values are constant")
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    r2 = 1.0 if syy == 0 else (sxy * sxy) / (sxx * syy)
    return slope, intercept, r2


def average_ranks(values) -> list[float]:
    """1-based ascending ranks with ties replaced by their average rank."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        shared = (i + j + 2) / 2
        for k in range(i, j + 1):
            ranks[order[k]] = shared
        i = j + 1
    return ranks


class SeededGenerator:
    """64-bit linear congruential generator with fixed constants.

    The multiplier/increment pair is pinned so that seeded sampling is
    reproducible across platforms and implementations.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state * _LCG_MULT + _LCG_INC) & _MASK64
        return self.state

    def below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def sample_indices(self, population: int, k: int) -> list[int]:
        """Draw up to k distinct indices from range(population), in draw order."""
        pool = list(range(population))
        chosen: list[int] = []
        while pool and len(chosen) < k:
            chosen.append(pool.pop(self.below(len(pool))))
        return chosen


@dataclass(frozen=True)
class HistogramSeries:
    """Fixed-width binning of integer observations.

    Bin index i covers [origin_ms + i*w, origin_ms + (i+1)*w).
    """

    bin_width_ms: int
    origin_ms: int = 0
    counts: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.bin_width_ms <= 0:
            raise ValueError("bin_width_ms must be positive")

    @classmethod
    def from_values(cls, values, bin_width_ms: int, origin_ms: int = 0) -> "HistogramSeries":
        counts: dict[int, int] = {}
        for v in values:
            idx = (v - origin_ms) // bin_width_ms
            counts[idx] = counts.get(idx, 0) + 1
        return cls(bin_width_ms, origin_ms, counts)

    def total(self) -> int:
        return sum(self.counts.values())

    def bin_center(self, index: int) -> int:
        return self.origin_ms + index * self.bin_width_ms + self.bin_width_ms // 2

    def modal_center(self) -> int:
        """Center of the densest bin; ties resolved toward the lowest bin."""
        if not self.counts:
            raise ValueError("empty histogram has no mode")
        best = min(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return self.bin_center(best[0])

    def as_pairs(self) -> list[list[int]]:
        return [[i, c] for i, c in sorted(self.counts.items())]


def histogram_overlap(a: HistogramSeries, b: HistogramSeries) -> float:
    """Overlap coefficient of two normalized histograms: sum of min(p_i, q_i)."""
    if a.bin_width_ms != b.bin_width_ms or a.origin_ms != b.origin_ms:
        raise ValueError("histograms must share bin width and origin")
    total_a, total_b = a.total(), b.total()
    if total_a == 0 or total_b == 0:
        return 0.0
    overlap = 0.0
    for idx in a.counts.keys() & b.counts.keys():
        overlap += min(a.counts[idx] / total_a, b.counts[idx] / total_b)
    return overlap
