"""Dependency-free SVG renderings of the assessment report panels."""

from __future__ import annotations

import math

from .qc import AssessmentReport
from .stats import HistogramSeries

WIDTH = 640
HEIGHT = 400
MARGIN_LEFT = 70
MARGIN_RIGHT = 20
MARGIN_TOP = 40
MARGIN_BOTTOM = 55

BAR_FILL = "#4878a8"
POINT_FILL = "#35609f"
SERIES_COLORS = ("#35609f", "#c44e52")
LANE_FILLS = ("#4878a8", "#d8904c")


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _svg(lines: list[str], width: int = WIDTH, height: int = HEIGHT) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, f'<rect width="{width}" height="{height}" fill="#ffffff"/>'] + lines + ["</svg>"]) + "\n"


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    step = (hi - lo) / count
    magnitude = 10 ** math.floor(math.log10(step))
    for factor in (1, 2, 2.5, 5, 10):
        if magnitude * factor >= step:
            step = magnitude * factor
            break
    first = math.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + step * 1e-9:
        ticks.append(round(value, 10))
        value += step
    return ticks or [lo]


def _tick_label(value: float) -> str:
    return f"{value:g}"


class _Frame:
    """Plot area with linear scales and labelled axes."""

    def __init__(self, title, x_label, y_label, x_range, y_range, width=WIDTH, height=HEIGHT):
        self.width, self.height = width, height
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        if self.x1 <= self.x0:
            self.x1 = self.x0 + 1
        if self.y1 <= self.y0:
            self.y1 = self.y0 + 1
        self.left = MARGIN_LEFT
        self.right = width - MARGIN_RIGHT
        self.top = MARGIN_TOP
        self.bottom = height - MARGIN_BOTTOM
        self.lines: list[str] = []
        self.lines.append(
            f'<text x="{width / 2:.0f}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15" fill="#222222">{_esc(title)}</text>'
        )
        self._axes(x_label, y_label)

    def sx(self, value: float) -> float:
        return self.left + (value - self.x0) / (self.x1 - self.x0) * (self.right - self.left)

    def sy(self, value: float) -> float:
        return self.bottom - (value - self.y0) / (self.y1 - self.y0) * (self.bottom - self.top)

    def _axes(self, x_label, y_label):
        add = self.lines.append
        add(
            f'<line x1="{self.left}" y1="{self.bottom}" x2="{self.right}" y2="{self.bottom}" '
            f'stroke="#222222" stroke-width="1"/>'
        )
        add(
            f'<line x1="{self.left}" y1="{self.top}" x2="{self.left}" y2="{self.bottom}" '
            f'stroke="#222222" stroke-width="1"/>'
        )
        for tick in _ticks(self.x0, self.x1):
            x = self.sx(tick)
            add(f'<line x1="{_fmt(x)}" y1="{self.bottom}" x2="{_fmt(x)}" y2="{self.bottom + 5}" stroke="#222222"/>')
            add(
                f'<text x="{_fmt(x)}" y="{self.bottom + 20}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="11" fill="#222222">{_tick_label(tick)}</text>'
            )
        for tick in _ticks(self.y0, self.y1):
            y = self.sy(tick)
            add(f'<line x1="{self.left - 5}" y1="{_fmt(y)}" x2="{self.left}" y2="{_fmt(y)}" stroke="#222222"/>')
            add(
                f'<text x="{self.left - 9}" y="{_fmt(y + 4)}" text-anchor="end" '
                f'font-family="sans-serif" font-size="11" fill="#222222">{_tick_label(tick)}</text>'
            )
        add(
            f'<text x="{(self.left + self.right) / 2:.0f}" y="{self.height - 14}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" fill="#222222">{_esc(x_label)}</text>'
        )
        add(
            f'<text x="18" y="{(self.top + self.bottom) / 2:.0f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" fill="#222222" '
            f'transform="rotate(-90 18 {(self.top + self.bottom) / 2:.0f})">{_esc(y_label)}</text>'
        )

    def no_data(self):
        self.lines.append(
            f'<text x="{(self.left + self.right) / 2:.0f}" y="{(self.top + self.bottom) / 2:.0f}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="14" fill="#888888">no data</text>'
        )


def render_fto_histogram(histogram: HistogramSeries, title: str = "Turn transition offsets") -> str:
    if not histogram.counts:
        frame = _Frame(title, "offset (ms)", "transitions", (-1000, 1000), (0, 1))
        frame.no_data()
        return _svg(frame.lines)
    width = histogram.bin_width_ms
    indices = sorted(histogram.counts)
    x_lo = histogram.origin_ms + indices[0] * width
    x_hi = histogram.origin_ms + (indices[-1] + 1) * width
    y_hi = max(histogram.counts.values())
    frame = _Frame(title, "offset (ms)", "transitions", (x_lo, x_hi), (0, y_hi))
    for index in indices:
        count = histogram.counts[index]
        left = frame.sx(histogram.origin_ms + index * width)
        right = frame.sx(histogram.origin_ms + (index + 1) * width)
        top = frame.sy(count)
        frame.lines.append(
            f'<rect class="bar" x="{_fmt(left)}" y="{_fmt(top)}" '
            f'width="{_fmt(right - left)}" height="{_fmt(frame.bottom - top)}" '
            f'fill="{BAR_FILL}" stroke="#ffffff" stroke-width="0.5"/>'
        )
    return _svg(frame.lines)


def render_fto_duration_scatter(pairs, title: str = "Transition offset by next turn duration") -> str:
    if not pairs:
        frame = _Frame(title, "offset (ms)", "duration (ms)", (-1000, 1000), (0, 1000))
        frame.no_data()
        return _svg(frame.lines)
    xs = [p[0] for p in pairs]
    ys = [p[1] for p in pairs]
    frame = _Frame(title, "offset (ms)", "duration (ms)", (min(xs), max(xs)), (0, max(ys)))
    for x, y in pairs:
        frame.lines.append(
            f'<circle class="pt" cx="{_fmt(frame.sx(x))}" cy="{_fmt(frame.sy(y))}" '
            f'r="2.5" fill="{POINT_FILL}" fill-opacity="0.55"/>'
        )
    return _svg(frame.lines)


def render_rank_frequency(series, title: str = "Token rank vs frequency") -> str:
    if not series:
        frame = _Frame(title, "log10 rank", "log10 count", (0, 1), (0, 1))
        frame.no_data()
        return _svg(frame.lines)
    xs = [math.log10(rank) for rank, _, _ in series]
    ys = [math.log10(count) for _, _, count in series]
    frame = _Frame(title, "log10 rank", "log10 count", (0, max(xs) or 1), (0, max(ys) or 1))
    for x, y in zip(xs, ys):
        frame.lines.append(
            f'<circle class="pt" cx="{_fmt(frame.sx(x))}" cy="{_fmt(frame.sy(y))}" '
            f'r="2.5" fill="{POINT_FILL}" fill-opacity="0.7"/>'
        )
    top = series[:5]
    for offset, (rank, token, count) in enumerate(top):
        frame.lines.append(
            f'<text x="{frame.right - 4}" y="{frame.top + 14 + offset * 14}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11" fill="#444444">'
            f'{rank}. {_esc(token)} ({count})</text>'
        )
    return _svg(frame.lines)


def render_dyadic_samples(samples, title: str = "Sampled dyadic stretches", height: int = 420) -> str:
    lines = [
        f'<text x="{WIDTH / 2:.0f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15" fill="#222222">{_esc(title)}</text>'
    ]
    if not samples:
        lines.append(
            f'<text x="{WIDTH / 2:.0f}" y="{height / 2:.0f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14" fill="#888888">no data</text>'
        )
        return _svg(lines, height=height)
    band_height = (height - 60) / len(samples)
    for row, sample in enumerate(samples):
        band_top = 40 + row * band_height
        lane_height = (band_height - 34) / 2
        span = sample.end_ms - sample.start_ms or 1
        lines.append(
            f'<text x="{MARGIN_LEFT}" y="{band_top + 12:.0f}" font-family="sans-serif" '
            f'font-size="11" fill="#444444">{_esc(sample.source)} '
            f'{sample.start_ms}-{sample.end_ms} ms</text>'
        )
        for lane, participant in enumerate(sample.participants):
            lane_top = band_top + 18 + lane * (lane_height + 4)
            lines.append(
                f'<text x="{MARGIN_LEFT - 6}" y="{lane_top + lane_height / 2 + 4:.0f}" text-anchor="end" '
                f'font-family="sans-serif" font-size="11" fill="#222222">{_esc(participant)}</text>'
            )
            for turn in sample.turns:
                if turn.participant != participant:
                    continue
                begin = max(turn.begin_ms, sample.start_ms)
                end = min(turn.end_ms, sample.end_ms)
                if end < begin:
                    continue
                x = MARGIN_LEFT + (begin - sample.start_ms) / span * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
                w = max((end - begin) / span * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT), 1.0)
                lines.append(
                    f'<rect class="turn" x="{_fmt(x)}" y="{_fmt(lane_top)}" width="{_fmt(w)}" '
                    f'height="{_fmt(lane_height)}" fill="{LANE_FILLS[lane % 2]}" fill-opacity="0.8" rx="2"/>'
                )
                label = turn.utterance if len(turn.utterance) <= 24 else turn.utterance[:23] + "…"
                lines.append(
                    f'<text x="{_fmt(x + 2)}" y="{_fmt(lane_top + lane_height / 2 + 3.5)}" '
                    f'font-family="sans-serif" font-size="9" fill="#111111">{_esc(label)}</text>'
                )
    return _svg(lines, height=height)


def render_report_svg(report: AssessmentReport) -> dict:
    """The four report panels as standalone SVG documents, keyed by panel name."""
    return {
        "transitions": render_fto_histogram(report.transition_histogram),
        "durations": render_fto_duration_scatter(report.duration_vs_fto),
        "rank_frequency": render_rank_frequency(report.rank_frequency),
        "samples": render_dyadic_samples(report.samples),
    }


def render_duration_overlay(
    dist_a,
    dist_b,
    label_a: str,
    label_b: str,
    log_x: bool = False,
    title: str = "Turn durations",
) -> str:
    """Overlay of two duration histograms as stepped outlines."""
    series = [(label_a, dist_a.histogram), (label_b, dist_b.histogram)]
    points = []
    for _, histogram in series:
        for index, count in histogram.counts.items():
            center = histogram.bin_center(index)
            x = math.log10(center) if log_x and center > 0 else center
            points.append((x, count / (histogram.total() or 1)))
    if not points:
        frame = _Frame(title, "duration (ms)", "share", (0, 1), (0, 1))
        frame.no_data()
        return _svg(frame.lines)
    x_label = "log10 duration (ms)" if log_x else "duration (ms)"
    frame = _Frame(
        title,
        x_label,
        "share of turns",
        (min(x for x, _ in points), max(x for x, _ in points)),
        (0, max(y for _, y in points)),
    )
    for (label, histogram), color in zip(series, SERIES_COLORS):
        total = histogram.total() or 1
        coords = []
        for index in sorted(histogram.counts):
            center = histogram.bin_center(index)
            x = math.log10(center) if log_x and center > 0 else center
            coords.append(f"{_fmt(frame.sx(x))},{_fmt(frame.sy(histogram.counts[index] / total))}")
        if coords:
            frame.lines.append(
                f'<polyline class="series" points="{" ".join(coords)}" fill="none" '
                f'stroke="{color}" stroke-width="1.8"/>'
            )
    for offset, ((label, _), color) in enumerate(zip(series, SERIES_COLORS)):
        y = frame.top + 14 + offset * 16
        frame.lines.append(
            f'<rect x="{frame.right - 110}" y="{y - 9}" width="12" height="4" fill="{color}"/>'
        )
        frame.lines.append(
            f'<text x="{frame.right - 94}" y="{y}" font-family="sans-serif" '
            f'font-size="11" fill="#222222">{_esc(label)}</text>'
        )
    return _svg(frame.lines)
