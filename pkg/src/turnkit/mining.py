"""Sequential detection of continuer and repair-initiator candidates.

Works from form and sequence alone: a recurrent short turn flanked by two
near-unique turns of another speaker counts as a continuer context when the
flanks differ, and as a repair context when the second flank is a near-copy
of the first (normalized edit distance below the threshold).
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

from .table import CorpusTable, Turn
from .text import TAG_RE, UNK_TOKEN

LABEL_CONTINUER = "continuer"
LABEL_REPAIR = "repair_initiator"
LABEL_AMBIGUOUS = "ambiguous"

FLANK_MAX_INTERVENING = 5
FLANK_MAX_GAP_MS = 30000


@dataclass(frozen=True)
class MiningConfig:
    similarity_threshold: float = 0.20
    recurrent_min_count: int = 5
    unique_max_count: int = 2
    min_format_length: int = 1
    flank_max_intervening: int = FLANK_MAX_INTERVENING
    flank_max_gap_ms: int = FLANK_MAX_GAP_MS

    def __post_init__(self):
        if not 0 <= self.similarity_threshold <= 1:
            raise ValueError("similarity_threshold must be in [0, 1]")
        if self.recurrent_min_count < 2:
            raise ValueError("recurrent_min_count must be >= 2")
        if self.unique_max_count < 1:
            raise ValueError("unique_max_count must be >= 1")
        if self.unique_max_count >= self.recurrent_min_count:
            raise ValueError("unique_max_count must be below recurrent_min_count")
        if self.min_format_length < 1:
            raise ValueError("min_format_length must be >= 1")


@dataclass(frozen=True)
class TurnFormat:
    normalized_form: str
    count: int
    example_uids: tuple


@dataclass(frozen=True)
class CandidateScore:
    format: TurnFormat
    continuer_contexts: int
    repair_contexts: int
    continuer_rate: float
    repair_rate: float
    label: str


def normalized_levenshtein(a: str, b: str) -> float:
    """Unit-cost edit distance over code points divided by the longer length."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 0.0
    return levenshtein(a, b) / longest


def levenshtein(a: str, b: str) -> int:
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ch_a in enumerate(a, start=1):
        current = [i] + [0] * len(b)
        for j, ch_b in enumerate(b, start=1):
            current[j] = min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ch_a != ch_b),
            )
        previous = current
    return previous[-1]


def format_key(utterance: str) -> str:
    """Canonical turn shape: lowercased, tags stripped, edges de-punctuated."""
    text = TAG_RE.sub(" ", utterance.lower())
    text = " ".join(text.split())
    start, end = 0, len(text)
    while start < end and unicodedata.category(text[start]).startswith("P"):
        start += 1
    while end > start and unicodedata.category(text[end - 1]).startswith("P"):
        end -= 1
    return text[start:end].strip()


def recurrent_formats(table: CorpusTable, cfg: MiningConfig | None = None) -> list[TurnFormat]:
    """Formats whose exact normalized form recurs at least recurrent_min_count times."""
    cfg = cfg or MiningConfig()
    groups: dict[str, list[str]] = {}
    for turn in table.turns:
        form = format_key(turn.utterance)
        if not form or form == UNK_TOKEN or len(form) < cfg.min_format_length:
            continue
        groups.setdefault(form, []).append(turn.uid)
    formats = [
        TurnFormat(normalized_form=form, count=len(uids), example_uids=tuple(uids))
        for form, uids in groups.items()
        if len(uids) >= cfg.recurrent_min_count
    ]
    formats.sort(key=lambda f: (-f.count, f.normalized_form))
    return formats


def classify_contexts(
    table: CorpusTable,
    formats: list[TurnFormat],
    cfg: MiningConfig | None = None,
) -> list[CandidateScore]:
    """Score each recurrent format by its continuer vs repair contexts.

    For every occurrence as turn t2, t1 is the nearest preceding turn by a
    different participant and t3 the nearest following turn by that same
    participant (both within the flank search bounds). When both flanks are
    near-unique and carry content, the occurrence is a repair context if
    the flanks are near-copies (distance < threshold), else a continuer
    context; occurrences without qualifying flanks count toward neither.
    """
    cfg = cfg or MiningConfig()
    wanted = {f.normalized_form for f in formats}

    forms: dict[str, str] = {}
    form_counts: dict[str, int] = {}
    for turn in table.turns:
        form = format_key(turn.utterance)
        forms[turn.uid] = form
        if form:
            form_counts[form] = form_counts.get(form, 0) + 1

    def near_unique(turn: Turn) -> bool:
        form = forms[turn.uid]
        return bool(form) and form != UNK_TOKEN and form_counts[form] <= cfg.unique_max_count

    continuer: dict[str, int] = {form: 0 for form in wanted}
    repair: dict[str, int] = {form: 0 for form in wanted}

    for _, turns in table.by_source().items():
        for i, t2 in enumerate(turns):
            form = forms[t2.uid]
            if form not in wanted:
                continue
            t1 = _flank_before(turns, i, t2, cfg)
            if t1 is None:
                continue
            t3 = _flank_after(turns, i, t2, t1.participant, cfg)
            if t3 is None:
                continue
            if not (near_unique(t1) and near_unique(t3)):
                continue
            distance = normalized_levenshtein(forms[t1.uid], forms[t3.uid])
            if distance < cfg.similarity_threshold:
                repair[form] += 1
            else:
                continuer[form] += 1

    scores = []
    for fmt in formats:
        form = fmt.normalized_form
        c, r = continuer[form], repair[form]
        scores.append(
            CandidateScore(
                format=fmt,
                continuer_contexts=c,
                repair_contexts=r,
                continuer_rate=c / fmt.count,
                repair_rate=r / fmt.count,
                label=_label(c, r),
            )
        )
    return scores


def _flank_before(turns, i, t2, cfg):
    """Nearest preceding turn by another participant, within the search bounds."""
    for step in range(1, cfg.flank_max_intervening + 2):
        j = i - step
        if j < 0:
            return None
        candidate = turns[j]
        if candidate.participant != t2.participant:
            if t2.begin_ms - candidate.end_ms > cfg.flank_max_gap_ms:
                return None
            return candidate
    return None


def _flank_after(turns, i, t2, participant, cfg):
    """Nearest following turn by `participant`, within the search bounds."""
    for step in range(1, cfg.flank_max_intervening + 2):
        j = i + step
        if j >= len(turns):
            return None
        candidate = turns[j]
        if candidate.participant == participant:
            if candidate.begin_ms - t2.end_ms > cfg.flank_max_gap_ms:
                return None
            return candidate
    return None


def _label(continuer_contexts: int, repair_contexts: int) -> str:
    if continuer_contexts > 0 and continuer_contexts >= 2 * repair_contexts:
        return LABEL_CONTINUER
    if repair_contexts > 0 and repair_contexts >= 2 * continuer_contexts:
        return LABEL_REPAIR
    return LABEL_AMBIGUOUS


def rank_candidates(scores: list[CandidateScore], top_n: int):
    """Top-n continuers and repair initiators by context count.

    Ties break alphabetically on the format, so output is stable.
    """
    continuers = sorted(
        (s for s in scores if s.label == LABEL_CONTINUER),
        key=lambda s: (-s.continuer_contexts, s.format.normalized_form),
    )[:top_n]
    repairs = sorted(
        (s for s in scores if s.label == LABEL_REPAIR),
        key=lambda s: (-s.repair_contexts, s.format.normalized_form),
    )[:top_n]
    return continuers, repairs
