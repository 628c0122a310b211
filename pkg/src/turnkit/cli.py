"""Command-line front end: parse, assess, mine, compare, inspect."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from .compare import compare_corpora
from .errors import TurnkitError
from .mining import MiningConfig, classify_contexts, rank_candidates, recurrent_formats
from .parsers import detect_format, parse_bytes
from .qc import build_report, report_to_json
from .errors import EmptyTable
from .svgreport import render_duration_overlay, render_report_svg
from .table import CorpusTable, concat_tables, escape_field, read_table, write_table
from .text import TagPolicy
from .unify import TierMapConfig, unify


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on, with the seed always explicit."""

    seed: int = 1
    tier_map: TierMapConfig | None = None
    tag_policy: TagPolicy = field(default_factory=TagPolicy)
    mining: MiningConfig = field(default_factory=MiningConfig)
    fto_bin_ms: int = 50
    sample_count: int = 3
    sample_window_ms: int = 10000
    compare_bin_ms: int = 100
    compare_min_count: int = 5
    compare_top_k: int = 20

    @classmethod
    def load(cls, path=None) -> "RunConfig":
        cfg = cls()
        if path is not None:
            with open(path, "r", encoding="utf-8") as handle:
                data = json.load(handle)
            cfg = cfg.updated(data)
        return cfg

    def updated(self, data: dict) -> "RunConfig":
        changes: dict = {}
        if "seed" in data:
            changes["seed"] = int(data["seed"])
        if data.get("tier_map"):
            changes["tier_map"] = tier_map_from_dict(data["tier_map"])
        if data.get("tag_policy"):
            policy = data["tag_policy"]
            changes["tag_policy"] = TagPolicy(
                canonical_map=dict(policy.get("canonical_map", {})),
                bracket_unknown=bool(policy.get("bracket_unknown", True)),
            )
        if data.get("mining"):
            base = self.mining
            changes["mining"] = replace(base, **data["mining"])
        qc = data.get("qc", {})
        for key, attr in (
            ("fto_bin_ms", "fto_bin_ms"),
            ("sample_count", "sample_count"),
            ("sample_window_ms", "sample_window_ms"),
        ):
            if key in qc:
                changes[attr] = int(qc[key])
        comp = data.get("compare", {})
        for key, attr in (
            ("bin_ms", "compare_bin_ms"),
            ("min_count", "compare_min_count"),
            ("top_k", "compare_top_k"),
        ):
            if key in comp:
                changes[attr] = int(comp[key])
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "tier_map": None
            if self.tier_map is None
            else {
                "include_patterns": list(self.tier_map.include_patterns),
                "role_map": dict(self.tier_map.role_map),
                "participant_from": self.tier_map.participant_from,
            },
            "tag_policy": {
                "canonical_map": dict(self.tag_policy.canonical_map),
                "bracket_unknown": self.tag_policy.bracket_unknown,
            },
            "mining": {
                "similarity_threshold": self.mining.similarity_threshold,
                "recurrent_min_count": self.mining.recurrent_min_count,
                "unique_max_count": self.mining.unique_max_count,
                "min_format_length": self.mining.min_format_length,
                "flank_max_intervening": self.mining.flank_max_intervening,
                "flank_max_gap_ms": self.mining.flank_max_gap_ms,
            },
            "qc": {
                "fto_bin_ms": self.fto_bin_ms,
                "sample_count": self.sample_count,
                "sample_window_ms": self.sample_window_ms,
            },
            "compare": {
                "bin_ms": self.compare_bin_ms,
                "min_count": self.compare_min_count,
                "top_k": self.compare_top_k,
            },
        }


def tier_map_from_dict(data: dict) -> TierMapConfig:
    return TierMapConfig(
        include_patterns=tuple(data.get("include_patterns", ())),
        role_map=dict(data.get("role_map", {})),
        participant_from=data.get("participant_from", "tier_attribute"),
    )


def _warn(message: str) -> None:
    print(message, file=sys.stderr)


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, ensure_ascii=False, indent=2))


def _write_text(path: Path, content: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(content)


# ---------------------------------------------------------------- parse


def _cmd_parse(args) -> int:
    cfg = RunConfig.load(args.config)
    if args.tier_map is not None:
        with open(args.tier_map, "r", encoding="utf-8") as handle:
            cfg = replace(cfg, tier_map=tier_map_from_dict(json.load(handle)))
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)

    paths = [Path(p) for p in args.inputs]
    stem_counts: dict[str, int] = {}
    source_ids: list[str] = []
    for path in paths:
        n = stem_counts.get(path.stem, 0) + 1
        stem_counts[path.stem] = n
        source_ids.append(path.stem if n == 1 else f"{path.stem}-{n}")

    def load(path: Path, source_id: str):
        data = path.read_bytes()
        fmt = detect_format(path, data[:4096])
        return parse_bytes(data, fmt, source_id)

    results: list = []
    failures: list[tuple[Path, str]] = []
    unmatched: list = []
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        futures = [pool.submit(load, path, sid) for path, sid in zip(paths, source_ids)]
        for path, future in zip(paths, futures):
            try:
                doc = future.result()
            except (TurnkitError, OSError) as exc:
                if not args.keep_going:
                    _warn(f"error: {path}: {exc}")
                    return 1
                failures.append((path, str(exc)))
                _warn(f"warning: skipping {path}: {exc}")
                continue
            try:
                table = unify(doc, cfg.tier_map, cfg.tag_policy, unmatched=unmatched)
            except TurnkitError as exc:
                if not args.keep_going:
                    _warn(f"error: {path}: {exc}")
                    return 1
                failures.append((path, str(exc)))
                _warn(f"warning: skipping {path}: {exc}")
                continue
            untimed = sum(1 for t in table.turns if "untimed" in t.extra)
            _warn(
                f"note: {path}: {len(doc.tiers)} tier(s), {len(doc.annotations)} "
                f"annotation(s) -> {len(table)} turn(s)"
            )
            if untimed:
                _warn(f"note: {path}: {untimed} untimed line(s) flagged")
            results.append(table)

    if not results:
        _warn("error: no input could be parsed")
        return 1

    corpus_id = args.corpus_id or Path(args.out).stem
    merged = concat_tables(results, corpus_id)
    out = Path(args.out)
    if out.parent and not out.parent.exists():
        out.parent.mkdir(parents=True, exist_ok=True)
    write_table(merged, out)
    outputs = [str(out)]

    if unmatched:
        sidecar = out.with_suffix(".unmatched.tsv")
        _write_unmatched(sidecar, unmatched)
        outputs.append(str(sidecar))
        _warn(f"note: {len(unmatched)} unaligned annotation(s) written to {sidecar}")

    _warn(f"wrote {len(merged)} turns from {len(results)} file(s) to {out}")
    if args.json:
        _emit_json(
            {
                "command": "parse",
                "outputs": outputs,
                "config": cfg.as_dict(),
                "summary": {
                    "files_parsed": len(results),
                    "files_failed": len(failures),
                    "n_turns": len(merged),
                },
            }
        )
    return 2 if failures else 0


def _write_unmatched(path: Path, unmatched) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("source_id\ttier_id\trole\tbegin\tend\ttext\n")
        for source_id, tier_id, role, ann in unmatched:
            handle.write(
                "\t".join(
                    [
                        escape_field(source_id),
                        escape_field(tier_id),
                        escape_field(role),
                        str(ann.begin_ms),
                        str(ann.end_ms),
                        escape_field(ann.text),
                    ]
                )
                + "\n"
            )


# ---------------------------------------------------------------- assess


def _cmd_assess(args) -> int:
    cfg = RunConfig.load(args.config)
    overrides: dict = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.fto_bin is not None:
        overrides["fto_bin_ms"] = args.fto_bin
    if args.sample_count is not None:
        overrides["sample_count"] = args.sample_count
    if args.sample_window is not None:
        overrides["sample_window_ms"] = args.sample_window
    if overrides:
        cfg = replace(cfg, **overrides)

    table = read_table(args.table)
    media_dir = args.media_dir
    if media_dir is not None and not Path(media_dir).is_dir():
        _warn(f"warning: media dir {media_dir} not readable; sources marked missing")
        media_dir = None

    report = build_report(
        table,
        media_dir=media_dir,
        seed=cfg.seed,
        fto_bin_ms=cfg.fto_bin_ms,
        sample_count=cfg.sample_count,
        sample_window_ms=cfg.sample_window_ms,
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = []
    report_path = out_dir / "report.json"
    _write_text(report_path, report_to_json(report))
    outputs.append(str(report_path))
    panel_names = {
        "transitions": "panel_a_transitions.svg",
        "durations": "panel_b_durations.svg",
        "rank_frequency": "panel_c_rank_frequency.svg",
        "samples": "panel_d_samples.svg",
    }
    for key, svg in render_report_svg(report).items():
        path = out_dir / panel_names[key]
        _write_text(path, svg)
        outputs.append(str(path))
    _warn(f"assessment for {table.corpus_id}: {report.n_turns} turns, density {report.density:.3f}")
    if args.json:
        _emit_json(
            {
                "command": "assess",
                "outputs": outputs,
                "config": cfg.as_dict(),
                "summary": {"corpus_id": table.corpus_id, "n_turns": report.n_turns},
            }
        )
    return 0


# ---------------------------------------------------------------- mine


def _cmd_mine(args) -> int:
    cfg = RunConfig.load(args.config)
    mining = cfg.mining
    if args.threshold is not None:
        mining = replace(mining, similarity_threshold=args.threshold)
    if args.min_count is not None:
        mining = replace(mining, recurrent_min_count=args.min_count)
    if args.unique_max is not None:
        mining = replace(mining, unique_max_count=args.unique_max)
    cfg = replace(cfg, mining=mining)

    table = read_table(args.table)
    if not table.turns:
        raise EmptyTable(f"{args.table}: no turns")
    formats = recurrent_formats(table, mining)
    scores = classify_contexts(table, formats, mining)
    continuers, repairs = rank_candidates(scores, args.top)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = {
        "config": cfg.as_dict()["mining"],
        "candidates": [_score_dict(s) for s in scores],
        "top_continuers": [s.format.normalized_form for s in continuers],
        "top_repair_initiators": [s.format.normalized_form for s in repairs],
    }
    json_path = out_dir / "candidates.json"
    _write_text(json_path, json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
    tsv_path = out_dir / "candidates.tsv"
    with open(tsv_path, "w", encoding="utf-8", newline="") as handle:
        handle.write("format\tcount\tcontinuer_contexts\trepair_contexts\tlabel\n")
        for s in scores:
            handle.write(
                f"{escape_field(s.format.normalized_form)}\t{s.format.count}\t"
                f"{s.continuer_contexts}\t{s.repair_contexts}\t{s.label}\n"
            )
    _warn(
        f"mined {len(scores)} recurrent format(s): "
        f"{len(continuers)} continuer(s), {len(repairs)} repair initiator(s)"
    )
    if args.json:
        _emit_json(
            {
                "command": "mine",
                "outputs": [str(json_path), str(tsv_path)],
                "config": cfg.as_dict(),
                "summary": {
                    "n_formats": len(scores),
                    "top_continuers": payload["top_continuers"][:3],
                    "top_repair_initiators": payload["top_repair_initiators"][:3],
                },
            }
        )
    return 0


def _score_dict(score) -> dict:
    return {
        "format": score.format.normalized_form,
        "count": score.format.count,
        "continuer_contexts": score.continuer_contexts,
        "repair_contexts": score.repair_contexts,
        "continuer_rate": score.continuer_rate,
        "repair_rate": score.repair_rate,
        "label": score.label,
        "example_uids": list(score.format.example_uids[:10]),
    }


# ---------------------------------------------------------------- compare


def _cmd_compare(args) -> int:
    cfg = RunConfig.load(args.config)
    overrides: dict = {}
    if args.bin is not None:
        overrides["compare_bin_ms"] = args.bin
    if args.min_count is not None:
        overrides["compare_min_count"] = args.min_count
    if args.top_k is not None:
        overrides["compare_top_k"] = args.top_k
    if overrides:
        cfg = replace(cfg, **overrides)

    table_a = read_table(args.table_a)
    table_b = read_table(args.table_b)
    report = compare_corpora(
        table_a,
        table_b,
        bin_width_ms=cfg.compare_bin_ms,
        min_count=cfg.compare_min_count,
        top_k=cfg.compare_top_k,
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    payload = {
        "corpus_a": report.corpus_a,
        "corpus_b": report.corpus_b,
        "duration_a": _distribution_dict(report.duration_a),
        "duration_b": _distribution_dict(report.duration_b),
        "modal_ratio": report.modal_ratio,
        "histogram_overlap": report.histogram_overlap,
        "top_tokens_a": [_association_dict(a) for a in report.top_tokens_a],
        "top_tokens_b": [_association_dict(a) for a in report.top_tokens_b],
        "sfs_variant": report.sfs_variant,
        "config": cfg.as_dict()["compare"],
    }
    json_path = out_dir / "comparison.json"
    _write_text(json_path, json.dumps(payload, ensure_ascii=False, indent=2) + "\n")

    from .compare import scaled_f_score

    tsv_path = out_dir / "token_associations.tsv"
    with open(tsv_path, "w", encoding="utf-8", newline="") as handle:
        handle.write("token\tcount_a\tcount_b\tscore\n")
        for assoc in scaled_f_score(table_a, table_b, cfg.compare_min_count):
            handle.write(
                f"{escape_field(assoc.token)}\t{assoc.count_a}\t{assoc.count_b}\t{assoc.score!r}\n"
            )

    svg_path = out_dir / "durations.svg"
    _write_text(
        svg_path,
        render_duration_overlay(
            report.duration_a,
            report.duration_b,
            report.corpus_a,
            report.corpus_b,
            log_x=args.log_x,
        ),
    )
    _warn(
        f"compared {report.corpus_a} vs {report.corpus_b}: "
        f"modal ratio {report.modal_ratio:.2f}, overlap {report.histogram_overlap:.3f}"
    )
    if args.json:
        _emit_json(
            {
                "command": "compare",
                "outputs": [str(json_path), str(tsv_path), str(svg_path)],
                "config": cfg.as_dict(),
                "summary": {
                    "modal_ratio": report.modal_ratio,
                    "histogram_overlap": report.histogram_overlap,
                },
            }
        )
    return 0


def _distribution_dict(dist) -> dict:
    return {
        "n": dist.n,
        "mean_ms": dist.mean_ms,
        "sd_ms": dist.sd_ms,
        "median_ms": dist.median_ms,
        "modal_ms": dist.modal_ms,
        "mean_words": dist.mean_words,
        "mean_chars": dist.mean_chars,
        "histogram": {
            "bin_width_ms": dist.histogram.bin_width_ms,
            "origin_ms": dist.histogram.origin_ms,
            "counts": dist.histogram.as_pairs(),
        },
    }


def _association_dict(assoc) -> dict:
    return {
        "token": assoc.token,
        "count_a": assoc.count_a,
        "count_b": assoc.count_b,
        "score": assoc.score,
    }


# ---------------------------------------------------------------- inspect


def _cmd_inspect(args) -> int:
    docs = []
    for raw in args.inputs:
        path = Path(raw)
        data = path.read_bytes()
        fmt = detect_format(path, data[:4096])
        doc = parse_bytes(data, fmt, path.stem)
        docs.append(doc)
        if args.json:
            continue
        counts: dict[int, int] = {}
        for ann in doc.annotations:
            counts[ann.tier] = counts.get(ann.tier, 0) + 1
        print(f"{path} [{doc.format.value}]")
        if doc.media_refs:
            print(f"  media: {', '.join(doc.media_refs)}")
        print(f"  {'tier':<24} {'participant':<14} {'category':<18} {'parent':<14} {'n':>5}")
        for idx, tier in enumerate(doc.tiers):
            print(
                f"  {tier.tier_id:<24} {tier.participant:<14} {tier.category:<18} "
                f"{tier.parent_tier or '-':<14} {counts.get(idx, 0):>5}"
            )
    if args.json:
        print(json.dumps([doc.as_dict() for doc in docs], ensure_ascii=False, indent=2))
    return 0


# ---------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turnkit",
        description="Parse conversational transcripts into a unified turn table; "
        "assess, mine, and compare corpora.",
    )
    sub = parser.add_subparsers(dest="command")

    p_parse = sub.add_parser("parse", help="parse transcripts into one turn table (TSV)")
    p_parse.add_argument("inputs", nargs="+", help="transcript files (eaf/cha/TextGrid/exb)")
    p_parse.add_argument("--out", required=True, help="output table path (TSV)")
    p_parse.add_argument("--tier-map", help="JSON tier map file")
    p_parse.add_argument("--config", help="JSON run config file")
    p_parse.add_argument("--corpus-id", help="corpus id for the merged table")
    p_parse.add_argument("--keep-going", action="store_true", help="skip unparsable inputs")
    p_parse.add_argument("--jobs", type=int, default=1, help="parallel file parsing")
    p_parse.add_argument("--seed", type=int, help="seed recorded in the run config")
    p_parse.add_argument("--json", action="store_true", help="summary JSON on stdout")
    p_parse.set_defaults(func=_cmd_parse)

    p_assess = sub.add_parser("assess", help="write the assessment report for a table")
    p_assess.add_argument("table", help="turn table (TSV)")
    p_assess.add_argument("--out", required=True, help="output directory")
    p_assess.add_argument("--media-dir", help="directory searched for source media")
    p_assess.add_argument("--seed", type=int, help="sampling seed (default 1)")
    p_assess.add_argument("--fto-bin", type=int, help="transition histogram bin width (ms)")
    p_assess.add_argument("--sample-count", type=int, help="dyadic stretches to sample")
    p_assess.add_argument("--sample-window", type=int, help="stretch window (ms)")
    p_assess.add_argument("--config", help="JSON run config file")
    p_assess.add_argument("--json", action="store_true", help="summary JSON on stdout")
    p_assess.set_defaults(func=_cmd_assess)

    p_mine = sub.add_parser("mine", help="detect continuer/repair-initiator candidates")
    p_mine.add_argument("table", help="turn table (TSV)")
    p_mine.add_argument("--out", required=True, help="output directory")
    p_mine.add_argument("--threshold", type=float, help="near-similarity threshold (default 0.2)")
    p_mine.add_argument("--min-count", type=int, help="recurrence threshold (default 5)")
    p_mine.add_argument("--unique-max", type=int, help="near-uniqueness threshold (default 2)")
    p_mine.add_argument("--top", type=int, default=10, help="list length per category")
    p_mine.add_argument("--config", help="JSON run config file")
    p_mine.add_argument("--json", action="store_true", help="summary JSON on stdout")
    p_mine.set_defaults(func=_cmd_mine)

    p_compare = sub.add_parser("compare", help="compare two corpora")
    p_compare.add_argument("table_a", help="first turn table (TSV)")
    p_compare.add_argument("table_b", help="second turn table (TSV)")
    p_compare.add_argument("--out", required=True, help="output directory")
    p_compare.add_argument("--bin", type=int, help="duration histogram bin width (ms)")
    p_compare.add_argument("--min-count", type=int, help="token count filter")
    p_compare.add_argument("--top-k", type=int, help="token associations per side")
    p_compare.add_argument("--log-x", action="store_true", help="log-scale duration axis")
    p_compare.add_argument("--config", help="JSON run config file")
    p_compare.add_argument("--json", action="store_true", help="summary JSON on stdout")
    p_compare.set_defaults(func=_cmd_compare)

    p_inspect = sub.add_parser("inspect", help="print tier inventories of raw files")
    p_inspect.add_argument("inputs", nargs="+", help="transcript files")
    p_inspect.add_argument("--json", action="store_true", help="full document JSON on stdout")
    p_inspect.set_defaults(func=_cmd_inspect)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help(sys.stderr)
        return 1
    try:
        return args.func(args)
    except (TurnkitError, OSError) as exc:
        _warn(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
