"""
Main Entry Point

linescan - single-pass vehicle frame extraction from a virtual scan line.

Subcommands:
  synth   render a synthetic traffic stream and its ground truth
  run     extract one frame per vehicle (vr or ala), optionally read plates
  eval    score events and readings against ground truth
  bench   frames-per-second of the line methods against a full-frame baseline
"""

import argparse
import logging
import sys
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from src.config import BENCH_MIN_FRAMES, OUTPUT_DIR
from src.errors import PluginError, RecordFormatError, StreamFormatError
from src.evaluation import BenchMethod, bench_methods, match_by_source, ocr_accuracy
from src.frames.frame_source import open_stream, probe_stream, write_raw
from src.frames.synthetic import generate_synthetic, random_scenario, render_frames
from src.models.schemas import MatchConfig
from src.models.settings import RunConfig, StreamFormat
from src.orchestrator import PipelineOrchestrator
from src.plugin_client import reset_plugin_client
from src.templates.report_templates import (
    ExtractionReportTemplate,
    ExtractionTableTemplate,
    OcrTableTemplate,
)
from src.utils import (
    load_events,
    load_ground_truth,
    load_key_value_config,
    load_readings,
    load_scenario,
    write_json_output,
    write_records,
)
from src.validators import validate_events, validate_run_config

KNOWN_ERRORS = (
    FileNotFoundError,
    ValueError,
    StreamFormatError,
    RecordFormatError,
    PluginError,
)


def _banner(title: str) -> None:
    print("=" * 60)
    print(title)
    print("=" * 60)


def _add_config_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=str, default=None,
                        help="key=value manifest; flags override its values")


def _add_stream_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", type=str, default=None, help="Video file or image directory")
    parser.add_argument("--format", dest="input_format", choices=[f.value for f in StreamFormat],
                        default=None, help="Input format (default: raw-planar)")
    parser.add_argument("--lambda", dest="line_row", type=int, default=None,
                        help="Scan line row (default: 1000)")
    parser.add_argument("--gamma", type=int, default=None,
                        help="Minimum cluster/mark width in pixels (default: 100)")
    parser.add_argument("--T", dest="segment_length", type=int, default=None,
                        help="VR segment length in frames (default: 900)")
    parser.add_argument("--overlap", type=int, default=None,
                        help="Frames shared by consecutive VR segments (default: 150)")
    parser.add_argument("--bgsub", dest="bgsub_kind", choices=["mog2", "diff"], default=None,
                        help="Background subtractor (default: mog2)")
    parser.add_argument("--workers", type=int, default=None,
                        help="Threads for VR segments and plate detection (default: 1)")


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        prog="linescan",
        description="Single-pass vehicle frame extraction from a virtual scan line",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Render a random scenario with 8 vehicles
  linescan synth --random 8 --seed 7 --out-video out/v.raw --out-gt out/gt.jsonl

  # Extract frames with ALA and read plates with the glyph backend
  linescan run --method ala --input out/v.raw --lambda 180 --detector glyph

  # Score the events
  linescan eval --events output/events.jsonl --gt out/gt.jsonl
        """,
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="Render a synthetic stream and its ground truth")
    _add_config_flag(synth)
    source = synth.add_mutually_exclusive_group(required=True)
    source.add_argument("--scenario", type=str, help="Scenario JSON file")
    source.add_argument("--random", type=int, metavar="N", help="Random scenario with N vehicles")
    synth.add_argument("--noise-objects", type=int, default=0, help="Sub-gamma distractors (with --random)")
    synth.add_argument("--seed", type=int, default=None, help="Seed for layout, textures and noise (default: 0)")
    synth.add_argument("--out-video", type=str, default=str(Path(OUTPUT_DIR) / "synthetic.raw"))
    synth.add_argument("--out-gt", type=str, default=str(Path(OUTPUT_DIR) / "ground_truth.jsonl"))
    synth.add_argument("--out-scenario", type=str, default=None,
                       help="Write the (random) scenario as JSON")

    run = sub.add_parser("run", help="Extract one frame per vehicle")
    _add_config_flag(run)
    _add_stream_flags(run)
    run.add_argument("--method", choices=["vr", "ala"], default=None, help="Extraction method (default: ala)")
    run.add_argument("--mark-detector", choices=["blob", "plugin"], default=None)
    run.add_argument("--detector", choices=["plugin", "synthetic-oracle", "glyph"], default=None,
                     help="Plate detector; readings are produced only when set")
    run.add_argument("--ocr", choices=["plugin", "glyph"], default=None)
    run.add_argument("--scenario", type=str, default=None, help="Scenario for the synthetic-oracle detector")
    run.add_argument("--plugin", dest="plugin_command", type=str, default=None,
                     help="Detector command (default: $LINESCAN_PLUGIN)")
    run.add_argument("--events", dest="events_path", type=str, default=None)
    run.add_argument("--readings", dest="readings_path", type=str, default=None)
    run.add_argument("--vr-dir", type=str, default=None, help="Write each VR segment as PNG")

    evaluate = sub.add_parser("eval", help="Score events and readings against ground truth")
    _add_config_flag(evaluate)
    evaluate.add_argument("--events", nargs="+", required=True, help="One or more events files")
    evaluate.add_argument("--gt", required=True, help="Ground-truth records")
    evaluate.add_argument("--readings", nargs="*", default=[], help="Plate readings files")
    evaluate.add_argument("--delta", dest="frame_tolerance", type=int, default=None,
                          help="Frame tolerance (default: 12)")
    evaluate.add_argument("--iou", dest="iou_threshold", type=float, default=None,
                          help="x-interval IoU threshold (default: 0.5)")
    evaluate.add_argument("--report", type=str, default=None, help="Write the structured report as JSON")

    bench = sub.add_parser("bench", help="Throughput of the line methods")
    _add_config_flag(bench)
    _add_stream_flags(bench)
    bench.add_argument("--methods", nargs="+", choices=[m.value for m in BenchMethod],
                       default=[m.value for m in BenchMethod])
    bench.add_argument("--repetitions", type=int, default=3)
    bench.add_argument("--synthetic", type=str, default=None, metavar="WxH",
                       help="Benchmark a rendered stream of this size instead of --input")
    bench.add_argument("--frames", type=int, default=BENCH_MIN_FRAMES,
                       help=f"Frames for --synthetic (default: {BENCH_MIN_FRAMES})")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--report", type=str, default=None)

    return parser.parse_args(argv)


def build_run_config(args: argparse.Namespace, **extra: Any) -> RunConfig:
    """
    Merge defaults, the optional manifest and command-line flags.

    Raises:
        ValueError: If the merged configuration is invalid
    """
    merged: Dict[str, Any] = load_key_value_config(args.config) if args.config else {}
    flag_names = (
        "input", "input_format", "method", "line_row", "gamma", "segment_length", "overlap",
        "workers", "mark_detector", "detector", "ocr", "scenario", "plugin_command",
        "events_path", "readings_path", "vr_dir", "seed",
    )
    for name in flag_names:
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    if getattr(args, "bgsub_kind", None):
        merged.setdefault("bgsub", {})["kind"] = args.bgsub_kind
    merged.update({k: v for k, v in extra.items() if v is not None})
    try:
        return RunConfig(**merged)
    except ValidationError as e:
        raise ValueError(f"invalid configuration: {e}")


def cmd_synth(args: argparse.Namespace) -> int:
    """Render a scenario to a raw-planar video plus ground-truth records."""
    _banner("linescan synth")
    try:
        manifest = load_key_value_config(args.config) if args.config else {}
        seed = args.seed if args.seed is not None else int(manifest.get("seed", 0))
        if args.scenario:
            scenario = load_scenario(args.scenario)
        else:
            scenario = random_scenario(seed, args.random, noise_objects=args.noise_objects)
        frames, records = generate_synthetic(scenario, seed)
        count = write_raw(args.out_video, frames, scenario.width, scenario.height)
        write_records(args.out_gt, (r.model_dump() for r in records))
        if args.out_scenario:
            write_json_output(scenario.model_dump(mode="json"), args.out_scenario)
    except KNOWN_ERRORS as e:
        print(f"❌ Synthesis failed: {e}")
        return 1

    print(f"✓ {count} frames {scenario.width}x{scenario.height} -> {args.out_video}")
    print(f"✓ {len(records)} crossings on row {scenario.line_row} -> {args.out_gt}")
    if args.out_scenario:
        print(f"✓ Scenario -> {args.out_scenario}")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    """Run one extraction method and write events (and readings)."""
    _banner("linescan run")
    try:
        config = build_run_config(args)
        events_path = config.events_path or str(Path(OUTPUT_DIR) / f"events_{config.method.value}.jsonl")
        orchestrator = PipelineOrchestrator()
        print(f"\nMethod: {config.method.value}  lambda={config.line_row}  gamma={config.gamma}")
        results = orchestrator.execute(config)
        events = sorted(results["events"], key=lambda e: (e.frame, e.x0))
        validate_events(events, probe_stream(config.input, config.input_format))
    except KNOWN_ERRORS as e:
        print(f"❌ Run failed: {e}")
        return 1
    finally:
        reset_plugin_client()

    print("  ✓ Events lie inside the stream")
    write_records(events_path, (e.to_record() for e in events))
    print(f"  ✓ {len(events)} events -> {events_path}")

    readings = results["readings"]
    if readings is not None:
        readings_path = config.readings_path or str(Path(OUTPUT_DIR) / f"readings_{config.method.value}.jsonl")
        write_records(readings_path, (r.to_record() for r in readings))
        failed = sum(1 for r in readings if r.text is None)
        print(f"  ✓ {len(readings)} readings ({failed} failed) -> {readings_path}")

    print("\nStage Status:")
    for stage, status in orchestrator.get_stage_status().items():
        symbol = "✓" if status == "completed" else "-"
        print(f"  {symbol} [{stage}] {status}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    """Score events (and readings) and print the result tables."""
    _banner("linescan eval")
    try:
        manifest = load_key_value_config(args.config) if args.config else {}
        match = MatchConfig(
            frame_tolerance=args.frame_tolerance if args.frame_tolerance is not None
            else manifest.get("frame_tolerance", MatchConfig().frame_tolerance),
            iou_threshold=args.iou_threshold if args.iou_threshold is not None
            else manifest.get("iou_threshold", MatchConfig().iou_threshold),
        )
        gt = load_ground_truth(args.gt)
        events = [event for path in args.events for event in load_events(path)]
        readings = [reading for path in args.readings for reading in load_readings(path)]
    except (ValidationError, *KNOWN_ERRORS) as e:
        print(f"❌ Evaluation failed: {e}")
        return 1

    reports = match_by_source(events, gt, match)
    print(f"\nMatching: delta={match.frame_tolerance} frames, IoU >= {match.iou_threshold}\n")
    print(ExtractionTableTemplate.render({Path(args.gt).stem: reports}))
    for name, report in reports.items():
        for note in report.notes:
            print(f"  note [{name}]: {note}")

    accuracy: Optional[float] = None
    if args.readings:
        by_source: Dict[str, list] = {}
        for reading in readings:
            by_source.setdefault(reading.source.value, []).append(reading)
        rows = []
        for source, group in by_source.items():
            rows.append({"method": source, "accuracy": ocr_accuracy(group, gt, match)})
            if source in reports:
                reports[source].ocr_accuracy = rows[-1]["accuracy"]
        accuracy = ocr_accuracy(readings, gt, match) if len(by_source) <= 1 else None
        print()
        print(OcrTableTemplate.render(rows))

    if args.report:
        try:
            write_json_output(ExtractionReportTemplate.build(reports, match, accuracy), args.report)
        except (ValueError, IOError) as e:
            print(f"❌ Error writing report: {e}")
            return 1
        print(f"\n✓ Report -> {args.report}")
    return 0


def _parse_size(text: str) -> tuple:
    try:
        width, height = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise ValueError(f"size '{text}' must look like 640x480")
    return width, height


def cmd_bench(args: argparse.Namespace) -> int:
    """Median frames-per-second per method."""
    _banner("linescan bench")
    try:
        if args.synthetic:
            width, height = _parse_size(args.synthetic)
            lanes = max(1, min(4, width // 160))
            scenario = random_scenario(args.seed, n_vehicles=lanes, width=width, height=height, lanes=lanes)
            scenario = scenario.model_copy(update={"frame_count": args.frames})
            config = build_run_config(args, line_row=args.line_row if args.line_row is not None else scenario.line_row)
            factory = partial(render_frames, scenario, args.seed)
            min_frames = min(args.frames, BENCH_MIN_FRAMES)
        else:
            if not args.input:
                raise ValueError("bench needs --input or --synthetic")
            config = build_run_config(args)
            info = probe_stream(config.input, config.input_format)
            validate_run_config(config, info)
            factory = partial(open_stream, config.input, config.input_format)
            min_frames = BENCH_MIN_FRAMES
        results = bench_methods(
            [BenchMethod(m) for m in args.methods], factory, config,
            repetitions=args.repetitions, min_frames=min_frames,
        )
    except KNOWN_ERRORS as e:
        print(f"❌ Benchmark failed: {e}")
        return 1

    rows = [{"method": method, "fps": entry["fps"]} for method, entry in results.items()]
    print()
    print(OcrTableTemplate.render(rows))
    for method, entry in results.items():
        if entry["speedup"] is not None and method != BenchMethod.BASELINE.value:
            print(f"  ✓ {method}: {entry['speedup']:.1f}x the full-frame baseline")
    if args.report:
        write_json_output({"repetitions": args.repetitions, "methods": results}, args.report)
        print(f"\n✓ Report -> {args.report}")
    return 0


COMMANDS = {
    "synth": cmd_synth,
    "run": cmd_run,
    "eval": cmd_eval,
    "bench": cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, configure logging and dispatch to a subcommand."""
    args = parse_arguments(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
