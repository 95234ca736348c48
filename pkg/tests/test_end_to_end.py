"""
End-to-End Tests

Both extraction methods on randomized synthetic traffic, the plate reading
chain on a hundred plates, throughput against the full-frame baseline and
run-to-run determinism of the command-line outputs.
"""

import os
from functools import partial

import numpy as np
import pytest

from main import main
from src.ala import run as run_ala
from src.detectors import GlyphDetector, detect_plates, read_plate
from src.evaluation import BenchMethod, bench_methods, match_events, ocr_accuracy
from src.frames.synthetic import generate_synthetic, random_scenario, render_frames
from src.models.scenario import NoiseSpec, SyntheticScenario
from src.models.schemas import MatchConfig, PlateReading
from src.models.settings import RunConfig
from src.visual_rhythm import build_vr, run_vr

STRICT = MatchConfig(frame_tolerance=2, iou_threshold=0.8)


def _events(scenario, seed, method):
    frames, records = generate_synthetic(scenario, seed)
    config = RunConfig(line_row=scenario.line_row)
    if method == "vr":
        return run_vr(frames, config), records
    return list(run_ala(frames, config.line_row, config.gamma, config.bgsub)), records


class TestRandomScenarios:
    """Both methods against ground truth on seeded random traffic."""

    @pytest.mark.parametrize("method", ["ala", "vr"])
    @pytest.mark.parametrize("seed", range(20))
    def test_every_crossing_found(self, seed, method):
        """Test precision and recall are exactly 1 within 2 frames and IoU 0.8."""
        scenario = random_scenario(seed, n_vehicles=1 + seed % 10)
        events, records = _events(scenario, seed, method)
        report = match_events(events, records, STRICT, method=method)
        assert len(records) == len(scenario.vehicles)
        assert (report.tp, report.fp, report.fn) == (len(records), 0, 0)

    @pytest.mark.parametrize("method", ["ala", "vr"])
    @pytest.mark.parametrize("seed", [1, 4, 9])
    def test_narrow_distractors_add_no_events(self, seed, method):
        """Test objects narrower than gamma never produce an event."""
        scenario = random_scenario(seed, n_vehicles=5, noise_objects=6)
        assert scenario.noise.objects
        events, records = _events(scenario, seed, method)
        assert len(events) == len(records)
        assert match_events(events, records, STRICT).fp == 0

    @pytest.mark.parametrize("method", ["ala", "vr"])
    def test_salt_and_pepper_only(self, method):
        """Test an empty road with impulse noise yields no events."""
        scenario = SyntheticScenario(
            frame_count=150, width=640, height=240, line_row=120,
            noise=NoiseSpec(salt_pepper_rate=0.002),
        )
        events, _ = _events(scenario, 2, method)
        assert events == []


class TestPlateChain:
    """Detect, associate and read a hundred rendered plates."""

    @pytest.fixture(scope="class")
    def readings_and_truth(self):
        """Ten scenarios of ten vehicles, frames shifted apart so they share one timeline."""
        readings, truth = [], []
        detector = GlyphDetector()
        for seed in range(10):
            scenario = random_scenario(100 + seed, n_vehicles=10)
            frames, records = generate_synthetic(scenario, seed)
            events = list(run_ala(frames, scenario.line_row, 100))
            wanted = {event.frame for event in events}
            by_index = {f.index: f for f in render_frames(scenario, seed) if f.index in wanted}
            shift = 10_000 * seed
            for event in events:
                frame = by_index[event.frame]
                reading = read_plate(frame, event, detect_plates(frame, detector), scenario.line_row)
                readings.append(reading.model_copy(update={"frame": reading.frame + shift}))
            truth.extend(
                record.model_copy(update={"frame": record.frame + shift, "id": record.id + 10 * seed})
                for record in records
            )
        return readings, truth

    def test_hundred_plates(self, readings_and_truth):
        """Test character accuracy of at least 99%."""
        readings, truth = readings_and_truth
        assert len(truth) == 100
        assert ocr_accuracy(readings, truth, STRICT) >= 0.99

    def test_forced_failure_costs_one_plate(self, readings_and_truth):
        """Test failing one correct extraction costs exactly its 7 characters."""
        readings, truth = readings_and_truth
        index = next(
            i for i, r in enumerate(readings)
            if any(abs(r.frame - g.frame) <= 2 and r.x0 == g.x_left and r.text == g.plate for g in truth)
        )
        forced = list(readings)
        forced[index] = PlateReading(
            frame=readings[index].frame, x0=readings[index].x0, x1=readings[index].x1,
            source=readings[index].source, failure="forced",
        )
        drop = ocr_accuracy(readings, truth, STRICT) - ocr_accuracy(forced, truth, STRICT)
        assert drop == pytest.approx(7 / (7 * len(truth)))


class TestLineExactness:
    """VR rows are the scan lines themselves."""

    def test_rows_equal_frame_rows(self):
        """Test every VR row over 1000 frames at 640x480 is bit-equal to the frame row."""
        scenario = random_scenario(3, n_vehicles=6, width=640, height=480)
        scenario = scenario.model_copy(update={"frame_count": 1000})
        line_row = scenario.line_row
        expected = np.stack([f.row(line_row) for f in render_frames(scenario, 3)])

        covered = np.zeros(1000, dtype=bool)
        for vr in build_vr(render_frames(scenario, 3), line_row, 900, 100):
            rows = slice(vr.segment_start, vr.segment_start + vr.height)
            np.testing.assert_array_equal(vr.pixels, expected[rows])
            covered[rows] = True
        assert covered.all()


class TestThroughput:
    """Line methods against the full-frame baseline on the same stream."""

    def test_speedup(self):
        """Test ala is at least 10x and vr at least 5x the baseline rate."""
        scenario = random_scenario(0, n_vehicles=4, width=640, height=480)
        scenario = scenario.model_copy(update={"frame_count": 1000})
        config = RunConfig(line_row=scenario.line_row)
        results = bench_methods(
            list(BenchMethod), partial(render_frames, scenario, 0), config,
            repetitions=3, min_frames=1000,
        )
        assert results["ala"]["speedup"] >= 10
        assert results["vr"]["speedup"] >= 5

    @pytest.mark.slow
    @pytest.mark.skipif(not os.getenv("LINESCAN_SLOW_TESTS"), reason="set LINESCAN_SLOW_TESTS=1 to run")
    def test_speedup_full_hd(self):
        """Test the same ratios on 1920x1080 frames."""
        scenario = random_scenario(0, n_vehicles=4, width=1920, height=1080)
        scenario = scenario.model_copy(update={"frame_count": 1000})
        config = RunConfig(line_row=scenario.line_row)
        results = bench_methods(
            list(BenchMethod), partial(render_frames, scenario, 0), config,
            repetitions=3, min_frames=1000,
        )
        assert results["ala"]["speedup"] >= 10
        assert results["vr"]["speedup"] >= 5


class TestDeterminism:
    """Identical seeds and settings give byte-identical files."""

    def test_repeated_runs(self, tmp_path):
        """Test synth, run and eval outputs are stable across two passes."""
        outputs = []
        for attempt in ("a", "b"):
            out = tmp_path / attempt
            video, gt = out / "v.raw", out / "gt.jsonl"
            assert main(["synth", "--random", "4", "--seed", "5",
                         "--out-video", str(video), "--out-gt", str(gt)]) == 0
            events = []
            for method in ("ala", "vr"):
                path = out / f"events_{method}.jsonl"
                assert main(["run", "--method", method, "--input", str(video), "--lambda", "180",
                             "--events", str(path)]) == 0
                events.append(str(path))
            report = out / "report.json"
            assert main(["eval", "--events", *events, "--gt", str(gt), "--report", str(report)]) == 0
            outputs.append([video.read_bytes(), gt.read_bytes(), report.read_bytes(),
                            *(open(p, "rb").read() for p in events)])
        assert outputs[0] == outputs[1]
