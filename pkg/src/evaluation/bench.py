"""
Benchmark Module

Frames-per-second of the line methods against a full-frame baseline that
runs the same background model over every pixel of every frame.
"""

import logging
import statistics
import time
from enum import Enum
from typing import Callable, Dict, Iterable, Iterator, List, Optional

from src.ala import run as run_ala
from src.bgsub import create_subtractor
from src.config import BENCH_MIN_FRAMES
from src.frames.frame_source import Frame
from src.models.settings import RunConfig
from src.visual_rhythm import run_vr

logger = logging.getLogger(__name__)


class BenchMethod(str, Enum):
    ALA = "ala"
    VR = "vr"
    BASELINE = "fullframe-baseline"


class _TimedFrames:
    """Iterator wrapper that accumulates the time spent producing frames."""

    def __init__(self, frames: Iterable[Frame]):
        self._frames = iter(frames)
        self.source_seconds = 0.0
        self.count = 0

    def __iter__(self) -> Iterator[Frame]:
        return self

    def __next__(self) -> Frame:
        start = time.perf_counter()
        try:
            frame = next(self._frames)
        finally:
            self.source_seconds += time.perf_counter() - start
        self.count += 1
        return frame


def _run_baseline(frames: Iterable[Frame], config: RunConfig) -> int:
    model = None
    foreground = 0
    for frame in frames:
        if model is None:
            model = create_subtractor(config.bgsub, frame.pixels.shape)
        foreground += int(model.apply(frame.pixels).sum())
    return foreground


def _run_method(method: BenchMethod, frames: Iterable[Frame], config: RunConfig) -> None:
    if method == BenchMethod.ALA:
        for _ in run_ala(frames, config.line_row, config.gamma, config.bgsub):
            pass
    elif method == BenchMethod.VR:
        run_vr(frames, config)
    else:
        _run_baseline(frames, config)


def bench(
    method: BenchMethod,
    frames: Iterable[Frame],
    config: RunConfig,
    min_frames: int = BENCH_MIN_FRAMES,
) -> float:
    """
    Frames per second of one method over one pass of `frames`.

    Time spent producing frames (decoding, rendering) is excluded.

    Raises:
        ValueError: If fewer than `min_frames` frames were processed
    """
    method = BenchMethod(method)
    timed = _TimedFrames(frames)
    start = time.perf_counter()
    _run_method(method, timed, config)
    elapsed = time.perf_counter() - start - timed.source_seconds
    if timed.count < min_frames:
        raise ValueError(f"benchmark needs at least {min_frames} frames, stream had {timed.count}")
    fps = timed.count / max(elapsed, 1e-9)
    logger.debug("%s: %d frames in %.3fs (%.1f fps)", method.value, timed.count, elapsed, fps)
    return fps


def bench_methods(
    methods: List[BenchMethod],
    frames_factory: Callable[[], Iterable[Frame]],
    config: RunConfig,
    repetitions: int = 3,
    min_frames: int = BENCH_MIN_FRAMES,
) -> Dict[str, Dict[str, Optional[float]]]:
    """
    Median FPS per method over `repetitions` fresh passes of the same stream.

    Returns:
        {method: {"fps": median, "runs": [...], "speedup": fps / baseline fps or None}}
    """
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    results: Dict[str, Dict] = {}
    for method in methods:
        method = BenchMethod(method)
        runs = [bench(method, frames_factory(), config, min_frames) for _ in range(repetitions)]
        results[method.value] = {"fps": statistics.median(runs), "runs": runs, "speedup": None}
        logger.info("Bench %s: median %.1f fps over %d runs", method.value, results[method.value]["fps"], repetitions)

    baseline = results.get(BenchMethod.BASELINE.value)
    if baseline:
        for entry in results.values():
            entry["speedup"] = entry["fps"] / baseline["fps"]
    return results
