"""
VR Pipeline Module

Build -> detect -> map -> dedup over a whole stream.
"""

import logging
from collections import deque
from concurrent.futures import Future, ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Deque, Iterable, Iterator, List, NamedTuple, Optional, Tuple, TypeVar

from src.frames.frame_source import Frame
from src.models.schemas import ExtractionEvent, Mark
from src.models.settings import MarkDetector, RunConfig
from src.plugin_client import PluginClient
from src.visual_rhythm.builder import VrImage, build_vr, save_vr_image
from src.visual_rhythm.marks import dedup_events, detect_marks, interval_iou, mark_to_event

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def detect_marks_plugin(vr: VrImage, client: PluginClient, gamma: int) -> List[Mark]:
    """Mark detection delegated to the detector plugin, VR image as payload."""
    marks = []
    for detection in client.detect(vr.pixels):
        x0, y0, x1, y1 = detection.box
        if x1 - x0 < gamma:
            continue
        marks.append(Mark(x0=x0, x1=x1, y0=y0, y1=y1, area=(x1 - x0) * (y1 - y0)))
    marks.sort(key=lambda m: (m.y1, m.x0))
    return marks


class _SegmentResult(NamedTuple):
    events: List[ExtractionEvent]
    # x-intervals of marks already present at the top of the segment
    entering: List[Tuple[int, int]]


def _segment_events(vr: VrImage, config: RunConfig, client: Optional[PluginClient]) -> _SegmentResult:
    if config.mark_detector == MarkDetector.PLUGIN:
        if client is None:
            raise ValueError("mark detector 'plugin' needs a plugin client")
        marks = detect_marks_plugin(vr, client, config.gamma)
    else:
        marks = detect_marks(vr, config.bgsub, config.gamma)
    # Row 0 seeds the background model, so a crossing in progress shows from row 1.
    top = max(config.dedup_frames, 1)
    return _SegmentResult(
        events=[mark_to_event(mark, vr) for mark in marks],
        entering=[(mark.x0, mark.x1) for mark in marks if mark.y0 <= top],
    )


def map_in_order(fn: Callable[[T], R], items: Iterable[T], workers: int) -> Iterator[R]:
    """
    Apply fn on a thread pool, yielding results in input order.

    At most 2 * workers items are pulled ahead of the consumer.
    """
    if workers <= 1:
        for item in items:
            yield fn(item)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        pending: Deque[Future] = deque()
        for item in items:
            pending.append(pool.submit(fn, item))
            if len(pending) >= 2 * workers:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def _resolve_truncated(
    event: ExtractionEvent,
    following: _SegmentResult,
    overlap: int,
) -> Optional[ExtractionEvent]:
    """
    Settle a truncated event of a segment that is not the last one.

    With overlap the next segment re-observes the crossing. Without it the
    event is dropped when the next segment holds the same crossing, and
    otherwise moved to the first frame of the next segment.
    """
    if overlap > 0:
        return None
    if any(interval_iou(event.x0, event.x1, x0, x1) > 0 for x0, x1 in following.entering):
        return None
    return event.model_copy(update={"frame": event.frame + 1, "truncated": False})


def run_vr(
    frames: Iterable[Frame],
    config: RunConfig,
    client: Optional[PluginClient] = None,
) -> List[ExtractionEvent]:
    """
    Extract one event per mark over the stream.

    A truncated event from any segment but the last is settled against the
    next segment (see _resolve_truncated). Segments are detected on
    `config.workers` threads; results keep segment order.

    Returns:
        De-duplicated events sorted by frame
    """
    segments = build_vr(frames, config.line_row, config.segment_length, config.overlap)

    def handle(vr: VrImage) -> _SegmentResult:
        if config.vr_dir:
            save_vr_image(vr, str(Path(config.vr_dir) / f"vr_{vr.segment_start:08d}.png"))
        return _segment_events(vr, config, client)

    per_segment = list(map_in_order(handle, segments, config.workers))

    events: List[ExtractionEvent] = []
    last = len(per_segment) - 1
    for position, result in enumerate(per_segment):
        for event in result.events:
            if event.truncated and position < last:
                settled = _resolve_truncated(event, per_segment[position + 1], config.overlap)
                if settled is None:
                    logger.debug("Dropping truncated event at frame %d (re-observed by next segment)", event.frame)
                    continue
                event = settled
            events.append(event)

    kept = dedup_events(events, config.dedup_frames, config.dedup_iou)
    logger.info("VR: %d segments, %d events (%d before dedup)", len(per_segment), len(kept), len(events))
    return kept
