"""
Marks Module

Mark detection on VR images, the mark-to-frame mapping and the
de-duplication of events reported by overlapping segments.
"""

import logging
from typing import List, Optional

import numpy as np
from scipy import ndimage

from src.bgsub import close_gaps, create_subtractor, update_and_classify
from src.config import DEFAULT_GAMMA
from src.models.schemas import EventSource, ExtractionEvent, Mark
from src.models.settings import BgSubConfig
from src.visual_rhythm.builder import VrImage

logger = logging.getLogger(__name__)

_EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)


def binarize_vr(vr: VrImage, bgsub: BgSubConfig) -> np.ndarray:
    """
    Foreground mask of a VR image, one row at a time.

    Rows are the per-frame scan lines in order, so this is the same
    subtraction the online detector performs, restarted at the segment.
    """
    model = create_subtractor(bgsub, vr.width)
    mask = np.empty(vr.pixels.shape, dtype=np.uint8)
    for t in range(vr.height):
        mask[t] = update_and_classify(model, vr.pixels[t])
    return close_gaps(mask, bgsub.close_radius)


def detect_marks(
    vr: VrImage,
    bgsub: Optional[BgSubConfig] = None,
    gamma: int = DEFAULT_GAMMA,
) -> List[Mark]:
    """
    Find vehicle marks in a VR image.

    Binarize, close each row, label 8-connected components and drop those
    narrower than gamma.

    Returns:
        Marks sorted by bottom row, then left column
    """
    bgsub = bgsub or BgSubConfig()
    mask = binarize_vr(vr, bgsub)
    labels, count = ndimage.label(mask, structure=_EIGHT_CONNECTED)
    if count == 0:
        return []
    areas = ndimage.sum_labels(mask, labels, index=np.arange(1, count + 1))

    marks: List[Mark] = []
    for label, box in enumerate(ndimage.find_objects(labels), start=1):
        if box is None:
            continue
        rows, cols = box
        if cols.stop - cols.start < gamma:
            continue
        marks.append(Mark(
            x0=cols.start, x1=cols.stop, y0=rows.start, y1=rows.stop,
            area=int(areas[label - 1]),
        ))
    marks.sort(key=lambda m: (m.y1, m.x0))
    logger.debug("Segment %d: %d components, %d marks", vr.segment_start, count, len(marks))
    return marks


def mark_to_event(mark: Mark, vr: VrImage) -> ExtractionEvent:
    """
    Map a mark to the frame where its vehicle has left the line.

    The first row below the mark is that frame; a mark reaching the last
    filled row is clamped to it and flagged truncated.

    Raises:
        ValueError: If the mark lies outside the image
    """
    if mark.x1 > vr.width or mark.y1 > vr.height:
        raise ValueError(f"mark {mark.box} outside VR image {vr.width}x{vr.height}")
    truncated = mark.y1 >= vr.height
    row = vr.height - 1 if truncated else mark.y1
    return ExtractionEvent(
        frame=vr.segment_start + row,
        x0=mark.x0,
        x1=mark.x1,
        source=EventSource.VR,
        truncated=truncated,
    )


def interval_iou(a0: int, a1: int, b0: int, b1: int) -> float:
    """Intersection over union of two half-open intervals."""
    inter = min(a1, b1) - max(a0, b0)
    if inter <= 0:
        return 0.0
    union = max(a1, b1) - min(a0, b0)
    return inter / union


def dedup_events(events: List[ExtractionEvent], max_gap: int, min_iou: float) -> List[ExtractionEvent]:
    """
    Merge events close in time and overlapping in x, keeping the earlier one.

    Args:
        events: Events, in any order
        max_gap: Largest frame difference treated as the same crossing
        min_iou: Minimum x-interval IoU treated as the same crossing

    Raises:
        ValueError: On a negative gap or an IoU outside [0, 1]
    """
    if max_gap < 0:
        raise ValueError(f"max_gap must be >= 0, got {max_gap}")
    if not 0.0 <= min_iou <= 1.0:
        raise ValueError(f"min_iou must be in [0, 1], got {min_iou}")

    kept: List[ExtractionEvent] = []
    for event in sorted(events, key=lambda e: (e.frame, e.x0, e.x1)):
        duplicate = any(
            event.frame - other.frame <= max_gap
            and interval_iou(event.x0, event.x1, other.x0, other.x1) >= min_iou
            for other in kept
        )
        if not duplicate:
            kept.append(event)
    return kept
