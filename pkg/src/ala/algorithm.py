"""
Accumulative Line Analysis Algorithm

Foreground on the scan line is OR-accumulated frame after frame. The
accumulator's maximal runs are the clusters; a cluster narrower than gamma is
wiped as noise, and a cluster whose current foreground is entirely empty
(line XOR accumulator fills the whole run) means the vehicle has fully
crossed: the current frame is extracted and the run is cleared.

Intervals are half-open: a cluster (l, r) covers columns l..r-1.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional

import numpy as np

from src.bgsub import close_gaps, create_subtractor, update_and_classify
from src.frames.frame_source import Frame
from src.models.schemas import EventSource, ExtractionEvent
from src.models.settings import BgSubConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cluster:
    """Maximal run of ones in the accumulator, [l, r)."""
    l: int
    r: int

    @property
    def width(self) -> int:
        return self.r - self.l


@dataclass
class StepSummary:
    """What happened to the clusters of one step."""
    clusters: int = 0
    emitted: int = 0
    noise_cleared: int = 0
    alive: int = 0


@dataclass
class AlaState:
    """Accumulator and counters for one stream."""
    width: int
    gamma: int
    line_row: int = 0
    frame_index: int = 0
    line_or: np.ndarray = field(default=None)
    last_step: StepSummary = field(default_factory=StepSummary)

    def __post_init__(self):
        if self.gamma < 1:
            raise ValueError(f"gamma must be >= 1, got {self.gamma}")
        if self.line_or is None:
            self.line_or = np.zeros(self.width, dtype=np.uint8)


def get_clusters(mask: np.ndarray) -> List[Cluster]:
    """Maximal runs of ones in a binary line, left to right."""
    bits = (np.asarray(mask) != 0).astype(np.int8)
    edges = np.diff(np.concatenate(([0], bits, [0])))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return [Cluster(int(l), int(r)) for l, r in zip(starts, ends)]


def step(state: AlaState, fg: np.ndarray) -> List[ExtractionEvent]:
    """
    Advance the accumulator by one frame.

    Args:
        state: Accumulator state, mutated in place
        fg: Foreground line (values 0/1) of the current frame

    Returns:
        Events for the clusters that finished crossing on this frame

    Raises:
        ValueError: If the line width does not match the state
    """
    line = (np.asarray(fg) != 0).astype(np.uint8)
    if line.shape != (state.width,):
        raise ValueError(f"foreground width {line.shape} does not match state width {state.width}")

    line_or = state.line_or
    np.bitwise_or(line, line_or, out=line_or)

    summary = StepSummary()
    events: List[ExtractionEvent] = []
    for cluster in get_clusters(line_or):
        l, r = cluster.l, cluster.r
        summary.clusters += 1
        line_xor = np.bitwise_xor(line[l:r], line_or[l:r])
        if r - l < state.gamma:
            line_or[l:r] = 0  # potential noise
            summary.noise_cleared += 1
        elif int(line_xor.sum()) == r - l:
            events.append(ExtractionEvent(frame=state.frame_index, x0=l, x1=r, source=EventSource.ALA))
            line_or[l:r] = 0
            summary.emitted += 1
        else:
            summary.alive += 1

    state.last_step = summary
    state.frame_index += 1
    return events


def run(
    frames: Iterable[Frame],
    line_row: int,
    gamma: int,
    bgsub: Optional[BgSubConfig] = None,
) -> Iterator[ExtractionEvent]:
    """
    Stream extraction events from frames.

    Only the scan line of each frame is touched after row extraction; state is
    one accumulator and one background model of width N.

    Raises:
        ValueError: If line_row is outside the frame
    """
    bgsub = bgsub or BgSubConfig()
    state: Optional[AlaState] = None
    model = None
    for frame in frames:
        if state is None:
            if not 0 <= line_row < frame.height:
                raise ValueError(f"line row {line_row} outside frame height {frame.height}")
            state = AlaState(width=frame.width, gamma=gamma, line_row=line_row, frame_index=frame.index)
            model = create_subtractor(bgsub, frame.width)
        state.frame_index = frame.index
        fg = update_and_classify(model, frame.row(line_row))
        fg = close_gaps(fg, bgsub.close_radius)
        for event in step(state, fg):
            logger.debug("ALA event at frame %d, x=[%d,%d)", event.frame, event.x0, event.x1)
            yield event
