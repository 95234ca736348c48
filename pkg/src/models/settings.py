"""
Run Settings Module

Pydantic models for the configuration of a pipeline run.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from src.config import (
    DEFAULT_BGSUB_COMPONENTS,
    DEFAULT_BGSUB_HISTORY,
    DEFAULT_BGSUB_KIND,
    DEFAULT_BGSUB_KSIGMA,
    DEFAULT_BGSUB_VAR_INIT,
    DEFAULT_BGSUB_VAR_MIN,
    DEFAULT_CLOSE_RADIUS,
    DEFAULT_DEDUP_FRAMES,
    DEFAULT_DEDUP_IOU,
    DEFAULT_DIFF_THRESHOLD,
    DEFAULT_GAMMA,
    DEFAULT_LINE_ROW,
    DEFAULT_OVERLAP,
    DEFAULT_PLUGIN_TIMEOUT,
    DEFAULT_SEGMENT_LENGTH,
    PLUGIN_COMMAND,
)


class StreamFormat(str, Enum):
    """Supported uncompressed inputs."""
    RAW = "raw-planar"
    Y4M = "y4m"
    IMAGES = "image-sequence"


class Method(str, Enum):
    """Frame-extraction method."""
    VR = "vr"
    ALA = "ala"


class BgSubKind(str, Enum):
    """Background subtractor selected by configuration."""
    MOG2 = "mog2"
    DIFF = "diff"


class DetectorBackend(str, Enum):
    """Source of plate detections."""
    PLUGIN = "plugin"
    ORACLE = "synthetic-oracle"
    GLYPH = "glyph"


class OcrBackend(str, Enum):
    """Source of plate text."""
    PLUGIN = "plugin"
    GLYPH = "glyph"


class MarkDetector(str, Enum):
    """Mark detector used on VR images."""
    BLOB = "blob"
    PLUGIN = "plugin"


class BgSubConfig(BaseModel):
    """Background subtraction settings (`bgsub.*` keys)."""
    kind: BgSubKind = Field(default=BgSubKind(DEFAULT_BGSUB_KIND))
    history: int = Field(default=DEFAULT_BGSUB_HISTORY, ge=0, description="alpha = 1/max(history, 1)")
    components: int = Field(default=DEFAULT_BGSUB_COMPONENTS, ge=1)
    ksigma: float = Field(default=DEFAULT_BGSUB_KSIGMA, gt=0)
    var_min: float = Field(default=DEFAULT_BGSUB_VAR_MIN, gt=0)
    var_init: float = Field(default=DEFAULT_BGSUB_VAR_INIT, gt=0)
    close_radius: int = Field(default=DEFAULT_CLOSE_RADIUS, ge=0)
    threshold: int = Field(default=DEFAULT_DIFF_THRESHOLD, ge=0, le=255, description="diff subtractor only")

    @property
    def learning_rate(self) -> float:
        return 1.0 / max(self.history, 1)


class RunConfig(BaseModel):
    """Everything a `run` needs; validated before any frame is read."""
    input: Optional[str] = None
    input_format: StreamFormat = StreamFormat.RAW
    method: Method = Method.ALA
    line_row: int = Field(default=DEFAULT_LINE_ROW, ge=0)
    gamma: int = Field(default=DEFAULT_GAMMA, ge=1)
    segment_length: int = Field(default=DEFAULT_SEGMENT_LENGTH, ge=1)
    overlap: int = Field(default=DEFAULT_OVERLAP, ge=0)
    dedup_frames: int = Field(default=DEFAULT_DEDUP_FRAMES, ge=0)
    dedup_iou: float = Field(default=DEFAULT_DEDUP_IOU, ge=0.0, le=1.0)
    bgsub: BgSubConfig = Field(default_factory=BgSubConfig)
    mark_detector: MarkDetector = MarkDetector.BLOB
    detector: Optional[DetectorBackend] = None
    ocr: OcrBackend = OcrBackend.GLYPH
    scenario: Optional[str] = None
    events_path: Optional[str] = None
    readings_path: Optional[str] = None
    vr_dir: Optional[str] = None
    seed: int = 0
    plugin_command: Optional[str] = PLUGIN_COMMAND
    plugin_timeout: float = Field(default=DEFAULT_PLUGIN_TIMEOUT, gt=0)
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_cross_fields(self) -> "RunConfig":
        if self.overlap >= self.segment_length:
            raise ValueError(
                f"overlap ({self.overlap}) must be smaller than segment length ({self.segment_length})"
            )
        if self.detector == DetectorBackend.ORACLE and not self.scenario:
            raise ValueError("synthetic-oracle detector requires a scenario file")
        needs_plugin = (
            self.detector == DetectorBackend.PLUGIN
            or (self.detector is not None and self.ocr == OcrBackend.PLUGIN)
            or self.mark_detector == MarkDetector.PLUGIN
        )
        if needs_plugin and not self.plugin_command:
            raise ValueError("plugin backend requires LINESCAN_PLUGIN or --plugin")
        return self
