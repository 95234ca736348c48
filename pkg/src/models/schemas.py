"""
Data Schemas Module

Pydantic models for the records exchanged between pipeline stages
and written to line-delimited output files.
"""

import re
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from src.config import DEFAULT_FRAME_TOLERANCE, DEFAULT_IOU_THRESHOLD

PLATE_PATTERN = re.compile(r"^[A-Z]{3}[0-9]{4}$")


class EventSource(str, Enum):
    """Method that produced an extraction event."""
    VR = "vr"
    ALA = "ala"


class ExtractionEvent(BaseModel):
    """A vehicle finished crossing the scan line at this frame."""
    frame: int = Field(..., ge=0, description="Global frame index")
    x0: int = Field(..., ge=0, description="Interval start on the line (inclusive)")
    x1: int = Field(..., description="Interval end on the line (exclusive)")
    source: EventSource = Field(..., description="Producing method")
    truncated: bool = Field(default=False, description="Mark touched the end of its segment")

    @model_validator(mode="after")
    def _check_interval(self) -> "ExtractionEvent":
        if self.x0 >= self.x1:
            raise ValueError(f"empty interval [{self.x0},{self.x1})")
        return self

    def to_record(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            "frame": self.frame,
            "x0": self.x0,
            "x1": self.x1,
            "source": self.source.value,
        }
        if self.truncated:
            record["truncated"] = True
        return record


class GroundTruthRecord(BaseModel):
    """Annotation of one vehicle crossing."""
    id: int = Field(..., ge=0, description="Vehicle id")
    frame: int = Field(..., ge=0, description="Crossing-complete frame index")
    x_left: int = Field(..., ge=0)
    x_right: int
    plate: str = Field(..., description="Three letters followed by four digits")

    @field_validator("plate")
    @classmethod
    def _check_plate(cls, value: str) -> str:
        if not PLATE_PATTERN.match(value):
            raise ValueError(f"plate '{value}' does not match the LLLDDDD layout")
        return value

    @model_validator(mode="after")
    def _check_interval(self) -> "GroundTruthRecord":
        if self.x_left >= self.x_right:
            raise ValueError(f"empty interval [{self.x_left},{self.x_right})")
        return self


class Mark(BaseModel):
    """Connected foreground region of a VR image, in VR coordinates."""
    x0: int = Field(..., ge=0)
    x1: int
    y0: int = Field(..., ge=0)
    y1: int
    area: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _check_box(self) -> "Mark":
        if self.x1 <= self.x0 or self.y1 <= self.y0:
            raise ValueError(f"degenerate mark box {self.box}")
        return self

    @property
    def box(self) -> Tuple[int, int, int, int]:
        return (self.x0, self.y0, self.x1, self.y1)

    @property
    def width(self) -> int:
        return self.x1 - self.x0


class Detection(BaseModel):
    """A plate (or mark) bounding box in image pixels."""
    box: Tuple[int, int, int, int] = Field(..., description="x0, y0, x1, y1")
    confidence: float = Field(default=1.0, ge=0.0, le=1.0)
    text: Optional[str] = Field(default=None, description="Text read by the detector, if any")

    @field_validator("box")
    @classmethod
    def _check_box(cls, box: Tuple[int, int, int, int]) -> Tuple[int, int, int, int]:
        x0, y0, x1, y1 = box
        if x0 < 0 or y0 < 0 or x0 >= x1 or y0 >= y1:
            raise ValueError(f"invalid box {box}")
        return box

    @property
    def x_center(self) -> float:
        return (self.box[0] + self.box[2]) / 2.0

    @property
    def y_center(self) -> float:
        return (self.box[1] + self.box[3]) / 2.0

    def fits(self, width: int, height: int) -> bool:
        """Return True if the box lies inside a width x height image."""
        return self.box[2] <= width and self.box[3] <= height


class PlateReading(BaseModel):
    """Outcome of plate detection, association and OCR for one event."""
    frame: int = Field(..., ge=0)
    x0: int
    x1: int
    source: EventSource
    box: Optional[Tuple[int, int, int, int]] = None
    text: Optional[str] = None
    failure: Optional[str] = None

    @field_validator("text")
    @classmethod
    def _check_text(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and not PLATE_PATTERN.match(value):
            raise ValueError(f"reading '{value}' does not match the LLLDDDD layout")
        return value

    @classmethod
    def failed(cls, event: ExtractionEvent, reason: str,
               box: Optional[Tuple[int, int, int, int]] = None) -> "PlateReading":
        return cls(frame=event.frame, x0=event.x0, x1=event.x1,
                   source=event.source, box=box, failure=reason)

    def to_record(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            "frame": self.frame,
            "x0": self.x0,
            "x1": self.x1,
            "source": self.source.value,
            "box": list(self.box) if self.box else None,
            "text": self.text if self.text is not None else "FAILED",
        }
        if self.failure:
            record["failure"] = self.failure
        return record

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> "PlateReading":
        text = record.get("text")
        box = record.get("box")
        return cls(
            frame=record["frame"],
            x0=record["x0"],
            x1=record["x1"],
            source=record.get("source", EventSource.ALA),
            box=tuple(box) if box else None,
            text=None if text in (None, "FAILED") else text,
            failure=record.get("failure") or ("FAILED" if text in (None, "FAILED") else None),
        )


class MatchConfig(BaseModel):
    """Rule deciding when a predicted event hits a ground-truth crossing."""
    frame_tolerance: int = Field(default=DEFAULT_FRAME_TOLERANCE, ge=0)
    iou_threshold: float = Field(default=DEFAULT_IOU_THRESHOLD, ge=0.0, le=1.0)


class EvalReport(BaseModel):
    """Frame-extraction and OCR scores for one method."""
    method: str = Field(default="all")
    tp: int = 0
    fp: int = 0
    fn: int = 0
    precision: float = 0.0
    recall: float = 0.0
    f_score: float = 0.0
    ocr_accuracy: Optional[float] = None
    fps: Optional[float] = None
    notes: List[str] = Field(default_factory=list)
