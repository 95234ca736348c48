"""
Scenario Schemas Module

Pydantic models describing a synthetic traffic video.
"""

import math
from typing import List

from pydantic import BaseModel, Field, field_validator

from src.models.schemas import PLATE_PATTERN


class PlateSpec(BaseModel):
    """Plate rectangle relative to the vehicle's top-left corner."""
    code: str = Field(..., description="Three letters followed by four digits")
    x_offset: int = Field(..., ge=0)
    y_offset: int = Field(..., ge=0)
    width: int = Field(default=70, ge=35)
    height: int = Field(default=14, ge=7)

    @field_validator("code")
    @classmethod
    def _check_code(cls, value: str) -> str:
        if not PLATE_PATTERN.match(value):
            raise ValueError(f"plate code '{value}' does not match the LLLDDDD layout")
        return value


class MovingObjectSpec(BaseModel):
    """A textured rectangle moving down the frame at constant speed."""
    x: int = Field(..., ge=0, description="Left column")
    width: int = Field(..., ge=1)
    height: int = Field(..., ge=1)
    velocity: float = Field(..., gt=0, description="Pixels per frame, downward")
    entry_frame: int = Field(default=0, ge=0, description="Frame at which the bottom edge enters row 0")
    intensity: int = Field(default=150, ge=0, le=255)

    @field_validator("velocity")
    @classmethod
    def _check_velocity(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("velocity must be finite")
        return value

    def top_at(self, frame_index: int) -> int:
        """Row of the object's top edge at a frame (may be negative)."""
        return math.floor(-self.height + self.velocity * (frame_index - self.entry_frame))


class VehicleSpec(MovingObjectSpec):
    """A vehicle carrying a license plate."""
    plate: PlateSpec

    @property
    def crossing_duration(self) -> int:
        """Frames the vehicle spends on the line (T_i)."""
        return math.ceil(self.height / self.velocity)


class NoiseSpec(BaseModel):
    """Distractors rendered on top of the scene."""
    salt_pepper_rate: float = Field(default=0.0, ge=0.0, le=1.0)
    objects: List[MovingObjectSpec] = Field(default_factory=list)


class SyntheticScenario(BaseModel):
    """Complete description of a synthetic traffic video."""
    frame_count: int = Field(..., ge=0)
    width: int = Field(..., ge=1)
    height: int = Field(..., ge=1)
    fps: float = Field(default=30.0, gt=0)
    line_row: int = Field(..., ge=0, description="Row on which crossings are recorded")
    background: int = Field(default=100, ge=0, le=255)
    texture_amplitude: int = Field(default=40, ge=0, le=127)
    vehicles: List[VehicleSpec] = Field(default_factory=list)
    noise: NoiseSpec = Field(default_factory=NoiseSpec)
