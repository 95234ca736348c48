"""
Visual Rhythm Module

Time-spatial images built from the scan line, mark detection and the
mark-to-frame mapping.
"""

from src.visual_rhythm.builder import VrImage, build_vr, save_vr_image
from src.visual_rhythm.marks import dedup_events, detect_marks, mark_to_event
from src.visual_rhythm.pipeline import run_vr

__all__ = [
    "VrImage",
    "build_vr",
    "save_vr_image",
    "dedup_events",
    "detect_marks",
    "mark_to_event",
    "run_vr",
]
