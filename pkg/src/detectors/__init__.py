"""
Detectors Module

Plate detection backends, event association and OCR.
"""

from typing import List, Optional

from src.detectors.association import associate, read_plate
from src.detectors.base_detector import BaseDetector
from src.detectors.glyph_detector import GlyphDetector
from src.detectors.ocr import ocr, read_glyphs
from src.detectors.oracle_detector import OracleDetector
from src.detectors.plugin_detector import PluginDetector
from src.frames.frame_source import Frame
from src.models.scenario import SyntheticScenario
from src.models.schemas import Detection
from src.models.settings import DetectorBackend
from src.plugin_client import PluginClient


def create_detector(
    backend: DetectorBackend,
    scenario: Optional[SyntheticScenario] = None,
    client: Optional[PluginClient] = None,
) -> BaseDetector:
    """
    Build the detector named by `backend`.

    Raises:
        ValueError: If the backend's input (scenario or plugin) is missing
    """
    backend = DetectorBackend(backend)
    if backend == DetectorBackend.ORACLE:
        if scenario is None:
            raise ValueError("synthetic-oracle detector requires a scenario")
        return OracleDetector(scenario)
    if backend == DetectorBackend.PLUGIN:
        if client is None:
            raise ValueError("plugin detector requires a plugin client")
        return PluginDetector(client)
    return GlyphDetector()


def detect_plates(frame: Frame, detector: BaseDetector) -> List[Detection]:
    """Detections of one frame, dropping any box that leaves the frame."""
    return [d for d in detector.detect(frame) if d.fits(frame.width, frame.height)]


__all__ = [
    "BaseDetector",
    "GlyphDetector",
    "OracleDetector",
    "PluginDetector",
    "associate",
    "create_detector",
    "detect_plates",
    "ocr",
    "read_glyphs",
    "read_plate",
]
