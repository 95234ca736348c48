"""
Base Detector Module

Abstract base class for plate detectors.
"""

from abc import ABC, abstractmethod
from typing import List

from src.frames.frame_source import Frame
from src.models.schemas import Detection


class BaseDetector(ABC):
    """
    Abstract base class for plate detectors.
    Every backend turns one frame into a list of boxes.
    """

    def __init__(self, detector_id: str):
        """
        Initialize the base detector.

        Args:
            detector_id: Backend name used in logs and reports
        """
        self.detector_id = detector_id
        self.calls: int = 0

    @abstractmethod
    def detect(self, frame: Frame) -> List[Detection]:
        """
        Detect plates in a frame.

        Args:
            frame: Grayscale frame

        Returns:
            Detections with boxes inside the frame
        """
        pass
