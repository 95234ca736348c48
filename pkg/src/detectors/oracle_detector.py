"""
Oracle Detector Module

Reads plate boxes straight from a synthetic scenario.
"""

from typing import List

from src.detectors.base_detector import BaseDetector
from src.frames.frame_source import Frame
from src.frames.synthetic import plate_boxes_at
from src.models.scenario import SyntheticScenario
from src.models.schemas import Detection


class OracleDetector(BaseDetector):
    """
    Detector that echoes the scenario's ground-truth plates.
    Boxes carry the plate code as text.
    """

    def __init__(self, scenario: SyntheticScenario):
        super().__init__(detector_id="synthetic-oracle")
        self.scenario = scenario

    def detect(self, frame: Frame) -> List[Detection]:
        self.calls += 1
        return [
            Detection(box=box, confidence=1.0, text=code)
            for box, code in plate_boxes_at(self.scenario, frame.index)
        ]
