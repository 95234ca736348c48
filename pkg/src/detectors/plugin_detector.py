"""
Plugin Detector Module

Forwards frames to the external detector process.
"""

from typing import List

from src.detectors.base_detector import BaseDetector
from src.frames.frame_source import Frame
from src.models.schemas import Detection
from src.plugin_client import PluginClient


class PluginDetector(BaseDetector):
    """Detector backed by a `PluginClient`; errors propagate to the caller."""

    def __init__(self, client: PluginClient):
        super().__init__(detector_id="plugin")
        self.client = client

    def detect(self, frame: Frame) -> List[Detection]:
        self.calls += 1
        return self.client.detect(frame.pixels)
