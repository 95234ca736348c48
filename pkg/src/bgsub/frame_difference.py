"""
Frame Difference Module

Cheap baseline subtractor: absolute difference to the previous observation.
"""

from typing import Optional

import numpy as np

from src.bgsub.base_subtractor import BackgroundSubtractor
from src.config import DEFAULT_DIFF_THRESHOLD


class FrameDifferenceSubtractor(BackgroundSubtractor):
    """Foreground where |x - previous| exceeds a fixed threshold."""

    def __init__(self, shape, threshold: int = DEFAULT_DIFF_THRESHOLD):
        super().__init__(shape)
        self.threshold = threshold
        self._previous: Optional[np.ndarray] = None

    def apply(self, pixels: np.ndarray) -> np.ndarray:
        self._check_shape(pixels)
        current = pixels.astype(np.int16)
        previous, self._previous = self._previous, current
        self.frames_seen += 1
        if previous is None:
            return np.zeros(self.shape, dtype=np.uint8)
        return (np.abs(current - previous) > self.threshold).astype(np.uint8)
