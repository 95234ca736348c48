"""
Base Subtractor Module

Abstract base class for background subtractors.
"""

from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np


class BackgroundSubtractor(ABC):
    """
    Abstract base class for background subtractors.
    A subtractor is owned by one stream and mutated on every call.
    """

    def __init__(self, shape):
        """
        Initialize the subtractor.

        Args:
            shape: Shape of the arrays it will classify (N for a scan line)
        """
        self.shape: Tuple[int, ...] = tuple(np.atleast_1d(shape).tolist())
        self.frames_seen: int = 0

    @property
    def width(self) -> int:
        return self.shape[-1]

    def _check_shape(self, pixels: np.ndarray) -> None:
        if pixels.shape != self.shape:
            raise ValueError(f"input shape {pixels.shape} does not match model shape {self.shape}")

    @abstractmethod
    def apply(self, pixels: np.ndarray) -> np.ndarray:
        """
        Classify pixels and update the model.

        Args:
            pixels: Gray values with the model's shape

        Returns:
            uint8 mask, 1 = foreground
        """
        pass


def update_and_classify(model: BackgroundSubtractor, line: np.ndarray) -> np.ndarray:
    """
    Feed one scan line to a background model.

    Raises:
        ValueError: If the line width does not match the model
    """
    return model.apply(np.asarray(line))
