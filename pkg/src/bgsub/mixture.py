"""
Mixture Model Module

Adaptive per-pixel mixture of Gaussians over gray values, vectorized with
numpy. With history 1 the learning rate is 1: a pixel's model collapses onto
the last observed value, so anything that stays put for one frame becomes
background.
"""

import numpy as np

from src.bgsub.base_subtractor import BackgroundSubtractor
from src.config import (
    DEFAULT_BGSUB_COMPONENTS,
    DEFAULT_BGSUB_HISTORY,
    DEFAULT_BGSUB_KSIGMA,
    DEFAULT_BGSUB_VAR_INIT,
    DEFAULT_BGSUB_VAR_MIN,
)

# Components below this weight are treated as empty
_WEIGHT_FLOOR = 1e-5


class LineModel(BackgroundSubtractor):
    """
    Mixture of up to K Gaussians per position.

    Components are kept sorted by weight (strongest first). A pixel within
    `ksigma` standard deviations of a live component is background and updates
    the first such component; otherwise it is foreground and replaces the
    weakest component.
    """

    def __init__(
        self,
        shape,
        components: int = DEFAULT_BGSUB_COMPONENTS,
        history: int = DEFAULT_BGSUB_HISTORY,
        ksigma: float = DEFAULT_BGSUB_KSIGMA,
        var_min: float = DEFAULT_BGSUB_VAR_MIN,
        var_init: float = DEFAULT_BGSUB_VAR_INIT,
    ):
        super().__init__(shape)
        if components < 1:
            raise ValueError(f"components must be >= 1, got {components}")
        self.components = components
        self.alpha = 1.0 / max(history, 1)
        self.ksigma = ksigma
        self.var_min = var_min
        self.var_init = max(var_init, var_min)

        full = (components,) + self.shape
        self.means = np.zeros(full, dtype=np.float32)
        self.variances = np.full(full, self.var_init, dtype=np.float32)
        self.weights = np.zeros(full, dtype=np.float32)

    def apply(self, pixels: np.ndarray) -> np.ndarray:
        self._check_shape(pixels)
        x = pixels.astype(np.float32)

        if self.frames_seen == 0:
            # First observation defines the background
            self.means[0] = x
            self.weights[0] = 1.0
            self.frames_seen = 1
            return np.zeros(self.shape, dtype=np.uint8)
        self.frames_seen += 1

        alpha = self.alpha
        diff = x[None] - self.means
        live = self.weights > _WEIGHT_FLOOR
        match = live & (diff * diff < (self.ksigma ** 2) * self.variances)
        matched = match.any(axis=0)
        first = np.argmax(match, axis=0)

        self.weights *= (1.0 - alpha)

        # Matched positions: pull the first matching component towards x
        hit = np.zeros_like(match)
        np.put_along_axis(hit, first[None], matched[None], axis=0)
        self.weights[hit] += alpha
        rho = np.zeros_like(self.weights)
        rho[hit] = np.minimum(alpha / self.weights[hit], 1.0)
        self.means += rho * diff
        self.variances += rho * (diff * diff - self.variances)

        # Unmatched positions: replace the weakest component
        unmatched = ~matched
        last = self.components - 1
        self.means[last][unmatched] = x[unmatched]
        self.variances[last][unmatched] = self.var_init
        self.weights[last][unmatched] = alpha

        np.maximum(self.variances, self.var_min, out=self.variances)
        self.weights[self.weights <= _WEIGHT_FLOOR] = 0.0
        total = self.weights.sum(axis=0, keepdims=True)
        np.divide(self.weights, total, out=self.weights, where=total > 0)
        self._sort_components()

        return unmatched.astype(np.uint8)

    def _sort_components(self) -> None:
        if self.components == 1:
            return
        order = np.argsort(-self.weights, axis=0, kind="stable")
        self.weights = np.take_along_axis(self.weights, order, axis=0)
        self.means = np.take_along_axis(self.means, order, axis=0)
        self.variances = np.take_along_axis(self.variances, order, axis=0)
