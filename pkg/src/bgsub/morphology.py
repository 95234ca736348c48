"""
Morphology Module

1-D closing along the scan-line axis.
"""

import numpy as np
from scipy.ndimage import grey_dilation, grey_erosion


def close_gaps(mask: np.ndarray, radius: int) -> np.ndarray:
    """
    Dilate then erode along the last axis with a window of half-width `radius`.

    Gaps of up to 2*radius background pixels between foreground runs are
    filled; runs never grow past their outer ends. A 2-D mask is closed row
    by row.

    Raises:
        ValueError: If radius is negative
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    mask = np.asarray(mask, dtype=np.uint8)
    if radius == 0:
        return mask.copy()

    # Zero margin of 2*radius makes the border behave like open road
    pad = [(0, 0)] * mask.ndim
    pad[-1] = (2 * radius, 2 * radius)
    padded = np.pad(mask, pad, mode="constant")
    size = [1] * mask.ndim
    size[-1] = 2 * radius + 1
    dilated = grey_dilation(padded, size=tuple(size), mode="constant", cval=0)
    closed = grey_erosion(dilated, size=tuple(size), mode="constant", cval=0)
    return closed[..., 2 * radius:-2 * radius]
