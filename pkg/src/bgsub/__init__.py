"""
Background Subtraction Module

Per-pixel background models over the scan line (or any array shape).
"""

from src.bgsub.base_subtractor import BackgroundSubtractor, update_and_classify
from src.bgsub.frame_difference import FrameDifferenceSubtractor
from src.bgsub.mixture import LineModel
from src.bgsub.morphology import close_gaps
from src.models.settings import BgSubConfig, BgSubKind


def create_subtractor(config: BgSubConfig, shape) -> BackgroundSubtractor:
    """Build the subtractor named by `config.kind` for arrays of `shape`."""
    if config.kind == BgSubKind.DIFF:
        return FrameDifferenceSubtractor(shape, threshold=config.threshold)
    return LineModel(
        shape,
        components=config.components,
        history=config.history,
        ksigma=config.ksigma,
        var_min=config.var_min,
        var_init=config.var_init,
    )


__all__ = [
    "BackgroundSubtractor",
    "FrameDifferenceSubtractor",
    "LineModel",
    "close_gaps",
    "create_subtractor",
    "update_and_classify",
]
