"""
Errors Module

Exception types raised across the pipeline.
"""

from typing import Optional


class StreamFormatError(ValueError):
    """Raised when a video header does not match the declared format."""


class TruncatedStreamError(StreamFormatError):
    """Raised when a frame payload ends early."""

    def __init__(self, message: str, last_complete_index: Optional[int]):
        super().__init__(message)
        self.last_complete_index = last_complete_index


class PluginError(RuntimeError):
    """Raised when the external detector process cannot serve a request."""


class PluginTimeoutError(PluginError):
    """Raised when the detector does not answer in time."""


class PluginProtocolError(PluginError):
    """Raised when the detector reply violates the line protocol."""


class OcrFailure(ValueError):
    """Raised when a plate crop cannot be decoded."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class RecordFormatError(ValueError):
    """Raised when a line-delimited record file cannot be parsed."""

    def __init__(self, path: str, line_number: int, detail: str):
        super().__init__(f"{path}:{line_number}: {detail}")
        self.path = path
        self.line_number = line_number
