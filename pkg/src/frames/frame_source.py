"""
Frame Source Module

Readers for uncompressed video (raw planar, y4m, numbered image sequences)
and the raw planar writer. Compressed footage is expected to be decoded to
one of these formats first, e.g.::

    ffmpeg -i input.mp4 -pix_fmt gray -f yuv4mpegpipe -strict -1 out.y4m
"""

import logging
import re
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np
from PIL import Image

from src.errors import StreamFormatError, TruncatedStreamError
from src.models.settings import StreamFormat
from src.utils import ensure_directory

logger = logging.getLogger(__name__)

RAW_MAGIC = b"LSRV"
RAW_HEADER = struct.Struct("<4sIII")

Y4M_SIGNATURE = b"YUV4MPEG2"
IMAGE_SUFFIXES = {".png", ".pgm", ".ppm", ".bmp", ".tif", ".tiff", ".jpg", ".jpeg"}

# BT.601 luma weights, scaled to integers
_LUMA_WEIGHTS = np.array([299, 587, 114], dtype=np.uint32)


@dataclass(frozen=True)
class Frame:
    """One grayscale frame: `pixels` has shape (M, N), dtype uint8."""
    index: int
    pixels: np.ndarray

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    def row(self, line_row: int) -> np.ndarray:
        """Return the scan line at `line_row` (a view, not a copy)."""
        return self.pixels[line_row]


@dataclass(frozen=True)
class StreamInfo:
    """Header-level facts about a stream."""
    width: int
    height: int
    frame_count: Optional[int] = None


def rgb_to_gray(rgb: np.ndarray) -> np.ndarray:
    """Integer BT.601 luma with round-half-up: (299R + 587G + 114B + 500) // 1000."""
    weighted = rgb[..., :3].astype(np.uint32) @ _LUMA_WEIGHTS
    return ((weighted + 500) // 1000).astype(np.uint8)


# ============================================================================
# Raw planar
# ============================================================================

def _read_raw_header(handle: BinaryIO, path: Path) -> StreamInfo:
    header = handle.read(RAW_HEADER.size)
    if len(header) != RAW_HEADER.size:
        raise StreamFormatError(f"{path}: raw header is {len(header)} bytes, expected {RAW_HEADER.size}")
    magic, width, height, count = RAW_HEADER.unpack(header)
    if magic != RAW_MAGIC:
        raise StreamFormatError(f"{path}: bad magic {magic!r}, expected {RAW_MAGIC!r}")
    if width == 0 or height == 0:
        raise StreamFormatError(f"{path}: zero frame size {width}x{height}")
    return StreamInfo(width=width, height=height, frame_count=count)


def _iter_raw(path: Path) -> Iterator[Frame]:
    with open(path, "rb") as handle:
        info = _read_raw_header(handle, path)
        frame_bytes = info.width * info.height
        for index in range(info.frame_count or 0):
            payload = handle.read(frame_bytes)
            if len(payload) != frame_bytes:
                last = index - 1 if index > 0 else None
                raise TruncatedStreamError(
                    f"{path}: frame {index} has {len(payload)} of {frame_bytes} bytes "
                    f"(last complete frame: {last})",
                    last_complete_index=last,
                )
            pixels = np.frombuffer(payload, dtype=np.uint8).reshape(info.height, info.width)
            yield Frame(index=index, pixels=pixels)


def write_raw(path: str, frames: Iterable[Frame], width: int, height: int) -> int:
    """
    Write frames to a raw planar file.

    The frame count in the header is patched once the stream is exhausted,
    so `frames` may be a lazy iterator.

    Returns:
        Number of frames written
    """
    count = 0
    ensure_directory(str(Path(path).parent))
    with open(path, "wb") as handle:
        handle.write(RAW_HEADER.pack(RAW_MAGIC, width, height, 0))
        for frame in frames:
            if frame.pixels.shape != (height, width):
                raise ValueError(
                    f"frame {frame.index} is {frame.width}x{frame.height}, stream is {width}x{height}"
                )
            handle.write(np.ascontiguousarray(frame.pixels, dtype=np.uint8).tobytes())
            count += 1
        handle.seek(0)
        handle.write(RAW_HEADER.pack(RAW_MAGIC, width, height, count))
    logger.info("Wrote %d frames (%dx%d) to %s", count, width, height, path)
    return count


# ============================================================================
# YUV4MPEG2
# ============================================================================

@dataclass(frozen=True)
class _Y4mLayout:
    info: StreamInfo
    header_size: int
    frame_bytes: int


def _chroma_bytes(colorspace: str, width: int, height: int) -> int:
    half_w, half_h = (width + 1) // 2, (height + 1) // 2
    if colorspace.startswith("mono"):
        return 0
    if colorspace.startswith("444"):
        return 2 * width * height
    if colorspace.startswith("422"):
        return 2 * half_w * height
    if colorspace.startswith("420"):
        return 2 * half_w * half_h
    raise StreamFormatError(f"unsupported y4m colorspace C{colorspace}")


def _read_y4m_header(handle: BinaryIO, path: Path) -> _Y4mLayout:
    line = handle.readline(1024)
    if not line.startswith(Y4M_SIGNATURE) or not line.endswith(b"\n"):
        raise StreamFormatError(f"{path}: missing YUV4MPEG2 signature")
    params = line[len(Y4M_SIGNATURE):].decode("ascii", errors="replace").split()
    fields = {token[0]: token[1:] for token in params if token}
    try:
        width, height = int(fields["W"]), int(fields["H"])
    except (KeyError, ValueError) as e:
        raise StreamFormatError(f"{path}: y4m header lacks a valid W/H ({e})")
    if width <= 0 or height <= 0:
        raise StreamFormatError(f"{path}: zero frame size {width}x{height}")
    colorspace = fields.get("C", "420jpeg")
    frame_bytes = width * height + _chroma_bytes(colorspace, width, height)
    return _Y4mLayout(StreamInfo(width=width, height=height), len(line), frame_bytes)


def _iter_y4m(path: Path) -> Iterator[Frame]:
    with open(path, "rb") as handle:
        layout = _read_y4m_header(handle, path)
        luma_bytes = layout.info.width * layout.info.height
        index = 0
        while True:
            marker = handle.readline(1024)
            if not marker:
                return
            if not marker.startswith(b"FRAME"):
                raise StreamFormatError(f"{path}: expected FRAME marker before frame {index}")
            payload = handle.read(layout.frame_bytes)
            if len(payload) != layout.frame_bytes:
                last = index - 1 if index > 0 else None
                raise TruncatedStreamError(
                    f"{path}: frame {index} has {len(payload)} of {layout.frame_bytes} bytes "
                    f"(last complete frame: {last})",
                    last_complete_index=last,
                )
            pixels = np.frombuffer(payload[:luma_bytes], dtype=np.uint8)
            yield Frame(index=index, pixels=pixels.reshape(layout.info.height, layout.info.width))
            index += 1


# ============================================================================
# Image sequences
# ============================================================================

_NUMBER = re.compile(r"(\d+)")


def _sequence_files(path: Path) -> List[Path]:
    if not path.is_dir():
        raise StreamFormatError(f"{path}: image sequence must be a directory")
    files = [p for p in path.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES]

    def frame_number(p: Path) -> Tuple[int, str]:
        numbers = _NUMBER.findall(p.stem)
        return (int(numbers[-1]) if numbers else -1, p.name)

    files.sort(key=frame_number)
    if not files:
        raise StreamFormatError(f"{path}: no images found")
    return files


def _load_gray(file: Path) -> np.ndarray:
    with Image.open(file) as image:
        if image.mode == "L":
            return np.asarray(image, dtype=np.uint8).copy()
        return rgb_to_gray(np.asarray(image.convert("RGB")))


def _iter_images(path: Path) -> Iterator[Frame]:
    files = _sequence_files(path)
    shape: Optional[Tuple[int, ...]] = None
    for index, file in enumerate(files):
        pixels = _load_gray(file)
        if shape is None:
            shape = pixels.shape
        elif pixels.shape != shape:
            raise StreamFormatError(
                f"{file}: size {pixels.shape[1]}x{pixels.shape[0]} differs from {shape[1]}x{shape[0]}"
            )
        yield Frame(index=index, pixels=pixels)


# ============================================================================
# Public API
# ============================================================================

def _existing(path: str) -> Path:
    resolved = Path(path)
    if not resolved.exists():
        raise FileNotFoundError(f"Input not found: {resolved}")
    return resolved


def probe_stream(path: str, fmt: StreamFormat) -> StreamInfo:
    """
    Read only the header (or first image) of a stream.

    Raises:
        FileNotFoundError: If the input does not exist
        StreamFormatError: If the header does not match `fmt`
    """
    source = _existing(path)
    fmt = StreamFormat(fmt)
    if fmt == StreamFormat.RAW:
        with open(source, "rb") as handle:
            return _read_raw_header(handle, source)
    if fmt == StreamFormat.Y4M:
        with open(source, "rb") as handle:
            return _read_y4m_header(handle, source).info
    files = _sequence_files(source)
    first = _load_gray(files[0])
    return StreamInfo(width=first.shape[1], height=first.shape[0], frame_count=len(files))


def open_stream(path: str, fmt: StreamFormat) -> Iterator[Frame]:
    """
    Open a stream and yield grayscale frames in index order.

    The header is validated eagerly, so a malformed file fails here rather
    than on the first `next()`.

    Raises:
        FileNotFoundError: If the input does not exist
        StreamFormatError: Malformed header
        TruncatedStreamError: (while iterating) short frame payload
    """
    source = _existing(path)
    fmt = StreamFormat(fmt)
    info = probe_stream(path, fmt)
    logger.info("Opened %s stream %s (%dx%d)", fmt.value, source, info.width, info.height)
    if fmt == StreamFormat.RAW:
        return _iter_raw(source)
    if fmt == StreamFormat.Y4M:
        return _iter_y4m(source)
    return _iter_images(source)


def read_frames_at(path: str, fmt: StreamFormat, indices: Iterable[int]) -> Dict[int, Frame]:
    """
    Fetch specific frames without decoding the rest of the stream.

    Indices outside the stream are skipped with a warning.
    """
    source = _existing(path)
    fmt = StreamFormat(fmt)
    wanted = sorted(set(int(i) for i in indices))
    found: Dict[int, Frame] = {}
    if not wanted:
        return found

    if fmt == StreamFormat.RAW:
        with open(source, "rb") as handle:
            info = _read_raw_header(handle, source)
            frame_bytes = info.width * info.height
            for index in wanted:
                if index >= (info.frame_count or 0):
                    continue
                handle.seek(RAW_HEADER.size + index * frame_bytes)
                payload = handle.read(frame_bytes)
                if len(payload) != frame_bytes:
                    break
                pixels = np.frombuffer(payload, dtype=np.uint8).reshape(info.height, info.width)
                found[index] = Frame(index=index, pixels=pixels)
    elif fmt == StreamFormat.Y4M:
        with open(source, "rb") as handle:
            layout = _read_y4m_header(handle, source)
            luma_bytes = layout.info.width * layout.info.height
            targets = set(wanted)
            index = 0
            while index <= wanted[-1]:
                marker = handle.readline(1024)
                if not marker.startswith(b"FRAME"):
                    break
                if index in targets:
                    payload = handle.read(layout.frame_bytes)
                    if len(payload) != layout.frame_bytes:
                        break
                    pixels = np.frombuffer(payload[:luma_bytes], dtype=np.uint8)
                    found[index] = Frame(index, pixels.reshape(layout.info.height, layout.info.width))
                else:
                    handle.seek(layout.frame_bytes, 1)
                index += 1
    else:
        files = _sequence_files(source)
        for index in wanted:
            if index < len(files):
                found[index] = Frame(index=index, pixels=_load_gray(files[index]))

    missing = [i for i in wanted if i not in found]
    if missing:
        logger.warning("Frames not available in %s: %s", source, missing)
    return found
