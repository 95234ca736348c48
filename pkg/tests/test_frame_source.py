"""
Tests for Frame Source Module

Readers for raw planar, y4m and image sequences, and the raw writer.
"""

import numpy as np
import pytest
from PIL import Image

from src.errors import StreamFormatError, TruncatedStreamError
from src.frames.frame_source import (
    RAW_HEADER,
    RAW_MAGIC,
    Frame,
    open_stream,
    probe_stream,
    read_frames_at,
    rgb_to_gray,
    write_raw,
)
from src.models.settings import StreamFormat
from tests.conftest import make_frames


def _write_y4m(path, width, height, frames, colorspace="mono"):
    with open(path, "wb") as f:
        f.write(f"YUV4MPEG2 W{width} H{height} F30:1 Ip A1:1 C{colorspace}\n".encode())
        for value in frames:
            f.write(b"FRAME\n")
            f.write(bytes([value]) * (width * height))
            if colorspace == "420jpeg":
                f.write(bytes([128]) * (2 * ((width + 1) // 2) * ((height + 1) // 2)))


class TestRawPlanar:
    """Tests for the raw planar format."""

    def test_constant_frames_read_back(self, tmp_path):
        """Test a 2-frame 4x2 file of value 7 yields two all-7 frames."""
        path = tmp_path / "c.raw"
        write_raw(str(path), make_frames([7, 7], width=4, height=2), 4, 2)

        frames = list(open_stream(str(path), StreamFormat.RAW))

        assert [f.index for f in frames] == [0, 1]
        assert all(f.width == 4 and f.height == 2 for f in frames)
        assert all((f.pixels == 7).all() for f in frames)

    def test_header_layout(self, tmp_path):
        """Test the 16-byte little-endian header carries size and count."""
        path = tmp_path / "h.raw"
        count = write_raw(str(path), make_frames([1, 2, 3], width=5, height=3), 5, 3)

        header = path.read_bytes()[:16]

        assert count == 3
        assert RAW_HEADER.unpack(header) == (RAW_MAGIC, 5, 3, 3)
        assert path.stat().st_size == 16 + 3 * 15

    def test_bad_magic_rejected_before_iteration(self, tmp_path):
        """Test a wrong magic raises at open time."""
        path = tmp_path / "bad.raw"
        path.write_bytes(RAW_HEADER.pack(b"NOPE", 4, 2, 1) + bytes(8))

        with pytest.raises(StreamFormatError):
            open_stream(str(path), StreamFormat.RAW)

    def test_truncated_payload_reports_last_complete_frame(self, tmp_path):
        """Test a short last frame raises with the index of the last complete one."""
        path = tmp_path / "short.raw"
        write_raw(str(path), make_frames([1, 2, 3], width=4, height=2), 4, 2)
        data = path.read_bytes()
        path.write_bytes(data[:-3])

        frames = open_stream(str(path), StreamFormat.RAW)
        with pytest.raises(TruncatedStreamError) as excinfo:
            list(frames)

        assert excinfo.value.last_complete_index == 1

    def test_missing_file(self, tmp_path):
        """Test a missing input raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            open_stream(str(tmp_path / "absent.raw"), StreamFormat.RAW)

    def test_writer_rejects_wrong_size(self, tmp_path):
        """Test frames of another size are refused."""
        with pytest.raises(ValueError):
            write_raw(str(tmp_path / "x.raw"), make_frames([1], width=3, height=3), 4, 2)

    def test_read_frames_at_random_access(self, tmp_path):
        """Test specific frames are fetched by index; out-of-range ones skipped."""
        path = tmp_path / "r.raw"
        write_raw(str(path), make_frames([10, 20, 30, 40], width=4, height=2), 4, 2)

        found = read_frames_at(str(path), StreamFormat.RAW, [3, 1, 9])

        assert sorted(found) == [1, 3]
        assert (found[3].pixels == 40).all()
        assert found[1].index == 1


class TestY4m:
    """Tests for the YUV4MPEG2 reader."""

    def test_header_size_echoed(self, tmp_path):
        """Test frames carry the header's W and H."""
        path = tmp_path / "v.y4m"
        _write_y4m(path, 16, 8, [5, 6])

        info = probe_stream(str(path), StreamFormat.Y4M)
        frames = list(open_stream(str(path), StreamFormat.Y4M))

        assert (info.width, info.height) == (16, 8)
        assert len(frames) == 2
        assert frames[1].pixels.shape == (8, 16)
        assert (frames[1].pixels == 6).all()

    def test_chroma_planes_skipped(self, tmp_path):
        """Test 4:2:0 chroma bytes are skipped, luma kept."""
        path = tmp_path / "c.y4m"
        _write_y4m(path, 5, 3, [9, 11, 13], colorspace="420jpeg")

        frames = list(open_stream(str(path), StreamFormat.Y4M))
        fetched = read_frames_at(str(path), StreamFormat.Y4M, [2])

        assert [int(f.pixels[0, 0]) for f in frames] == [9, 11, 13]
        assert (fetched[2].pixels == 13).all()

    def test_missing_signature(self, tmp_path):
        """Test a file without the signature is rejected."""
        path = tmp_path / "bad.y4m"
        path.write_bytes(b"NOTY4M W4 H2\n")

        with pytest.raises(StreamFormatError):
            probe_stream(str(path), StreamFormat.Y4M)


class TestImageSequence:
    """Tests for numbered image directories."""

    def test_rgb_converted_with_integer_luma(self, tmp_path):
        """Test a pure red pixel becomes gray 76."""
        rgb = np.zeros((2, 3, 3), dtype=np.uint8)
        rgb[..., 0] = 255
        Image.fromarray(rgb).save(tmp_path / "frame_0.png")

        frames = list(open_stream(str(tmp_path), StreamFormat.IMAGES))

        assert (frames[0].pixels == 76).all()

    def test_numeric_order(self, tmp_path):
        """Test frame_10 sorts after frame_9."""
        for number, value in [(10, 3), (9, 2), (1, 1)]:
            Image.fromarray(np.full((2, 2), value, dtype=np.uint8)).save(tmp_path / f"frame_{number}.png")

        frames = list(open_stream(str(tmp_path), StreamFormat.IMAGES))

        assert [int(f.pixels[0, 0]) for f in frames] == [1, 2, 3]

    def test_empty_directory(self, tmp_path):
        """Test a directory without images is rejected."""
        with pytest.raises(StreamFormatError):
            probe_stream(str(tmp_path), StreamFormat.IMAGES)


class TestGrayConversion:
    """Tests for rgb_to_gray."""

    def test_known_values(self):
        """Test white, green and blue against hand-computed luma."""
        rgb = np.array([[[255, 255, 255], [0, 255, 0], [0, 0, 255]]], dtype=np.uint8)
        assert rgb_to_gray(rgb).tolist() == [[255, 150, 29]]

    def test_frame_row_is_view(self):
        """Test Frame.row returns the requested row."""
        pixels = np.arange(12, dtype=np.uint8).reshape(3, 4)
        assert Frame(index=0, pixels=pixels).row(1).tolist() == [4, 5, 6, 7]
