"""
Pytest configuration and fixtures for tests.

Provides small synthetic scenarios, written streams and a fake detector
plugin script.
"""

import sys
import textwrap

import numpy as np
import pytest

from src.frames.frame_source import Frame, write_raw
from src.frames.synthetic import generate_synthetic
from src.models.scenario import PlateSpec, SyntheticScenario, VehicleSpec


def make_vehicle(x: int, width: int = 150, height: int = 40, velocity: float = 4.0,
                 entry_frame: int = 0, code: str = "ABC1234") -> VehicleSpec:
    """Vehicle with a centered plate near its top edge."""
    return VehicleSpec(
        x=x, width=width, height=height, velocity=velocity, entry_frame=entry_frame,
        plate=PlateSpec(code=code, x_offset=(width - 70) // 2, y_offset=6),
    )


def make_frames(values, width: int = 6, height: int = 4):
    """Constant-valued frames, one per value."""
    return [Frame(index=i, pixels=np.full((height, width), v, dtype=np.uint8)) for i, v in enumerate(values)]


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size benchmarks, run with LINESCAN_SLOW_TESTS=1")


@pytest.fixture
def single_vehicle_scenario():
    """
    One 150x40 vehicle at 4 px/frame over a 320x120 frame, line on row 60.
    It lies on the line during frames 16..25; crossing completes at 26.
    """
    return SyntheticScenario(
        frame_count=60, width=320, height=120, line_row=60,
        vehicles=[make_vehicle(x=40)],
    )


@pytest.fixture
def two_lane_scenario():
    """Two x-disjoint vehicles crossing at different times."""
    return SyntheticScenario(
        frame_count=90, width=480, height=120, line_row=60,
        vehicles=[
            make_vehicle(x=20, width=160, velocity=4.0, code="ABC1234"),
            make_vehicle(x=260, width=180, height=50, velocity=3.0, entry_frame=10, code="XYZ9876"),
        ],
    )


@pytest.fixture
def raw_stream(tmp_path, two_lane_scenario):
    """The two-lane scenario written to a raw-planar file; returns (path, ground truth)."""
    path = tmp_path / "two_lane.raw"
    frames, records = generate_synthetic(two_lane_scenario, seed=3)
    write_raw(str(path), frames, two_lane_scenario.width, two_lane_scenario.height)
    return str(path), records


FAKE_PLUGIN = textwrap.dedent('''
    import sys
    import time

    mode = sys.argv[1]
    stdin, stdout = sys.stdin.buffer, sys.stdout
    if mode == "deaf":
        time.sleep(60)
    while True:
        header = stdin.readline()
        if not header:
            break
        _, width, height = header.split()
        stdin.read(int(width) * int(height))
        if mode == "exit":
            break
        if mode == "silent":
            time.sleep(60)
        elif mode == "malformed":
            stdout.write("not a detection\\n\\n")
        elif mode == "echo":
            stdout.write("10 20 80 34 0.9 ABC1234\\n5 5 15 15 0.2\\n\\n")
        else:
            stdout.write("\\n")
        stdout.flush()
''')


@pytest.fixture
def plugin_command(tmp_path):
    """Build the command line of the fake plugin for a given mode."""
    script = tmp_path / "fake_plugin.py"
    script.write_text(FAKE_PLUGIN)

    def command(mode: str = "echo") -> str:
        return f"{sys.executable} {script} {mode}"

    return command


@pytest.fixture(autouse=True)
def reset_plugin_client():
    """Reset the plugin client before each test."""
    from src.plugin_client import reset_plugin_client
    reset_plugin_client()
    yield
    reset_plugin_client()
