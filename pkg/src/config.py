"""
Configuration Module

Centralized defaults for the line-scan extraction engine.
Values can be overridden from the environment (or a .env file).
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Project root directory
PROJECT_ROOT = Path(__file__).parent.parent

# Output Configuration
OUTPUT_DIR = os.getenv("OUTPUT_DIR", str(PROJECT_ROOT / "output"))

# Line-scan parameters (lambda, gamma and T as used on 1920x1080 footage)
DEFAULT_LINE_ROW = int(os.getenv("LINESCAN_LAMBDA", "1000"))
DEFAULT_GAMMA = int(os.getenv("LINESCAN_GAMMA", "100"))
DEFAULT_SEGMENT_LENGTH = int(os.getenv("LINESCAN_SEGMENT_LENGTH", "900"))
DEFAULT_OVERLAP = int(os.getenv("LINESCAN_OVERLAP", "150"))
DEFAULT_DEDUP_FRAMES = 2
DEFAULT_DEDUP_IOU = 0.5

# Background subtraction
DEFAULT_BGSUB_KIND = os.getenv("LINESCAN_BGSUB", "mog2")
DEFAULT_BGSUB_HISTORY = 1
DEFAULT_BGSUB_COMPONENTS = 3
DEFAULT_BGSUB_KSIGMA = 2.5
DEFAULT_BGSUB_VAR_MIN = 15.0
DEFAULT_BGSUB_VAR_INIT = 15.0
DEFAULT_CLOSE_RADIUS = 5
DEFAULT_DIFF_THRESHOLD = 25

# Detector plugin
PLUGIN_COMMAND = os.getenv("LINESCAN_PLUGIN")
DEFAULT_PLUGIN_TIMEOUT = float(os.getenv("LINESCAN_PLUGIN_TIMEOUT", "10"))

# Synthetic plates and glyph backends
PLATE_LENGTH = 7
PLATE_BRIGHTNESS_THRESHOLD = 200
MIN_GLYPH_CONTRAST = 30

# Evaluation
DEFAULT_FRAME_TOLERANCE = 12
DEFAULT_IOU_THRESHOLD = 0.5
BENCH_MIN_FRAMES = 1000
