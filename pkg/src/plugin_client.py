"""
Plugin Client Module

Talks to an external detector process over stdin/stdout.

Request:  b"DETECT <width> <height>\\n" followed by width*height gray bytes.
Reply:    one line per detection, "x0 y0 x1 y1 confidence [text]",
          terminated by a blank line.
"""

import logging
import queue
import shlex
import subprocess
import threading
import time
from typing import List, Optional

import numpy as np
from pydantic import ValidationError

from src.config import DEFAULT_PLUGIN_TIMEOUT, PLUGIN_COMMAND
from src.errors import PluginError, PluginProtocolError, PluginTimeoutError
from src.models.schemas import Detection

logger = logging.getLogger(__name__)

_EOF = None


def parse_detection_line(line: str, width: int, height: int) -> Detection:
    """
    Parse one reply line.

    Raises:
        PluginProtocolError: If the line is malformed or the box leaves the image
    """
    fields = line.split()
    if len(fields) not in (5, 6):
        raise PluginProtocolError(f"expected 5 or 6 fields, got {len(fields)}: {line!r}")
    try:
        box = tuple(int(v) for v in fields[:4])
        confidence = float(fields[4])
        detection = Detection(box=box, confidence=confidence, text=fields[5] if len(fields) == 6 else None)
    except (ValueError, ValidationError) as e:
        raise PluginProtocolError(f"malformed detection {line!r}: {e}")
    if not detection.fits(width, height):
        raise PluginProtocolError(f"box {detection.box} outside {width}x{height} image")
    return detection


class PluginClient:
    """
    One detector subprocess, serialized behind a lock.

    A reader thread moves reply lines into a queue so that a silent plugin
    can be timed out. A timed-out process is killed and respawned on the
    next request.
    """

    def __init__(self, command: str, timeout: float = DEFAULT_PLUGIN_TIMEOUT):
        if not command:
            raise ValueError("plugin command is empty")
        self.command = shlex.split(command)
        self.timeout = timeout
        self._process: Optional[subprocess.Popen] = None
        self._lines: "queue.Queue[Optional[str]]" = queue.Queue()
        self._lock = threading.Lock()
        logger.info("Using detector plugin: %s", command)

    def _start(self) -> subprocess.Popen:
        if self._process is not None and self._process.poll() is None:
            return self._process
        self._lines = queue.Queue()
        self._process = subprocess.Popen(
            self.command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
        )
        reader = threading.Thread(target=self._pump, args=(self._process, self._lines), daemon=True)
        reader.start()
        return self._process

    @staticmethod
    def _pump(process: subprocess.Popen, lines: "queue.Queue[Optional[str]]") -> None:
        for raw in process.stdout:
            lines.put(raw.decode("utf-8", errors="replace").rstrip("\r\n"))
        lines.put(_EOF)

    def _read_reply(self, deadline: float) -> List[str]:
        reply: List[str] = []
        while True:
            remaining = deadline - time.monotonic()
            try:
                line = self._lines.get(timeout=max(remaining, 0.0))
            except queue.Empty:
                self._kill()
                raise PluginTimeoutError(f"no reply within {self.timeout}s")
            if line is _EOF:
                self._process.wait()
                self._process = None
                raise PluginError("detector process exited")
            if line.strip() == "":
                return reply
            reply.append(line)

    def _write_request(self, process: subprocess.Popen, payload: bytes, deadline: float) -> None:
        """Write one request from a helper thread so a plugin that stops reading can be timed out."""
        failure: List[OSError] = []

        def write() -> None:
            try:
                process.stdin.write(payload)
                process.stdin.flush()
            except (BrokenPipeError, OSError) as e:
                failure.append(e)

        writer = threading.Thread(target=write, daemon=True)
        writer.start()
        writer.join(timeout=max(deadline - time.monotonic(), 0.0))
        if writer.is_alive():
            # Killing the process closes the pipe and releases the writer.
            self._kill()
            raise PluginTimeoutError(f"request not accepted within {self.timeout}s")
        if failure:
            self._kill()
            raise PluginError(f"cannot write to detector: {failure[0]}")

    def detect(self, pixels: np.ndarray) -> List[Detection]:
        """
        Send one gray image and return the detections it reports.

        The request write and the reply share one deadline of `timeout` seconds.

        Raises:
            PluginTimeoutError: Request not accepted or no complete reply in time
            PluginProtocolError: Malformed reply
            PluginError: Process died or could not be written to
        """
        image = np.ascontiguousarray(pixels, dtype=np.uint8)
        if image.ndim != 2:
            raise ValueError(f"expected a 2-D gray image, got shape {image.shape}")
        height, width = image.shape
        payload = f"DETECT {width} {height}\n".encode("ascii") + image.tobytes()
        with self._lock:
            deadline = time.monotonic() + self.timeout
            process = self._start()
            self._write_request(process, payload, deadline)
            lines = self._read_reply(deadline)
        return [parse_detection_line(line, width, height) for line in lines]

    def _kill(self) -> None:
        if self._process is not None:
            self._process.kill()
            self._process.wait()
            self._process = None

    def close(self) -> None:
        """Close the plugin's stdin and wait for it to exit."""
        with self._lock:
            if self._process is None:
                return
            try:
                self._process.stdin.close()
                self._process.wait(timeout=self.timeout)
            except (OSError, subprocess.TimeoutExpired):
                self._process.kill()
                self._process.wait()
            self._process = None


# Global instance cache (lazy initialization)
_plugin_client_instance: Optional[PluginClient] = None


def get_plugin_client(command: Optional[str] = None, timeout: float = DEFAULT_PLUGIN_TIMEOUT) -> Optional[PluginClient]:
    """
    Get or create the plugin client (lazy initialization).

    Returns:
        PluginClient instance, or None if no command is configured
    """
    global _plugin_client_instance

    if _plugin_client_instance is None:
        command = command or PLUGIN_COMMAND
        if not command:
            return None
        _plugin_client_instance = PluginClient(command, timeout=timeout)

    return _plugin_client_instance


def reset_plugin_client() -> None:
    """Close and forget the plugin client (useful for testing)."""
    global _plugin_client_instance
    if _plugin_client_instance is not None:
        _plugin_client_instance.close()
    _plugin_client_instance = None
