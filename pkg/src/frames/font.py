"""
Plate Font Module

A 5x7 binary font for synthetic plates, plus the cell layout shared by the
renderer and the glyph OCR. 'O' and '0' share one glyph, which leaves 35
character classes.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

GLYPH_COLUMNS = 5
GLYPH_ROWS = 7

PLATE_BACKGROUND = 235
PLATE_INK = 20

_ZERO = (
    ".###.",
    "#...#",
    "#..##",
    "#.#.#",
    "##..#",
    "#...#",
    ".###.",
)

_FONT_ROWS: Dict[str, Tuple[str, ...]] = {
    "A": (".###.", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"),
    "B": ("####.", "#...#", "#...#", "####.", "#...#", "#...#", "####."),
    "C": (".###.", "#...#", "#....", "#....", "#....", "#...#", ".###."),
    "D": ("####.", "#...#", "#...#", "#...#", "#...#", "#...#", "####."),
    "E": ("#####", "#....", "#....", "####.", "#....", "#....", "#####"),
    "F": ("#####", "#....", "#....", "####.", "#....", "#....", "#...."),
    "G": (".###.", "#...#", "#....", "#.###", "#...#", "#...#", ".####"),
    "H": ("#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"),
    "I": (".###.", "..#..", "..#..", "..#..", "..#..", "..#..", ".###."),
    "J": ("..###", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."),
    "K": ("#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"),
    "L": ("#....", "#....", "#....", "#....", "#....", "#....", "#####"),
    "M": ("#...#", "##.##", "#.#.#", "#.#.#", "#...#", "#...#", "#...#"),
    "N": ("#...#", "#...#", "##..#", "#.#.#", "#..##", "#...#", "#...#"),
    "O": _ZERO,
    "P": ("####.", "#...#", "#...#", "####.", "#....", "#....", "#...."),
    "Q": (".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"),
    "R": ("####.", "#...#", "#...#", "####.", "#.#..", "#..#.", "#...#"),
    "S": (".####", "#....", "#....", ".###.", "....#", "....#", "####."),
    "T": ("#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."),
    "U": ("#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."),
    "V": ("#...#", "#...#", "#...#", "#...#", "#...#", ".#.#.", "..#.."),
    "W": ("#...#", "#...#", "#...#", "#.#.#", "#.#.#", "#.#.#", ".#.#."),
    "X": ("#...#", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", "#...#"),
    "Y": ("#...#", "#...#", ".#.#.", "..#..", "..#..", "..#..", "..#.."),
    "Z": ("#####", "....#", "...#.", "..#..", ".#...", "#....", "#####"),
    "0": _ZERO,
    "1": ("..#..", ".##..", "..#..", "..#..", "..#..", "..#..", ".###."),
    "2": (".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"),
    "3": ("#####", "...#.", "..#..", "...#.", "....#", "#...#", ".###."),
    "4": ("...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."),
    "5": ("#####", "#....", "####.", "....#", "....#", "#...#", ".###."),
    "6": ("..##.", ".#...", "#....", "####.", "#...#", "#...#", ".###."),
    "7": ("#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."),
    "8": (".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."),
    "9": (".###.", "#...#", "#...#", ".####", "....#", "...#.", ".##.."),
}


def glyph(char: str) -> np.ndarray:
    """Return the 7x5 boolean bitmap of a character."""
    try:
        rows = _FONT_ROWS[char]
    except KeyError:
        raise ValueError(f"character '{char}' is not in the plate font")
    return np.array([[c == "#" for c in row] for row in rows], dtype=bool)


@dataclass(frozen=True)
class CharacterClass:
    """One OCR class; a merged class answers a letter and a digit."""
    letter: Optional[str]
    digit: Optional[str]
    bitmap: np.ndarray


def _build_classes() -> List[CharacterClass]:
    classes: List[CharacterClass] = []
    for letter in "ABCDEFGHIJKLMNPQRSTUVWXYZ":
        classes.append(CharacterClass(letter=letter, digit=None, bitmap=glyph(letter)))
    classes.append(CharacterClass(letter="O", digit="0", bitmap=glyph("0")))
    for digit in "123456789":
        classes.append(CharacterClass(letter=None, digit=digit, bitmap=glyph(digit)))
    return classes


CHARACTER_CLASSES: List[CharacterClass] = _build_classes()


def split_bounds(length: int, parts: int) -> List[int]:
    """Floor-split `length` pixels into `parts` contiguous spans; returns parts+1 edges."""
    return [(i * length) // parts for i in range(parts + 1)]


def glyph_box(cell_width: int, cell_height: int) -> Tuple[int, int, int, int]:
    """Inner rectangle (x0, y0, x1, y1) of a cell that holds the scaled glyph."""
    margin_x = cell_width // 8
    margin_y = cell_height // 8
    return margin_x, margin_y, cell_width - margin_x, cell_height - margin_y


def render_plate(code: str, width: int, height: int) -> np.ndarray:
    """
    Render a plate code as a (height, width) uint8 image.

    Each of the 7 cells holds one glyph scaled by nearest neighbour into
    `glyph_box`; the block edges come from `split_bounds`, the same edges the
    OCR averages over.
    """
    plate = np.full((height, width), PLATE_BACKGROUND, dtype=np.uint8)
    cells = split_bounds(width, len(code))
    for position, char in enumerate(code):
        cx0, cx1 = cells[position], cells[position + 1]
        gx0, gy0, gx1, gy1 = glyph_box(cx1 - cx0, height)
        cols = split_bounds(gx1 - gx0, GLYPH_COLUMNS)
        rows = split_bounds(gy1 - gy0, GLYPH_ROWS)
        bitmap = glyph(char)
        for r in range(GLYPH_ROWS):
            for c in range(GLYPH_COLUMNS):
                if bitmap[r, c]:
                    plate[gy0 + rows[r]:gy0 + rows[r + 1],
                          cx0 + gx0 + cols[c]:cx0 + gx0 + cols[c + 1]] = PLATE_INK
    return plate
