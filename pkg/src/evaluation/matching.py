"""
Matching Module

Scores extraction events and plate readings against ground truth.

A prediction hits a ground-truth crossing when their frames differ by at most
`frame_tolerance` and their x-intervals overlap with IoU at least
`iou_threshold`. Pairs are taken greedily: smallest frame difference first,
then highest IoU.
"""

import logging
from typing import Dict, List, Protocol, Sequence, Tuple

from src.config import PLATE_LENGTH
from src.models.schemas import (
    EvalReport,
    ExtractionEvent,
    GroundTruthRecord,
    MatchConfig,
    PlateReading,
)
from src.visual_rhythm.marks import interval_iou

logger = logging.getLogger(__name__)


class _Located(Protocol):
    frame: int
    x0: int
    x1: int


def f_score(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def greedy_pairs(
    predictions: Sequence[_Located],
    gt: Sequence[GroundTruthRecord],
    cfg: MatchConfig,
) -> List[Tuple[int, int]]:
    """
    One-to-one (prediction index, ground-truth index) pairs.

    Candidates are ordered by frame difference, then IoU, then position, so
    the pairing does not depend on input order.
    """
    candidates = []
    for i, pred in enumerate(predictions):
        for j, record in enumerate(gt):
            gap = abs(pred.frame - record.frame)
            if gap > cfg.frame_tolerance:
                continue
            iou = interval_iou(pred.x0, pred.x1, record.x_left, record.x_right)
            if iou < cfg.iou_threshold or iou == 0.0:
                continue
            candidates.append((
                gap, -iou,
                (pred.frame, pred.x0, pred.x1), (record.frame, record.x_left, record.id),
                i, j,
            ))
    candidates.sort()

    used_pred, used_gt = set(), set()
    pairs: List[Tuple[int, int]] = []
    for *_, i, j in candidates:
        if i in used_pred or j in used_gt:
            continue
        used_pred.add(i)
        used_gt.add(j)
        pairs.append((i, j))
    return pairs


def match_events(
    pred: Sequence[ExtractionEvent],
    gt: Sequence[GroundTruthRecord],
    cfg: MatchConfig = MatchConfig(),
    method: str = "all",
) -> EvalReport:
    """
    Precision, recall and F-score of predicted events.

    An undefined ratio (no predictions, or no ground truth) is reported as 0
    and explained in `notes`.
    """
    tp = len(greedy_pairs(pred, gt, cfg))
    fp = len(pred) - tp
    fn = len(gt) - tp
    notes: List[str] = []

    if tp + fp > 0:
        precision = tp / (tp + fp)
    else:
        precision = 0.0
        notes.append("no predictions: precision undefined, reported as 0")
    if tp + fn > 0:
        recall = tp / (tp + fn)
    else:
        recall = 0.0
        notes.append("no ground truth: recall undefined, reported as 0")

    report = EvalReport(
        method=method, tp=tp, fp=fp, fn=fn,
        precision=precision, recall=recall, f_score=f_score(precision, recall),
        notes=notes,
    )
    logger.info("%s: TP=%d FP=%d FN=%d P=%.3f R=%.3f F=%.3f",
                method, tp, fp, fn, precision, recall, report.f_score)
    return report


def match_by_source(
    pred: Sequence[ExtractionEvent],
    gt: Sequence[GroundTruthRecord],
    cfg: MatchConfig = MatchConfig(),
) -> Dict[str, EvalReport]:
    """One report per `source` tag found in `pred`, in first-seen order."""
    groups: Dict[str, List[ExtractionEvent]] = {}
    for event in pred:
        groups.setdefault(event.source.value, []).append(event)
    if not groups:
        return {"all": match_events([], gt, cfg)}
    return {source: match_events(events, gt, cfg, method=source) for source, events in groups.items()}


def character_matches(read: str, truth: str) -> int:
    """Positions where two plate strings agree."""
    return sum(a == b for a, b in zip(read, truth))


def ocr_accuracy(
    readings: Sequence[PlateReading],
    gt: Sequence[GroundTruthRecord],
    cfg: MatchConfig = MatchConfig(),
) -> float:
    """
    Character-level OCR accuracy over every ground-truth plate.

    Each crossing is paired with at most one reading using the event
    matcher. A crossing with no paired reading, or a failed one, scores 0 of
    its 7 characters. Returns 0.0 for empty ground truth.
    """
    if not gt:
        return 0.0
    ordered = sorted(readings, key=lambda r: (r.frame, r.x0, r.x1, r.text or ""))
    correct = 0
    for i, j in greedy_pairs(ordered, gt, cfg):
        reading = ordered[i]
        if reading.text is not None:
            correct += character_matches(reading.text, gt[j].plate)
    return correct / (PLATE_LENGTH * len(gt))
