"""
Evaluation Module

Event matching, OCR accuracy and throughput benchmarks.
"""

from src.evaluation.bench import BenchMethod, bench, bench_methods
from src.evaluation.matching import (
    character_matches,
    f_score,
    greedy_pairs,
    match_by_source,
    match_events,
    ocr_accuracy,
)

__all__ = [
    "BenchMethod",
    "bench",
    "bench_methods",
    "character_matches",
    "f_score",
    "greedy_pairs",
    "match_by_source",
    "match_events",
    "ocr_accuracy",
]
