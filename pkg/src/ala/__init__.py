"""
Accumulative Line Analysis Module

Online crossing detector over a single scan line.
"""

from src.ala.algorithm import AlaState, Cluster, StepSummary, get_clusters, run, step

__all__ = ["AlaState", "Cluster", "StepSummary", "get_clusters", "run", "step"]
