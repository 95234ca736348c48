"""
Graph Module

LangGraph-based workflow orchestration for the extraction pipeline.
"""

from src.graph.state import PipelineState
from src.graph.workflow import create_workflow, extraction_workflow

__all__ = ["PipelineState", "create_workflow", "extraction_workflow"]
