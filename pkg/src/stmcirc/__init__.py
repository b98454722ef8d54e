"""Broadband modulated-capacitance (magnet-less) circulator design toolkit."""

from .bound import SpecBudget, bound_report, global_bound, reflection_budget
from .compose import compose_direct, compose_mason, design_response, extract_metrics, junction_response
from .filters import LadderFilter, SynthesisSpec, optimize_df, synthesize_filter
from .junction import REFERENCE_JUNCTION, JunctionParams, center_frequency, junction_s, junction_y
from .kernels import BACKEND
from .netcore import CyclicThreePort, Kind, TwoPortS

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CyclicThreePort",
    "JunctionParams",
    "Kind",
    "LadderFilter",
    "REFERENCE_JUNCTION",
    "SpecBudget",
    "SynthesisSpec",
    "TwoPortS",
    "bound_report",
    "center_frequency",
    "compose_direct",
    "compose_mason",
    "design_response",
    "extract_metrics",
    "global_bound",
    "junction_response",
    "junction_s",
    "junction_y",
    "optimize_df",
    "reflection_budget",
    "synthesize_filter",
]
