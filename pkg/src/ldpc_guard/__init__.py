"""Tanner-graph analysis, construction and certification for hard-decision LDPC decoding."""

__version__ = "0.1.0"

from .backend import BACKEND
from .decoder import (
    CW3_FIXED,
    CW4_HYBRID,
    GALLAGER_A,
    DecodeOutcome,
    ErrorPattern,
    ThresholdSchedule,
    decode,
    get_schedule,
)
from .graph import GraphBuilder, TannerGraph, girth
from .structures import StructureReport, Verdict, analyze
from .construction import ConstructionSpec, peg_construct, plain_peg
from .verification import exhaustive_verify, sampled_verify, critical_number
from .channel import BscRun, FerPoint, simulate_fer, estimate_slope

__all__ = [
    "BACKEND", "CW3_FIXED", "CW4_HYBRID", "GALLAGER_A", "DecodeOutcome", "ErrorPattern",
    "ThresholdSchedule", "decode", "get_schedule", "GraphBuilder", "TannerGraph", "girth",
    "StructureReport", "Verdict", "analyze", "ConstructionSpec", "peg_construct", "plain_peg",
    "exhaustive_verify", "sampled_verify", "critical_number", "BscRun", "FerPoint",
    "simulate_fer", "estimate_slope",
]
