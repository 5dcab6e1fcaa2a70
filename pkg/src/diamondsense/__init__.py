"""Witness-sensitive detection of induced diamonds, induced 4-cycles, and
zero-sum quadruples, with brute-force oracles and generators for validation.
"""

from .foursum import (
    FourArrays,
    FourSumResult,
    find4sum,
    gen_foursum_planted,
    reduce_single_to_four,
    sensitive_detect_4sum,
)
from .graphcore import ColoringK, DetectionResult, Graph, SamplingVector
from .oracle import MotifCensus, census, verify_diamond, verify_induced_c4
from .sensitive import (
    detect_diamond_combined,
    find_vertex_in_diamond,
    is_v_in_diamond,
    sensitive_detect_c4,
    sensitive_detect_diamond,
)

__version__ = "0.1.0"

__all__ = [
    "ColoringK",
    "DetectionResult",
    "FourArrays",
    "FourSumResult",
    "Graph",
    "MotifCensus",
    "SamplingVector",
    "census",
    "detect_diamond_combined",
    "find4sum",
    "find_vertex_in_diamond",
    "gen_foursum_planted",
    "is_v_in_diamond",
    "reduce_single_to_four",
    "sensitive_detect_4sum",
    "sensitive_detect_c4",
    "sensitive_detect_diamond",
    "verify_diamond",
    "verify_induced_c4",
]
