from .statespace import (
    InitialVerdict,
    StateGraph,
    VerificationReport,
    verify_exhaustive,
)
from .towerwalk import WalkBoundResult, tower_walk_bound
from .fulltower import full_tower_analysis
from .protospace import search_protocol_space

__all__ = [
    "InitialVerdict",
    "StateGraph",
    "VerificationReport",
    "verify_exhaustive",
    "WalkBoundResult",
    "tower_walk_bound",
    "full_tower_analysis",
    "search_protocol_space",
]
