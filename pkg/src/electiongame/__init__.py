"""Exact solvers for recounting and manipulation games on districted
plurality elections (plurality over voters and plurality over districts),
plus generators for graph-based hardness instance families."""

from electiongame.kernels import available as available_kernels
from electiongame.kernels import default_name as default_kernel
from electiongame.model import (
    ElectionInstance,
    ManipulationStrategy,
    ModelError,
    Rule,
    TieOrder,
    VoteProfile,
)

__version__ = "0.1.0"

__all__ = [
    "ElectionInstance",
    "ManipulationStrategy",
    "ModelError",
    "Rule",
    "TieOrder",
    "VoteProfile",
    "available_kernels",
    "default_kernel",
    "__version__",
]
