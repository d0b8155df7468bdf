"""Compilation of cluster graphs into feedback-loop generation schedules."""

from .embedding import (
    PUBLISHED_TCS24_DELAY1,
    PUBLISHED_TCS24_DELAY7,
    PUBLISHED_TCS24_EXCITED,
    EmbeddingResult,
    compile_lattice_embedded,
    embed_tree_in_lattice,
    feasibility,
    lattice_capacity,
    max_embeddable_depth,
    published_tcs24_schedule,
)
from .passes import compile_layer_symmetric, compile_naive, layer_symmetric_numbering
from .schedule import EMISSION_PERIOD, Schedule, TdfBlock, schedule_from_edges, schedule_from_graph
from .search import minimize_delay_classes

__all__ = [
    "EMISSION_PERIOD",
    "EmbeddingResult",
    "PUBLISHED_TCS24_DELAY1",
    "PUBLISHED_TCS24_DELAY7",
    "PUBLISHED_TCS24_EXCITED",
    "Schedule",
    "TdfBlock",
    "compile_lattice_embedded",
    "compile_layer_symmetric",
    "compile_naive",
    "embed_tree_in_lattice",
    "feasibility",
    "lattice_capacity",
    "layer_symmetric_numbering",
    "max_embeddable_depth",
    "minimize_delay_classes",
    "published_tcs24_schedule",
    "schedule_from_edges",
    "schedule_from_graph",
]
