"""Compile, verify, and fidelity-budget photonic cluster states built with time-delayed feedback."""

from .compiler import (
    Schedule,
    TdfBlock,
    compile_lattice_embedded,
    compile_layer_symmetric,
    compile_naive,
    embed_tree_in_lattice,
    feasibility,
    max_embeddable_depth,
    minimize_delay_classes,
)
from .representation import (
    ClusterGraph,
    DistributionMatrix,
    FamilySpec,
    apply_ops,
    build_family,
    delay_classes,
    gate_counts,
    to_distribution,
)
from .emulator import emulate
from .noise import NoiseParams, fidelity_estimate
from .reports import verify_schedule
from .stabilizer import extract_graph, run_schedule, states_equal

__version__ = "0.1.0"

__all__ = [
    "ClusterGraph",
    "DistributionMatrix",
    "FamilySpec",
    "NoiseParams",
    "Schedule",
    "TdfBlock",
    "apply_ops",
    "build_family",
    "compile_lattice_embedded",
    "compile_layer_symmetric",
    "compile_naive",
    "delay_classes",
    "embed_tree_in_lattice",
    "emulate",
    "extract_graph",
    "feasibility",
    "fidelity_estimate",
    "gate_counts",
    "max_embeddable_depth",
    "minimize_delay_classes",
    "run_schedule",
    "states_equal",
    "to_distribution",
    "verify_schedule",
]
