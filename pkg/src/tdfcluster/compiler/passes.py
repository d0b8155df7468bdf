"""Renumbering passes that reduce the number of distinct delay classes."""

from __future__ import annotations

from ..errors import SpecError
from ..representation import ClusterGraph, Family, FamilySpec, build_family, tree_children, tree_size
from .schedule import Schedule, schedule_from_graph


def compile_naive(graph: ClusterGraph) -> Schedule:
    """Identity numbering: one block per occupied delay class above 1."""
    return schedule_from_graph(
        graph, tuple(range(1, graph.n_slots + 1)), provenance={"pass": "naive"}
    )


def layer_symmetric_numbering(a: int, d: int) -> tuple[int, ...]:
    """Slot of each heap-ordered tree node under layer-by-layer, rank-grouped numbering.

    Layer ``l`` holds ``a**(l-1)`` nodes starting at slot ``(a**(l-1)-1)/(a-1)+1``.
    The rank-``r`` child of the ``j``-th parent in layer ``l`` is placed at
    ``start(l+1) + r*n_l + (j-1)``, so every parent-child interval in a layer
    depends only on the child's rank.
    """
    if a < 2 or d < 1:
        raise SpecError(f"layer-symmetric numbering needs a >= 2, d >= 1, got ({a}, {d})")
    n = tree_size(a, d)
    slot = [0] * (n + 1)
    slot[1] = 1
    # heap order already groups nodes by layer, so only in-layer positions change
    for layer in range(1, d):
        n_l = a ** (layer - 1)
        start_l = tree_size(a, layer - 1) + 1
        start_next = tree_size(a, layer) + 1
        for heap_parent in range(start_l, start_l + n_l):
            j = slot[heap_parent] - start_l + 1
            for r, child in enumerate(tree_children(heap_parent, a, n)):
                slot[child] = start_next + r * n_l + (j - 1)
    return tuple(slot[1:])


def compile_layer_symmetric(a: int, d: int) -> Schedule:
    graph = build_family(FamilySpec(Family.TCS, (a, d)))
    return schedule_from_graph(
        graph,
        layer_symmetric_numbering(a, d),
        provenance={"pass": "layer", "a": a, "d": d},
    )
