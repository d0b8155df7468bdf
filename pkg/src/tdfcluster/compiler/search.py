"""Local search over slot numberings to minimize feedback blocks."""

from __future__ import annotations

import random
from collections.abc import Sequence

from ..representation import ClusterGraph
from .schedule import Schedule, schedule_from_graph


def _cost(edges: list[tuple[int, int]], numbering: Sequence[int]) -> tuple[int, int]:
    """(non-native delay classes, total edge span); the span breaks plateaus."""
    classes = set()
    span = 0
    for i, j in edges:
        gap = abs(numbering[i - 1] - numbering[j - 1])
        classes.add(gap)
        span += gap
    classes.discard(1)
    return len(classes), span


def minimize_delay_classes(
    graph: ClusterGraph, budget: int = 20_000, seed: int = 0, restarts: int | None = None
) -> tuple[tuple[int, ...], Schedule]:
    """Steepest-descent hill climbing over transpositions, with random restarts.

    The first climb starts from the identity numbering, so the result never
    uses more blocks than :func:`compile_naive`.  ``budget`` caps the number
    of candidate numberings evaluated; when it runs out the best numbering
    seen so far is returned.  Ties go to the lexicographically smallest
    numbering, so results depend only on ``(graph, budget, seed)``.
    """
    n = graph.n_slots
    edges = sorted(graph.edges)
    rng = random.Random(seed)
    evaluations = 0

    start = list(range(1, n + 1))
    best = tuple(start)
    best_cost = _cost(edges, best)
    evaluations += 1
    attempt = 0
    while evaluations < budget and (restarts is None or attempt <= restarts):
        current = start
        cost = _cost(edges, current)
        while evaluations < budget:
            move = None
            move_cost = cost
            for p in range(n):
                for q in range(p + 1, n):
                    current[p], current[q] = current[q], current[p]
                    c = _cost(edges, current)
                    evaluations += 1
                    current[p], current[q] = current[q], current[p]
                    if c < move_cost:
                        move, move_cost = (p, q), c
                    if evaluations >= budget:
                        break
                if evaluations >= budget:
                    break
            if move is None:
                break
            p, q = move
            current[p], current[q] = current[q], current[p]
            cost = move_cost
        if (cost, tuple(current)) < (best_cost, best):
            best, best_cost = tuple(current), cost
        if best_cost[0] == 0 or n < 2:
            break
        attempt += 1
        start = list(range(1, n + 1))
        rng.shuffle(start)

    schedule = schedule_from_graph(
        graph,
        best,
        provenance={"pass": "search", "budget": budget, "seed": seed, "evaluations": evaluations},
    )
    return best, schedule
