"""Embedding a-ary trees into a-dimensional lattices of time-bin slots.

A lattice point ``x`` in ``Z^a`` is rasterized to the slot
``center + sum(x[k] * w**k)`` with ``w = 2d - 1``.  Every node of a depth-``d``
tree rooted at the origin lies within L1 distance ``d - 1``, so each coordinate
is a balanced base-``w`` digit and the raster is injective.  A unit step along
axis ``k`` is a slot interval of ``w**k``: axis 0 is the emitter's native
delay-1 class and each further axis costs one feedback loop.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
from dataclasses import dataclass

from ..errors import EmbeddingInfeasible, SpecError
from ..representation import Family, FamilySpec, build_family, tree_children, tree_size
from .schedule import Schedule, TdfBlock

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 200_000


def lattice_capacity(a: int, d: int) -> int:
    """Available lattice sites for a depth-``d`` tree: ``d**a + (d-1)**a``."""
    return d**a + (d - 1) ** a


def feasibility(a: int, d: int) -> int:
    """Exact ``F(a, d) = d**a + (d-1)**a - (a**d - 1)/(a - 1)``.

    Python integers are unbounded, so no overflow can occur for any input.
    """
    if int(a) != a or int(d) != d:
        raise SpecError("feasibility takes integer arguments")
    if a < 2 or d < 1:
        raise SpecError(f"feasibility needs a >= 2, d >= 1, got ({a}, {d})")
    return lattice_capacity(a, d) - tree_size(a, d)


def max_embeddable_depth(a: int) -> int:
    """Largest ``d`` with ``F(a, d) > 0``, scanning upward from ``d = 2``."""
    if a < 2:
        raise SpecError(f"branching factor must be >= 2, got {a}")
    d = 2
    while feasibility(a, d + 1) > 0:
        d += 1
    return d


@dataclass(frozen=True)
class EmbeddingResult:
    a: int
    d: int
    dims: tuple[int, ...]
    placement: dict[int, tuple[int, ...]]
    raster_width: int

    def slot_of(self, coord: tuple[int, ...]) -> int:
        return 1 + self.offset + sum(x * self.raster_width**k for k, x in enumerate(coord))

    @property
    def offset(self) -> int:
        # shifts raster so the lowest occupied slot is 1
        raw = [sum(x * self.raster_width**k for k, x in enumerate(c)) for c in self.placement.values()]
        return -min(raw)

    def slots(self) -> dict[int, int]:
        off = self.offset
        w = self.raster_width
        return {
            node: 1 + off + sum(x * w**k for k, x in enumerate(c))
            for node, c in self.placement.items()
        }

    @property
    def n_slots(self) -> int:
        return max(self.slots().values())

    def numbering(self) -> tuple[int, ...]:
        s = self.slots()
        return tuple(s[k] for k in range(1, len(s) + 1))


def _unit_steps(a: int) -> list[tuple[int, ...]]:
    steps = []
    for k in range(a):
        for sign in (1, -1):
            v = [0] * a
            v[k] = sign
            steps.append(tuple(v))
    return steps


def _preferences(a: int, incoming: tuple[int, ...] | None, depth: int, steps):
    """Candidate child directions, best first.

    Straight on first, then a turn whose handedness alternates with depth,
    which folds each level of the tree back toward the root (the compact
    H-tree-like layout).
    """
    if incoming is None:
        return steps
    back = tuple(-x for x in incoming)
    axis = next(k for k, x in enumerate(incoming) if x)
    sign = incoming[axis]
    turns = []
    for m in range(1, a):
        k = (axis + m) % a
        # rotation in the (axis, k) plane: counter-clockwise on even depths
        s = sign if axis + m < a else -sign
        if depth % 2:
            s = -s
        for t in (s, -s):
            v = [0] * a
            v[k] = t
            turns.append(tuple(v))
    ordered = [incoming] + turns
    assert back not in ordered and len(ordered) == 2 * a - 1
    return ordered


def embed_tree_in_lattice(a: int, d: int, budget: int = DEFAULT_BUDGET) -> EmbeddingResult:
    """Place the heap-ordered ``TCS(a, d)`` in ``Z^a`` with every edge a unit step.

    Depth-first backtracking over each internal node's choice of ``a``
    child directions, pruning any state in which a pending internal node has
    fewer than ``a`` free neighbours.  Raises :class:`EmbeddingInfeasible`
    with ``reason="capacity"`` when ``F(a, d) <= 0`` (a single node, where F
    is exactly 0, is always placed) and ``"exhausted"`` when
    ``budget`` search nodes are used up.
    """
    f = feasibility(a, d)
    if d == 1:
        return EmbeddingResult(a, d, (1,) * a, {1: (0,) * a}, 1)
    if f <= 0:
        raise EmbeddingInfeasible(
            f"F({a},{d}) = {f} <= 0: the lattice cannot hold TCS({a},{d})", reason="capacity"
        )
    n = tree_size(a, d)
    w = 2 * d - 1
    steps = _unit_steps(a)
    weights = [w**k for k in range(a)]

    def key(c):
        return sum(x * wk for x, wk in zip(c, weights))

    origin = (0,) * a
    pos: dict[int, tuple[int, ...]] = {1: origin}
    used: set[int] = {0}
    incoming: dict[int, tuple[int, ...] | None] = {1: None}
    depth = {1: 1}

    internal: list[int] = []

    def collect(k: int, level: int) -> None:
        if level == d:
            return
        internal.append(k)
        for c in tree_children(k, a, n):
            collect(c, level + 1)

    collect(1, 1)
    visits = 0

    def free_neighbours(c) -> int:
        base = key(c)
        return sum(1 for wk in weights for s in (wk, -wk) if base + s not in used)

    def place(idx: int) -> bool:
        nonlocal visits
        visits += 1
        if visits > budget:
            raise EmbeddingInfeasible(
                f"embedding search for TCS({a},{d}) exhausted its budget of {budget} nodes",
                reason="exhausted",
            )
        if idx == len(internal):
            return True
        k = internal[idx]
        p = pos[k]
        kids = list(tree_children(k, a, n))
        for combo in itertools.combinations(_preferences(a, incoming[k], depth[k], steps), a):
            cells = [tuple(x + y for x, y in zip(p, v)) for v in combo]
            keys = [key(c) for c in cells]
            if any(kc in used for kc in keys):
                continue
            for c, kc, v, ch in zip(cells, keys, combo, kids):
                pos[ch] = c
                used.add(kc)
                incoming[ch] = v
                depth[ch] = depth[k] + 1
            pending = (q for q in internal[idx + 1 :] if q in pos)
            if all(free_neighbours(pos[q]) >= a for q in pending) and place(idx + 1):
                return True
            for kc, ch in zip(keys, kids):
                del pos[ch]
                used.discard(kc)
        return False

    if not place(0):
        raise EmbeddingInfeasible(
            f"no unit-step embedding of TCS({a},{d}) exists in Z^{a}", reason="exhausted"
        )
    log.debug("embedded TCS(%d,%d) after %d search nodes", a, d, visits)
    return EmbeddingResult(a, d, (w,) * a, dict(sorted(pos.items())), w)


def compile_lattice_embedded(a: int, d: int, budget: int = DEFAULT_BUDGET) -> Schedule:
    """Schedule a tree through its lattice embedding: ``a - 1`` feedback blocks.

    Axis 0 steps are native chain gates; axis ``k`` gets a block with delay
    ``w**k`` even if the embedding happens not to use it.  Only true tree
    edges are enabled, so lattice neighbours without a tree edge stay masked
    off.
    """
    emb = embed_tree_in_lattice(a, d, budget)
    tree = build_family(FamilySpec(Family.TCS, (a, d)))
    slots = emb.slots()
    w = emb.raster_width
    native: set[int] = set()
    masks: dict[int, set[int]] = {w**k: set() for k in range(1, a)} if d > 1 else {}
    for i, j in tree.edges:
        lo, hi = sorted((slots[i], slots[j]))
        if hi - lo == 1:
            native.add(lo)
        else:
            masks[hi - lo].add(lo)
    return Schedule(
        emb.n_slots,
        frozenset(slots.values()),
        frozenset(native),
        tuple(TdfBlock(delay, frozenset(g)) for delay, g in sorted(masks.items())),
        emb.numbering(),
        {"pass": "lattice", "a": a, "d": d, "raster_width": w},
    ).validate()


# Excitations and gate index sets of the published TCS(2,4) generation sequence.
PUBLISHED_TCS24_EXCITED = frozenset({1, 7, 8, 11, 13, 14, 15, 16, 17, 18, 19, 21, 24, 25, 31})
PUBLISHED_TCS24_DELAY1 = frozenset({7, 13, 14, 15, 16, 17, 18, 24})
PUBLISHED_TCS24_DELAY7 = frozenset({1, 8, 11, 14, 17, 24})


def published_tcs24_schedule() -> Schedule:
    """The published single-feedback TCS(2,4) schedule, with its heap numbering recovered."""
    from ..representation import ClusterGraph, tree_numbering

    sched = Schedule(
        31,
        PUBLISHED_TCS24_EXCITED,
        PUBLISHED_TCS24_DELAY1,
        (TdfBlock(7, PUBLISHED_TCS24_DELAY7),),
        provenance={"pass": "reference", "a": 2, "d": 4},
    ).validate()
    graph = ClusterGraph(31, sched.excitation_set, sched.edges())
    return dataclasses.replace(sched, numbering=tree_numbering(graph, 2, 4))
