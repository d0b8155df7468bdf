"""Graph and distribution-matrix views of photonic cluster states.

Slots (time bins) are numbered from 1.  A slot that is not excited is a
*virtual* node: it is an available time bin deliberately left in vacuum.

The distribution matrix ``D`` is an upper-triangular 0/1 matrix whose diagonal
marks excited slots and whose entry ``D[i, j]`` (``i < j``) marks a CZ between
slots ``i`` and ``j``.  The super-diagonal ``j - i`` of an edge is its *delay
class*; every occupied class needs its own feedback loop, except class 1 which
the emitter produces natively.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from math import prod

import numpy as np

from .errors import EntangleUnexcited, IndexOutOfRange, InvalidPermutation, SpecError

Edge = tuple[int, int]


def _edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class ClusterGraph:
    """Target entanglement structure on ``n_slots`` time bins."""

    n_slots: int
    excited: frozenset[int]
    edges: frozenset[Edge]

    def __init__(self, n_slots: int, excited: Iterable[int], edges: Iterable[Sequence[int]] = ()):
        if int(n_slots) != n_slots or n_slots < 0:
            raise SpecError(f"n_slots must be a non-negative integer, got {n_slots!r}")
        exc = frozenset(int(i) for i in excited)
        for i in exc:
            if not 1 <= i <= n_slots:
                raise IndexOutOfRange(f"excited slot {i} outside [1, {n_slots}]")
        es: set[Edge] = set()
        for e in edges:
            if len(e) != 2:
                raise SpecError(f"edge {e!r} does not have two endpoints")
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise SpecError(f"self-loop on slot {i}")
            for k in (i, j):
                if not 1 <= k <= n_slots:
                    raise IndexOutOfRange(f"edge endpoint {k} outside [1, {n_slots}]")
                if k not in exc:
                    raise SpecError(f"edge ({i}, {j}) touches unexcited slot {k}")
            pair = _edge(i, j)
            if pair in es:
                raise SpecError(f"duplicate edge {pair}")
            es.add(pair)
        object.__setattr__(self, "n_slots", int(n_slots))
        object.__setattr__(self, "excited", exc)
        object.__setattr__(self, "edges", frozenset(es))

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in e)

    def degrees(self) -> dict[int, int]:
        deg = {i: 0 for i in self.excited}
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {i: set() for i in self.excited}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def is_connected(self) -> bool:
        if not self.excited:
            return True
        adj = self.adjacency()
        start = min(self.excited)
        seen = {start}
        stack = [start]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.excited)

    def relabel(self, numbering: Sequence[int], n_slots: int | None = None) -> ClusterGraph:
        """Move slot ``i`` to ``numbering[i - 1]``.

        With ``n_slots`` omitted the numbering must be a permutation of
        ``1..self.n_slots``; otherwise it may be any injection into
        ``1..n_slots`` (used when virtual slots are inserted).
        """
        target = self.n_slots if n_slots is None else n_slots
        check_numbering(numbering, self.n_slots, target)
        return ClusterGraph(
            target,
            (numbering[i - 1] for i in self.excited),
            ((numbering[i - 1], numbering[j - 1]) for i, j in self.edges),
        )


def check_numbering(numbering: Sequence[int], n_from: int, n_to: int | None = None) -> None:
    n_to = n_from if n_to is None else n_to
    if len(numbering) != n_from:
        raise InvalidPermutation(f"numbering has {len(numbering)} entries, expected {n_from}")
    if len(set(numbering)) != len(numbering):
        raise InvalidPermutation("numbering is not injective")
    if any(not 1 <= int(v) <= n_to for v in numbering):
        raise InvalidPermutation(f"numbering maps outside [1, {n_to}]")
    if n_to == n_from and sorted(numbering) != list(range(1, n_from + 1)):
        raise InvalidPermutation("numbering is not a permutation")


@dataclass(frozen=True, eq=False)
class DistributionMatrix:
    """Upper-triangular bit matrix; stored 0-indexed, addressed 1-indexed."""

    bits: np.ndarray

    def __post_init__(self):
        b = np.array(self.bits, dtype=np.uint8)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise SpecError(f"distribution matrix must be square, got shape {b.shape}")
        if np.any(b > 1):
            raise SpecError("distribution matrix entries must be 0 or 1")
        if np.any(np.tril(b, -1)):
            raise SpecError("distribution matrix has entries below the diagonal")
        diag = np.diag(b)
        rows, cols = np.nonzero(np.triu(b, 1))
        if np.any(diag[rows] == 0) or np.any(diag[cols] == 0):
            raise EntangleUnexcited("off-diagonal entry between unexcited slots")
        b.setflags(write=False)
        object.__setattr__(self, "bits", b)

    @property
    def n(self) -> int:
        return self.bits.shape[0]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return int(self.bits[i - 1, j - 1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DistributionMatrix):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash((self.n, self.bits.tobytes()))

    @classmethod
    def zeros(cls, n: int) -> DistributionMatrix:
        return cls(np.zeros((n, n), dtype=np.uint8))

    def excited(self) -> frozenset[int]:
        return frozenset(int(i) + 1 for i in np.nonzero(np.diag(self.bits))[0])

    def edges(self) -> frozenset[Edge]:
        rows, cols = np.nonzero(np.triu(self.bits, 1))
        return frozenset((int(i) + 1, int(j) + 1) for i, j in zip(rows, cols))

    def to_graph(self) -> ClusterGraph:
        return ClusterGraph(self.n, self.excited(), self.edges())

    def block_form(self) -> list[list[str]]:
        """Kets of the 2N x N block presentation, one string per cell ('' below the diagonal)."""
        return [
            ["" if j < i else ("|1>" if self.bits[i, j] else "|0>") for j in range(self.n)]
            for i in range(self.n)
        ]


class OpKind(Enum):
    EXCITE = "excite"
    ENTANGLE = "entangle"


@dataclass(frozen=True)
class GenOp:
    """Excite slot ``target``, or entangle ``target`` with ``target + delay``."""

    kind: OpKind
    target: int
    delay: int | None = None

    def __post_init__(self):
        if self.kind is OpKind.ENTANGLE and (self.delay is None or self.delay < 1):
            raise SpecError(f"entangle op needs a positive delay, got {self.delay!r}")
        if self.kind is OpKind.EXCITE and self.delay is not None:
            raise SpecError("excite op takes no delay")


def excite(i: int) -> GenOp:
    return GenOp(OpKind.EXCITE, i)


def entangle(i: int, delay: int) -> GenOp:
    return GenOp(OpKind.ENTANGLE, i, delay)


def apply_ops(ops: Iterable[GenOp], n_slots: int) -> DistributionMatrix:
    """Apply generation operators in order to the all-zero matrix."""
    bits = np.zeros((n_slots, n_slots), dtype=np.uint8)
    for op in ops:
        i = op.target
        if not 1 <= i <= n_slots:
            raise IndexOutOfRange(f"{op} targets slot outside [1, {n_slots}]")
        if op.kind is OpKind.EXCITE:
            bits[i - 1, i - 1] = 1
            continue
        j = i + op.delay
        if j > n_slots:
            raise IndexOutOfRange(f"{op} reaches slot {j} > {n_slots}")
        if not (bits[i - 1, i - 1] and bits[j - 1, j - 1]):
            raise EntangleUnexcited(f"entangling ({i}, {j}) before both slots are excited")
        bits[i - 1, j - 1] ^= 1
    return DistributionMatrix(bits)


class Family(Enum):
    LINEAR = "linear"
    CCS = "ccs"
    TCS = "tcs"
    LATTICE = "lattice"


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    params: tuple[int, ...] = field(default=())

    def __post_init__(self):
        p = self.params
        if self.family in (Family.LINEAR, Family.CCS):
            if len(p) != 1 or p[0] < 1:
                raise SpecError(f"{self.family.value} needs one parameter N >= 1, got {p}")
        elif self.family is Family.TCS:
            if len(p) != 2 or p[0] < 2 or p[1] < 1:
                raise SpecError(f"tcs needs (a >= 2, d >= 1), got {p}")
        elif not p or any(x < 1 for x in p):
            raise SpecError(f"lattice extents must all be >= 1, got {p}")

    @classmethod
    def parse(cls, text: str) -> FamilySpec:
        """Parse ``linear:5``, ``ccs:5``, ``tcs:2,4`` or ``lattice:3x4``."""
        name, _, rest = text.strip().partition(":")
        try:
            family = Family(name.strip().lower())
        except ValueError:
            raise SpecError(f"unknown family {name!r}") from None
        parts = [s for s in rest.replace("x", ",").split(",") if s.strip()]
        try:
            params = tuple(int(s) for s in parts)
        except ValueError:
            raise SpecError(f"bad parameters in family spec {text!r}") from None
        return cls(family, params)

    def __str__(self) -> str:
        sep = "x" if self.family is Family.LATTICE else ","
        return f"{self.family.value}:{sep.join(map(str, self.params))}"


def tree_size(a: int, d: int) -> int:
    return (a**d - 1) // (a - 1)


def tree_children(k: int, a: int, n: int) -> range:
    """Heap-order children of node ``k`` in an a-ary tree with ``n`` nodes."""
    first = a * (k - 1) + 2
    return range(first, min(a * k + 1, n) + 1)


def build_family(spec: FamilySpec) -> ClusterGraph:
    f, p = spec.family, spec.params
    if f is Family.LINEAR:
        n = p[0]
        return ClusterGraph(n, range(1, n + 1), ((i, i + 1) for i in range(1, n)))
    if f is Family.CCS:
        n = p[0]
        return ClusterGraph(n, range(1, n + 1), itertools.combinations(range(1, n + 1), 2))
    if f is Family.TCS:
        a, d = p
        n = tree_size(a, d)
        edges = [(k, c) for k in range(1, n + 1) for c in tree_children(k, a, n)]
        return ClusterGraph(n, range(1, n + 1), edges)
    # row-major, last axis fastest
    dims = p
    n = prod(dims)
    strides = [prod(dims[k + 1 :]) for k in range(len(dims))]
    edges = []
    for coord in itertools.product(*(range(e) for e in dims)):
        idx = 1 + sum(c * s for c, s in zip(coord, strides))
        for k, e in enumerate(dims):
            if coord[k] + 1 < e:
                edges.append((idx, idx + strides[k]))
    return ClusterGraph(n, range(1, n + 1), edges)


def to_distribution(graph: ClusterGraph, numbering: Sequence[int] | None = None) -> DistributionMatrix:
    """Distribution matrix of ``graph`` after moving slot ``i`` to ``numbering[i-1]``."""
    n = graph.n_slots
    if numbering is None:
        numbering = range(1, n + 1)
    check_numbering(numbering, n)
    bits = np.zeros((n, n), dtype=np.uint8)
    for i in graph.excited:
        p = numbering[i - 1] - 1
        bits[p, p] = 1
    for i, j in graph.edges:
        p, q = sorted((numbering[i - 1] - 1, numbering[j - 1] - 1))
        bits[p, q] = 1
    return DistributionMatrix(bits)


def delay_classes(D: DistributionMatrix) -> set[int]:
    rows, cols = np.nonzero(np.triu(D.bits, 1))
    return {int(c - r) for r, c in zip(rows, cols)}


def edge_delay_classes(edges: Iterable[Edge]) -> set[int]:
    return {abs(j - i) for i, j in edges}


def gate_counts(D: DistributionMatrix) -> tuple[int, int]:
    """(N_H, N_CZ): trace, and entrywise sum minus trace."""
    trace = int(np.trace(D.bits))
    return trace, int(D.bits.sum(dtype=np.int64)) - trace


def tree_numbering(graph: ClusterGraph, a: int, d: int) -> tuple[int, ...]:
    """Slots of heap nodes ``1..n`` for a graph isomorphic to ``TCS(a, d)``.

    The root is the unique node of degree ``a`` (or the lone node when
    ``d == 1``); children are taken in ascending slot order.  Raises
    :class:`SpecError` if the graph is not an a-ary tree of depth ``d``.
    """
    n = tree_size(a, d)
    if len(graph.excited) != n or len(graph.edges) != n - 1:
        raise SpecError(f"graph does not have the size of TCS({a},{d})")
    adj = graph.adjacency()
    if d == 1:
        roots = list(graph.excited)
    else:
        roots = [v for v, nb in adj.items() if len(nb) == a]
    if len(roots) != 1:
        raise SpecError(f"expected one root of degree {a}, found {len(roots)}")
    slots = [roots[0]]
    parent = {roots[0]: None}
    for k in range(1, n + 1):
        v = slots[k - 1]
        kids = sorted(u for u in adj[v] if u != parent[v])
        expected = len(tree_children(k, a, n))
        if len(kids) != expected or any(u in parent for u in kids):
            raise SpecError(f"graph is not TCS({a},{d}) around slot {v}")
        for u in kids:
            parent[u] = v
            slots.append(u)
    return tuple(slots)
