"""Generation schedules: excitations, native chain gates, and feedback blocks."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..errors import MaskViolation, ScheduleError
from ..representation import ClusterGraph, DistributionMatrix, Edge, check_numbering

EMISSION_PERIOD = 1


@dataclass(frozen=True)
class TdfBlock:
    """One feedback loop: CZ between ``i`` and ``i + delay`` for each enabled ``i``."""

    delay: int
    enabled_gates: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.delay < 1:
            raise ScheduleError(f"block delay must be positive, got {self.delay}")
        object.__setattr__(self, "enabled_gates", frozenset(int(i) for i in self.enabled_gates))

    def gates(self) -> list[Edge]:
        return [(i, i + self.delay) for i in sorted(self.enabled_gates)]


@dataclass(frozen=True)
class Schedule:
    """A complete generation recipe on ``n_slots`` time bins.

    ``numbering[k - 1]`` is the slot that node ``k`` of the source graph
    occupies; it is ``None`` for schedules not tied to a source graph.
    Structural invariants (ranges, distinct delays) are enforced on
    construction; :meth:`validate` additionally rejects gates touching
    vacuum slots.
    """

    n_slots: int
    excitation_set: frozenset[int]
    native_chain_gates: frozenset[int] = frozenset()
    blocks: tuple[TdfBlock, ...] = ()
    numbering: tuple[int, ...] | None = None
    provenance: Mapping[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = self.n_slots
        exc = frozenset(int(i) for i in self.excitation_set)
        native = frozenset(int(i) for i in self.native_chain_gates)
        blocks = tuple(self.blocks)
        if any(not 1 <= i <= n for i in exc):
            raise ScheduleError(f"excitation outside [1, {n}]")
        if any(not 1 <= i < n for i in native):
            raise ScheduleError(f"native chain gate outside [1, {n - 1}]")
        delays = [b.delay for b in blocks]
        if len(set(delays)) != len(delays):
            raise ScheduleError(f"block delays are not distinct: {delays}")
        for b in blocks:
            if any(not 1 <= i or i + b.delay > n for i in b.enabled_gates):
                raise ScheduleError(f"block with delay {b.delay} has a gate past slot {n}")
        object.__setattr__(self, "excitation_set", exc)
        object.__setattr__(self, "native_chain_gates", native)
        object.__setattr__(self, "blocks", blocks)
        if self.numbering is not None:
            object.__setattr__(self, "numbering", tuple(int(v) for v in self.numbering))
        object.__setattr__(self, "provenance", dict(self.provenance))

    def validate(self) -> Schedule:
        for i, j in self.gates():
            for k in (i, j):
                if k not in self.excitation_set:
                    raise MaskViolation(f"gate ({i}, {j}) touches vacuum slot {k}")
        if self.numbering is not None:
            check_numbering(self.numbering, len(self.numbering), self.n_slots)
        return self

    def gates(self) -> list[Edge]:
        """All CZ gates: native ones first, then each block in order, ascending slots."""
        out = [(i, i + 1) for i in sorted(self.native_chain_gates)]
        for b in self.blocks:
            out.extend(b.gates())
        return out

    def edges(self) -> frozenset[Edge]:
        """Edge set realized by the schedule (gates applied twice cancel)."""
        es: set[Edge] = set()
        for e in self.gates():
            es ^= {e}
        return frozenset(es)

    @property
    def n_tdf(self) -> int:
        """Feedback loops beyond the emitter's native delay-1 class."""
        return len(self.blocks)

    @property
    def n_delay_classes(self) -> int:
        """Occupied delay classes, counting the native class when it is used."""
        return len(self.blocks) + (1 if self.native_chain_gates else 0)

    def delays(self) -> list[int]:
        return [b.delay for b in self.blocks]

    def to_graph(self) -> ClusterGraph:
        return ClusterGraph(self.n_slots, self.excitation_set, self.edges())

    def distribution(self) -> DistributionMatrix:
        n = self.n_slots
        bits = np.zeros((n, n), dtype=np.uint8)
        for i in self.excitation_set:
            bits[i - 1, i - 1] = 1
        for i, j in self.edges():
            bits[i - 1, j - 1] = 1
        return DistributionMatrix(bits)

    def target_graph(self, graph: ClusterGraph) -> ClusterGraph:
        """``graph`` moved into slot space by this schedule's numbering."""
        if self.numbering is None:
            if graph.n_slots != self.n_slots:
                raise ScheduleError("schedule has no numbering and slot counts differ")
            return graph
        return graph.relabel(self.numbering, self.n_slots)


def schedule_from_edges(
    n_slots: int,
    excited: Iterable[int],
    edges: Iterable[Edge],
    *,
    numbering: Sequence[int] | None = None,
    provenance: Mapping[str, Any] | None = None,
    native: bool = True,
) -> Schedule:
    """Group edges by index interval: interval 1 goes native, others one block each.

    Blocks are ordered by ascending delay.  With ``native=False`` the
    interval-1 edges get a block of their own.
    """
    native_gates: set[int] = set()
    by_delay: dict[int, set[int]] = {}
    for e in edges:
        i, j = sorted(e)
        if native and j - i == 1:
            native_gates.add(i)
        else:
            by_delay.setdefault(j - i, set()).add(i)
    blocks = tuple(TdfBlock(dl, frozenset(gs)) for dl, gs in sorted(by_delay.items()))
    return Schedule(
        n_slots,
        frozenset(excited),
        frozenset(native_gates),
        blocks,
        None if numbering is None else tuple(numbering),
        dict(provenance or {}),
    ).validate()


def schedule_from_graph(
    graph: ClusterGraph,
    numbering: Sequence[int] | None = None,
    *,
    n_slots: int | None = None,
    provenance: Mapping[str, Any] | None = None,
) -> Schedule:
    placed = graph if numbering is None else graph.relabel(numbering, n_slots)
    return schedule_from_edges(
        placed.n_slots, placed.excited, placed.edges, numbering=numbering, provenance=provenance
    )
