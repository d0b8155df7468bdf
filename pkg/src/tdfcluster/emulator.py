"""Discrete-event timeline of emissions, feedback returns, and gates.

Times are exact rationals in units of the emission period.  A photon that
returns from a feedback loop arrives "just before" an emission at the same
nominal time; instead of a real-valued offset this is encoded in the event
ordering ``Return < Gate < Emit < HandOff`` at equal times.  Stage 0 is the
emitter itself (native delay-1 gates); stages ``1..K`` are the schedule's
feedback blocks in pipeline order.
"""

from __future__ import annotations

import heapq
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from fractions import Fraction

from .compiler.schedule import Schedule
from .errors import DelayMismatch, MaskViolation
from .representation import Edge


class Chirality(Enum):
    SCATTER_LEFT = "left"
    SCATTER_RIGHT = "right"


@dataclass(frozen=True)
class BlockConfig:
    """Physical feedback loop; ``chirality`` is carried for traces only."""

    delay: int
    chirality: Chirality = Chirality.SCATTER_LEFT

    def __post_init__(self):
        if self.delay < 1:
            raise DelayMismatch(f"block delay must be >= 1, got {self.delay}")


class EventKind(IntEnum):
    RETURN = 0
    GATE = 1
    EMIT = 2
    HANDOFF = 3

    @property
    def label(self) -> str:
        return ("Return", "Gate", "Emit", "HandOff")[self]


@dataclass(frozen=True, order=True)
class TimelineEvent:
    time: Fraction
    kind: EventKind
    args: tuple[int, ...] = field(default=())

    def __str__(self) -> str:
        return f"t={self.time} kind={self.kind.label} args={','.join(map(str, self.args))}"


def default_blocks(s: Schedule) -> list[BlockConfig]:
    """Blocks alternate chirality, as consecutive emitters sit on opposite sides."""
    sides = (Chirality.SCATTER_LEFT, Chirality.SCATTER_RIGHT)
    return [BlockConfig(b.delay, sides[k % 2]) for k, b in enumerate(s.blocks)]


def emulate(s: Schedule, blocks: Sequence[BlockConfig] | None = None) -> list[TimelineEvent]:
    """Event timeline for ``s``; event args are documented per kind.

    * ``Emit(slot)`` at ``t = slot`` for excited slots only;
    * ``Gate(i, j, stage)``: native gates at ``t = j`` (emission of the
      later photon), block gates at the return time of photon ``i``;
    * ``Return(slot, stage)`` at ``t = slot + delay``;
    * ``HandOff(slot, from_stage, to_stage)`` after each stage; the last
      hand-off goes to stage ``K + 1``, the output.
    """
    blocks = default_blocks(s) if blocks is None else list(blocks)
    if [b.delay for b in blocks] != s.delays():
        raise DelayMismatch(f"block configs {[b.delay for b in blocks]} do not match schedule {s.delays()}")
    exc = s.excitation_set
    for i, j in s.gates():
        for k in (i, j):
            if k not in exc:
                raise MaskViolation(f"gate ({i}, {j}) is enabled on vacuum slot {k}")

    queue: list[TimelineEvent] = []

    def push(t: int | Fraction, kind: EventKind, *args: int) -> None:
        heapq.heappush(queue, TimelineEvent(Fraction(t), kind, tuple(args)))

    for i in sorted(exc):
        push(i, EventKind.EMIT, i)
        if i - 1 in s.native_chain_gates:
            push(i, EventKind.GATE, i - 1, i, 0)
        push(i, EventKind.HANDOFF, i, 0, 1)
    for stage, (sb, cfg) in enumerate(zip(s.blocks, blocks), start=1):
        for i in sorted(exc):
            t = i + cfg.delay
            push(t, EventKind.RETURN, i, stage)
            if i in sb.enabled_gates:
                push(t, EventKind.GATE, i, i + cfg.delay, stage)
            push(t, EventKind.HANDOFF, i, stage, stage + 1)
    return [heapq.heappop(queue) for _ in range(len(queue))]


def gate_sequence(events: Sequence[TimelineEvent]) -> list[Edge]:
    return [(e.args[0], e.args[1]) for e in events if e.kind is EventKind.GATE]


def gate_multiset_matches(s: Schedule, events: Sequence[TimelineEvent]) -> bool:
    return Counter(gate_sequence(events)) == Counter(s.gates())


def format_trace(events: Sequence[TimelineEvent]) -> str:
    return "".join(f"{e}\n" for e in events)
