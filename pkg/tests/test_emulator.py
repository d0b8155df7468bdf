from fractions import Fraction

import pytest
from conftest import random_schedule

from tdfcluster.compiler import (
    Schedule,
    TdfBlock,
    compile_lattice_embedded,
    compile_naive,
)
from tdfcluster.emulator import (
    BlockConfig,
    Chirality,
    EventKind,
    default_blocks,
    emulate,
    format_trace,
    gate_multiset_matches,
    gate_sequence,
)
from tdfcluster.errors import DelayMismatch, MaskViolation
from tdfcluster.representation import FamilySpec, build_family
from tdfcluster.stabilizer import run_gates, run_schedule, states_equal


def of_kind(events, kind):
    return [e for e in events if e.kind is kind]


def test_linear4_counts():
    events = emulate(compile_naive(build_family(FamilySpec.parse("linear:4"))))
    assert len(of_kind(events, EventKind.EMIT)) == 4
    assert len(of_kind(events, EventKind.GATE)) == 3
    assert of_kind(events, EventKind.RETURN) == []
    assert [e.time for e in of_kind(events, EventKind.GATE)] == [2, 3, 4]


def test_tcs24_block_gate_times():
    s = compile_lattice_embedded(2, 4)
    gates = [e for e in of_kind(emulate(s), EventKind.GATE) if e.args[2] == 1]
    assert [e.time for e in gates] == [8, 15, 18, 21, 24, 31]
    assert [e.args[:2] for e in gates] == [(1, 8), (8, 15), (11, 18), (14, 21), (17, 24), (24, 31)]


def test_single_slot_empty_mask():
    s = Schedule(1, frozenset({1}), blocks=(TdfBlock(1),))
    events = emulate(s)
    assert [(e.time, e.kind) for e in events] == [
        (1, EventKind.EMIT), (1, EventKind.HANDOFF), (2, EventKind.RETURN), (2, EventKind.HANDOFF),
    ]


def test_delay_mismatch():
    s = Schedule(5, frozenset(range(1, 6)), blocks=(TdfBlock(2, frozenset({1})),))
    with pytest.raises(DelayMismatch):
        emulate(s, [BlockConfig(3)])
    with pytest.raises(DelayMismatch):
        BlockConfig(0)


def test_mask_violation():
    s = Schedule(3, frozenset({1, 2}), frozenset({2}))
    with pytest.raises(MaskViolation):
        emulate(s)


def test_return_precedes_emit_in_same_bin():
    s = Schedule(4, frozenset(range(1, 5)), frozenset({1, 2, 3}), (TdfBlock(2, frozenset({1, 2})),))
    events = emulate(s)
    for t in range(3, 5):
        kinds = [e.kind for e in events if e.time == t]
        assert kinds.index(EventKind.RETURN) < kinds.index(EventKind.EMIT)


def test_handoff_spacing_equals_delay():
    s = compile_naive(build_family(FamilySpec.parse("ccs:5")))
    events = emulate(s)
    # stage 0 is the emitter itself; each loop shifts the whole train rigidly
    for stage, offset in enumerate([0] + s.delays()):
        hand = [e for e in of_kind(events, EventKind.HANDOFF) if e.args[1] == stage]
        assert [e.args[0] for e in hand] == sorted(s.excitation_set)
        assert all(e.time - e.args[0] == offset for e in hand)


def test_times_are_exact():
    events = emulate(compile_lattice_embedded(2, 3))
    assert all(isinstance(e.time, Fraction) for e in events)
    assert events == sorted(events)


def test_default_chirality_alternates():
    s = compile_naive(build_family(FamilySpec.parse("ccs:4")))
    assert [b.chirality for b in default_blocks(s)] == [Chirality.SCATTER_LEFT, Chirality.SCATTER_RIGHT]


def test_random_schedules_reproduce_state(rng):
    for _ in range(100):
        s = random_schedule(rng, max_n=9)
        events = emulate(s)
        assert gate_multiset_matches(s, events)
        t = run_gates(s.excitation_set, s.n_slots, gate_sequence(events))
        assert states_equal(t, run_schedule(s))


def test_trace_format():
    s = Schedule(2, frozenset({1, 2}), frozenset({1}))
    assert format_trace(emulate(s)).splitlines() == [
        "t=1 kind=Emit args=1",
        "t=1 kind=HandOff args=1,0,1",
        "t=2 kind=Gate args=1,2,0",
        "t=2 kind=Emit args=2",
        "t=2 kind=HandOff args=2,0,1",
    ]
