import random

import pytest

from tdfcluster.compiler import (
    Schedule,
    TdfBlock,
    compile_layer_symmetric,
    compile_naive,
    layer_symmetric_numbering,
    minimize_delay_classes,
    schedule_from_graph,
)
from tdfcluster.errors import MaskViolation, ScheduleError
from tdfcluster.representation import (
    Family,
    FamilySpec,
    build_family,
    delay_classes,
    edge_delay_classes,
    to_distribution,
)


def family(text):
    return build_family(FamilySpec.parse(text))


class TestNaive:
    def test_tcs24_needs_seven_blocks(self):
        s = compile_naive(family("tcs:2,4"))
        assert s.delays() == [2, 3, 4, 5, 6, 7, 8]
        assert s.n_tdf == 7 and s.n_delay_classes == 8

    def test_linear_needs_none(self):
        s = compile_naive(family("linear:9"))
        assert s.blocks == () and len(s.native_chain_gates) == 8

    def test_ccs5(self):
        # delay classes {1,2,3,4} minus the native class
        assert compile_naive(family("ccs:5")).delays() == [2, 3, 4]

    @pytest.mark.parametrize("d", range(2, 8))
    def test_tcs2_exponential_count(self, d):
        assert compile_naive(family(f"tcs:2,{d}")).n_tdf == 2 ** (d - 1) - 1

    def test_edges_match_graph(self):
        g = family("tcs:3,3")
        assert compile_naive(g).edges() == g.edges


class TestLayerSymmetric:
    def test_binary_depth4(self):
        s = compile_layer_symmetric(2, 4)
        assert edge_delay_classes(s.edges()) == {1, 2, 4, 8}
        assert s.n_tdf == 3 and s.n_delay_classes == 4

    def test_single_node(self):
        s = compile_layer_symmetric(2, 1)
        assert s.excitation_set == {1} and s.gates() == []

    def test_ternary_depth3(self):
        expected = {(1 + r) * 3 ** (layer - 1) for layer in (1, 2) for r in range(3)}
        assert expected == {1, 2, 3, 6, 9}
        s = compile_layer_symmetric(3, 3)
        assert edge_delay_classes(s.edges()) == expected
        assert s.n_tdf == 4

    @pytest.mark.parametrize("d", range(2, 11))
    def test_binary_class_count_linear_in_depth(self, d):
        s = compile_layer_symmetric(2, d)
        assert s.n_delay_classes == d and s.n_tdf == d - 1

    @pytest.mark.parametrize("a,d", [(2, 5), (3, 4), (4, 3), (5, 3)])
    def test_within_published_bound(self, a, d):
        s = compile_layer_symmetric(a, d)
        assert s.n_delay_classes <= (d - 1) * (a - 1) + (a - 1) + 1
        assert s.n_delay_classes == (d - 1) * (a - 1) + 1

    @pytest.mark.parametrize("a,d", [(2, 4), (3, 3), (4, 3)])
    def test_numbering_is_a_relabelling(self, a, d):
        g = build_family(FamilySpec(Family.TCS, (a, d)))
        numbering = layer_symmetric_numbering(a, d)
        assert sorted(numbering) == list(range(1, g.n_slots + 1))
        assert compile_layer_symmetric(a, d).edges() == g.relabel(numbering).edges


class TestSchedule:
    def test_distinct_delays_enforced(self):
        with pytest.raises(ScheduleError):
            Schedule(5, frozenset(range(1, 6)), blocks=(TdfBlock(2), TdfBlock(2)))

    def test_gate_past_end(self):
        with pytest.raises(ScheduleError):
            Schedule(5, frozenset(range(1, 6)), blocks=(TdfBlock(3, frozenset({3})),))

    def test_vacuum_gate_detected_by_validate(self):
        s = Schedule(4, frozenset({1, 2}), frozenset({2}))
        with pytest.raises(MaskViolation):
            s.validate()

    def test_distribution_roundtrip(self):
        g = family("tcs:2,3")
        s = compile_naive(g)
        assert s.distribution() == to_distribution(g)


class TestSearch:
    def test_recovers_scrambled_chain(self):
        g = family("linear:8")
        perm = list(range(1, 9))
        random.Random(7).shuffle(perm)
        scrambled = g.relabel(perm)
        assert compile_naive(scrambled).n_tdf > 0
        _, s = minimize_delay_classes(scrambled, seed=0)
        assert s.n_tdf == 0

    def test_complete_graph_numbering_invariant(self):
        numbering, s = minimize_delay_classes(family("ccs:4"), budget=500)
        assert edge_delay_classes(s.edges()) == {1, 2, 3}

    def test_tree_meets_layer_bound(self):
        _, s = minimize_delay_classes(family("tcs:2,3"))
        assert s.n_tdf <= compile_layer_symmetric(2, 3).n_tdf == 2

    @pytest.mark.parametrize("text", ["tcs:2,4", "ccs:5", "lattice:3x3", "linear:6"])
    def test_never_worse_than_naive(self, text):
        g = family(text)
        numbering, s = minimize_delay_classes(g, budget=3000, seed=3)
        assert s.n_tdf <= compile_naive(g).n_tdf
        assert s.edges() == g.relabel(numbering).edges

    def test_deterministic(self):
        g = family("tcs:2,4")
        assert minimize_delay_classes(g, budget=4000, seed=11) == minimize_delay_classes(g, budget=4000, seed=11)

    def test_tiny_budget_returns_best_so_far(self):
        g = family("tcs:2,4")
        numbering, s = minimize_delay_classes(g, budget=1)
        assert numbering == tuple(range(1, 16)) and s.n_tdf == 7


def test_schedule_from_graph_groups_by_interval():
    g = family("ccs:4")
    s = schedule_from_graph(g)
    assert s.native_chain_gates == {1, 2, 3}
    assert [(b.delay, sorted(b.enabled_gates)) for b in s.blocks] == [(2, [1, 2]), (3, [1])]
    assert delay_classes(s.distribution()) == {1, 2, 3}
