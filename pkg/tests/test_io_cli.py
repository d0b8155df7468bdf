import json

import pytest
from conftest import random_schedule
from hypothesis import given, settings
from hypothesis import strategies as st

from tdfcluster import io
from tdfcluster.cli import main
from tdfcluster.compiler import (
    Schedule,
    compile_lattice_embedded,
    compile_layer_symmetric,
    published_tcs24_schedule,
)
from tdfcluster.errors import SpecError, TdfError
from tdfcluster.representation import (
    ClusterGraph,
    FamilySpec,
    build_family,
    to_distribution,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestScheduleIO:
    @pytest.mark.parametrize("make", [lambda: compile_lattice_embedded(2, 4), lambda: compile_layer_symmetric(3, 3),
                                      published_tcs24_schedule])
    def test_roundtrip(self, make):
        s = make()
        text = io.dumps_schedule(s)
        back = io.loads_schedule(text)
        assert back == s
        assert io.dumps_schedule(back) == text

    def test_random_roundtrip(self, rng):
        for _ in range(50):
            s = random_schedule(rng)
            assert io.loads_schedule(io.dumps_schedule(s)) == s

    @pytest.mark.parametrize("text", ["[]", "{", '{"n_slots": 2}', '{"n_slots": "x", "excitation_set": []}'])
    def test_malformed(self, text):
        with pytest.raises(SpecError):
            io.loads_schedule(text)

    def test_atomic_write(self, tmp_path):
        io.write_atomic(tmp_path / "sub" / "a.txt", "hello\n")
        assert (tmp_path / "sub" / "a.txt").read_text() == "hello\n"
        assert [p.name for p in (tmp_path / "sub").iterdir()] == ["a.txt"]


class TestGraphIO:
    def test_family_document(self, tmp_path):
        path = tmp_path / "g.yaml"
        path.write_text("family: tcs\nparams: [2, 3]\n")
        assert io.load_graph(path) == build_family(FamilySpec.parse("tcs:2,3"))

    def test_explicit_document(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(json.dumps({"n_slots": 4, "excited": [1, 2, 4], "edges": [[1, 4], [2, 4]]}))
        assert io.load_graph(path) == ClusterGraph(4, [1, 2, 4], [(1, 4), (2, 4)])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 8), st.data())
    def test_document_roundtrip(self, n, data):
        excited = data.draw(st.sets(st.integers(1, n)))
        pairs = [(i, j) for i in sorted(excited) for j in sorted(excited) if i < j]
        edges = data.draw(st.sets(st.sampled_from(pairs))) if pairs else set()
        g = ClusterGraph(n, excited, edges)
        assert io.graph_from_document(io.graph_to_document(g)) == g

    @pytest.mark.parametrize("text", ["- 1\n- 2\n", "n_slots: 2\nexcited: [3]\n", "family: tcs\nparams: [1, 2]\n", ": :"])
    def test_bad_documents(self, tmp_path, text):
        path = tmp_path / "g.yaml"
        path.write_text(text)
        with pytest.raises(TdfError):
            io.load_graph(path)

    def test_matrix_csv(self):
        D = to_distribution(build_family(FamilySpec.parse("linear:3")))
        assert io.matrix_csv(D) == "1,1,0\n0,1,1\n0,0,1\n"

    def test_dot(self):
        text = io.graph_dot(ClusterGraph(3, [1, 3], [(1, 3)]))
        assert "2 [style=dashed];" in text and '1 -- 3 [label="2"];' in text


class TestCli:
    def test_generate_writes_artifacts(self, tmp_path, capsys):
        code, out, _ = run(capsys, "generate", "--family", "tcs:2,4", "--pass", "lattice", "--out", str(tmp_path))
        assert code == 0 and "blocks=1" in out
        assert sorted(p.name for p in tmp_path.iterdir()) == ["graph.dot", "matrix.csv", "schedule.json"]
        assert io.load_schedule(tmp_path / "schedule.json") == compile_lattice_embedded(2, 4)

    @pytest.mark.parametrize("fmt,needle", [("text", '"format"'), ("csv", "1,"), ("dot", "graph cluster")])
    def test_generate_formats(self, capsys, fmt, needle):
        code, out, _ = run(capsys, "generate", "--family", "linear:4", "--format", fmt)
        assert code == 0 and needle in out

    def test_generate_deterministic(self, capsys):
        argv = ("optimize", "--family", "tcs:2,4", "--budget", "2000", "--seed", "5")
        assert run(capsys, *argv) == run(capsys, *argv)

    def test_verify_golden_and_mutated(self, tmp_path, capsys):
        path = tmp_path / "golden.json"
        path.write_text(io.dumps_schedule(published_tcs24_schedule()))
        code, out, _ = run(capsys, "verify", "--schedule", str(path), "--family", "tcs:2,4")
        assert code == 0 and "verdict: PASS" in out

        doc = json.loads(path.read_text())
        doc["blocks"][0]["enabled_gates"].remove(11)
        bad = tmp_path / "mutated.json"
        bad.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", "--schedule", str(bad), "--family", "tcs:2,4")
        assert code == 1
        assert "missing: 11-18" in out and "extra:   -" in out

    def test_verify_empty(self, tmp_path, capsys):
        sched = tmp_path / "s.json"
        sched.write_text(io.dumps_schedule(Schedule(3, frozenset())))
        graph = tmp_path / "g.yaml"
        graph.write_text("n_slots: 3\n")
        assert run(capsys, "verify", "--schedule", str(sched), "--graph", str(graph))[0] == 0

    @pytest.mark.parametrize("argv", [
        ["generate"],
        ["generate", "--family", "tcs:1,2"],
        ["generate", "--family", "linear:4", "--pass", "layer"],
        ["frobnicate"],
        ["verify", "--schedule", "/nonexistent/file.json", "--family", "linear:3"],
        ["fidelity", "--family", "linear:3", "--fs", "1.5"],
    ])
    def test_input_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and err

    def test_infeasible(self, capsys):
        code, _, err = run(capsys, "generate", "--family", "tcs:2,6", "--pass", "lattice")
        assert code == 3 and "F(2,6) = -2" in err

    def test_emulate(self, tmp_path, capsys):
        path = tmp_path / "s.json"
        path.write_text(io.dumps_schedule(compile_lattice_embedded(2, 4)))
        code, out, _ = run(capsys, "emulate", "--schedule", str(path))
        assert code == 0
        gates = [ln for ln in out.splitlines() if "kind=Gate" in ln]
        assert len(gates) == 14

    def test_fidelity_csv(self, capsys):
        code, out, _ = run(capsys, "fidelity", "--family", "tcs:2,3", "--pass", "lattice", "--format", "csv")
        n_h, n_cz, n_damp, f_c = out.splitlines()[1].split(",")
        assert code == 0 and (n_h, n_cz, n_damp) == ("7", "6", "0")
        assert float(f_c) == pytest.approx(0.9694, abs=5e-4)

    def test_fidelity_text_includes_oracle(self, capsys):
        code, out, _ = run(capsys, "fidelity", "--family", "linear:3", "--gamma", "0.05")
        assert code == 0 and "oracle_exact_single_pass" in out

    def test_table2_defaults(self, capsys):
        code, out, _ = run(capsys, "table2")
        rows = {(r.split(",")[0], r.split(",")[1]): float(r.split(",")[3]) for r in out.splitlines()[1:]}
        assert code == 0
        assert rows[("tcs_initial", "15")] == pytest.approx(0.1512, abs=1e-3)
        assert rows[("ccs", "31")] == pytest.approx(1.947e-9, rel=1e-2)

    def test_table2_perfect_gates(self, capsys):
        _, out, _ = run(capsys, "table2", "--fs", "1", "--ft", "1", "--damping-factor", "1")
        assert all(float(r.split(",")[3]) == 1.0 for r in out.splitlines()[1:])

    def test_table2_optimized_ignores_damping(self, capsys, tmp_path):
        def optimized(*extra):
            _, out, _ = run(capsys, "table2", *extra)
            return [r for r in out.splitlines() if r.startswith("tcs_optimized")]

        assert optimized() == optimized("--damping-factor", "0.5") == optimized("--gamma", "0.3")
        run(capsys, "table2", "--out", str(tmp_path))
        assert (tmp_path / "table2.csv").read_text().startswith("state,N,n_tdf,f_c\n")
