"""Verification reports and the TCS/CCS fidelity comparison table."""

from __future__ import annotations

from dataclasses import dataclass

from .compiler import compile_lattice_embedded
from .compiler.schedule import Schedule
from .emulator import emulate, gate_multiset_matches, gate_sequence
from .noise import FidelityReport, NoiseParams, fidelity_estimate
from .representation import ClusterGraph, Edge, Family, FamilySpec, build_family, to_distribution
from .stabilizer import extract_graph, run_gates, run_schedule, states_equal


@dataclass(frozen=True)
class VerificationReport:
    target_edges: frozenset[Edge]
    realized_edges: frozenset[Edge]
    target_excited: frozenset[int]
    realized_excited: frozenset[int]
    emulation_consistent: bool

    @property
    def missing(self) -> list[Edge]:
        return sorted(self.target_edges - self.realized_edges)

    @property
    def extra(self) -> list[Edge]:
        return sorted(self.realized_edges - self.target_edges)

    @property
    def ok(self) -> bool:
        return (
            self.target_edges == self.realized_edges
            and self.target_excited == self.realized_excited
            and self.emulation_consistent
        )

    def text(self) -> str:
        lines = [
            f"target edges:   {len(self.target_edges)}",
            f"realized edges: {len(self.realized_edges)}",
            f"missing: {' '.join(f'{i}-{j}' for i, j in self.missing) or '-'}",
            f"extra:   {' '.join(f'{i}-{j}' for i, j in self.extra) or '-'}",
        ]
        if self.target_excited != self.realized_excited:
            diff = sorted(self.target_excited ^ self.realized_excited)
            lines.append(f"excitation mismatch: {diff}")
        lines.append(f"emulation consistent: {self.emulation_consistent}")
        lines.append(f"verdict: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


def verify_schedule(s: Schedule, target: ClusterGraph) -> VerificationReport:
    """Simulate ``s`` exactly and compare with ``target`` placed by the schedule's numbering."""
    placed = s.target_graph(target)
    tableau = run_schedule(s)
    realized = extract_graph(tableau, s.excitation_set)
    events = emulate(s)
    emulated = run_gates(s.excitation_set, s.n_slots, gate_sequence(events))
    consistent = gate_multiset_matches(s, events) and states_equal(tableau, emulated)
    return VerificationReport(
        placed.edges, realized.edges, placed.excited, s.excitation_set, consistent
    )


@dataclass(frozen=True)
class Table2Row:
    state: str
    n: int
    d: int
    n_tdf: int
    report: FidelityReport


def table2_rows(params: NoiseParams, depths: range = range(1, 6)) -> list[Table2Row]:
    """Initial TCS, optimized TCS, and CCS rows for ``N = 2**d - 1``."""
    rows: list[Table2Row] = []
    for d in depths:
        n = 2**d - 1
        tree = build_family(FamilySpec(Family.TCS, (2, d)))
        initial_tdf = 2 ** (d - 1) - 1
        rows.append(Table2Row("tcs_initial", n, d, initial_tdf,
                              fidelity_estimate(to_distribution(tree), initial_tdf, params)))
        if d >= 2:
            opt = compile_lattice_embedded(2, d)
            rows.append(Table2Row("tcs_optimized", n, d, opt.n_tdf,
                                  fidelity_estimate(opt.distribution(), opt.n_tdf, params)))
        else:
            rows.append(Table2Row("tcs_optimized", n, d, 0,
                                  fidelity_estimate(to_distribution(tree), 0, params)))
        ccs = build_family(FamilySpec(Family.CCS, (n,)))
        rows.append(Table2Row("ccs", n, d, n - 1,
                              fidelity_estimate(to_distribution(ccs), n - 1, params)))
    return rows


def table2_csv(rows: list[Table2Row]) -> str:
    out = ["state,N,n_tdf,f_c"]
    for r in rows:
        out.append(f"{r.state},{r.n},{r.n_tdf},{r.report.f_c:.6e}")
    return "\n".join(out) + "\n"


def fidelity_text(report: FidelityReport, oracle: tuple[float, float] | None = None) -> str:
    p = report.params
    lines = [
        f"n_h = {report.n_h}",
        f"n_cz = {report.n_cz}",
        f"n_damp_ops = {report.n_damp_ops}",
        f"f_s = {p.f_s}",
        f"f_t = {p.f_t}",
        f"gamma = {p.gamma}",
        f"per_damping_factor = {p.per_damping_factor}",
        f"factor_h = {report.gate_factor_h:.6e}",
        f"factor_cz = {report.gate_factor_cz:.6e}",
        f"factor_damping = {report.damping_factor:.6e}",
        f"f_c = {report.f_c:.6e}",
    ]
    if oracle is not None:
        lines.append(f"oracle_exact_single_pass = {oracle[0]:.6e}")
        lines.append(f"oracle_product_single_pass = {oracle[1]:.6e}")
    return "\n".join(lines) + "\n"
