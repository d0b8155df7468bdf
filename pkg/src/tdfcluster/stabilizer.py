"""Stabilizer-tableau verification of generation schedules.

Each generator is a signed Pauli string stored as two packed bit rows
(Python ints): bit ``q - 1`` of ``x`` / ``z`` carries the X / Z part on
qubit ``q``.  Excited slots start in |+> (stabilized by X), virtual slots in
|0> (stabilized by Z).  Only CZ gates are applied after preparation.

A small dense state-vector simulator is kept alongside as an independent
oracle.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .compiler.schedule import Schedule
from .errors import IndexOutOfRange, NotGraphState, TooLarge
from .representation import ClusterGraph, Edge

DENSE_MAX_QUBITS = 12


def _popcount(v: int) -> int:
    return v.bit_count()


def _mul_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Power of i picked up when multiplying Pauli (x1, z1) by (x2, z2), mod 4."""
    y1 = x1 & z1
    xo = x1 & ~z1
    zo = ~x1 & z1
    plus = (y1 & z2 & ~x2) | (xo & x2 & z2) | (zo & x2 & ~z2)
    minus = (y1 & x2 & ~z2) | (xo & z2 & ~x2) | (zo & x2 & z2)
    return (_popcount(plus) - _popcount(minus)) % 4


@dataclass
class StabilizerTableau:
    """``n`` generators; ``signs[k]`` is 1 for a -1 phase."""

    n: int
    x: list[int]
    z: list[int]
    signs: list[int]

    def copy(self) -> StabilizerTableau:
        return StabilizerTableau(self.n, list(self.x), list(self.z), list(self.signs))

    def _rowmul(self, target: int, source: int) -> None:
        """Replace generator ``target`` by ``source * target``."""
        x1, z1, x2, z2 = self.x[source], self.z[source], self.x[target], self.z[target]
        phase = (2 * self.signs[source] + 2 * self.signs[target] + _mul_phase(x1, z1, x2, z2)) % 4
        if phase % 2:
            raise ArithmeticError("product of commuting generators has imaginary phase")
        self.x[target] = x1 ^ x2
        self.z[target] = z1 ^ z2
        self.signs[target] = phase // 2

    def cz(self, i: int, j: int) -> StabilizerTableau:
        """Conjugate every generator by CZ(i, j) in place and return self."""
        if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexOutOfRange(f"CZ({i}, {j}) invalid on {self.n} qubits")
        bi, bj = 1 << (i - 1), 1 << (j - 1)
        for k in range(self.n):
            xk = self.x[k]
            xi, xj = bool(xk & bi), bool(xk & bj)
            if not (xi or xj):
                continue
            # sign flips iff x_i x_j (z_i xor z_j), e.g. X_i Y_j -> -Y_i X_j
            zk = self.z[k]
            if xi and xj and (bool(zk & bi) ^ bool(zk & bj)):
                self.signs[k] ^= 1
            if xi:
                zk ^= bj
            if xj:
                zk ^= bi
            self.z[k] = zk
        return self

    def rank(self) -> int:
        rows = [(self.x[k] << self.n) | self.z[k] for k in range(self.n)]
        r = 0
        for bit in reversed(range(2 * self.n)):
            mask = 1 << bit
            piv = next((k for k in range(r, len(rows)) if rows[k] & mask), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for k in range(len(rows)):
                if k != r and rows[k] & mask:
                    rows[k] ^= rows[r]
            r += 1
        return r

    def commutes(self) -> bool:
        for a in range(self.n):
            for b in range(a + 1, self.n):
                s = _popcount(self.x[a] & self.z[b]) + _popcount(self.z[a] & self.x[b])
                if s % 2:
                    return False
        return True

    def check(self) -> None:
        if self.rank() != self.n:
            raise ArithmeticError("stabilizer generators are not independent")
        if not self.commutes():
            raise ArithmeticError("stabilizer generators do not commute")

    def canonical(self) -> StabilizerTableau:
        """Reduced row echelon form: X block first, then Z block, lowest qubit pivots first."""
        t = self.copy()
        r = 0
        for block in ("x", "z"):
            for q in range(t.n):
                bit = 1 << q
                rows = getattr(t, block)
                piv = next((k for k in range(r, t.n) if rows[k] & bit), None)
                if piv is None:
                    continue
                for arr in (t.x, t.z, t.signs):
                    arr[r], arr[piv] = arr[piv], arr[r]
                for k in range(t.n):
                    if k != r and getattr(t, block)[k] & bit:
                        t._rowmul(k, r)
                r += 1
        return t

    def key(self) -> tuple:
        c = self.canonical()
        return tuple(zip(c.x, c.z, c.signs))

    def pauli_strings(self) -> list[str]:
        out = []
        for k in range(self.n):
            s = "-" if self.signs[k] else "+"
            for q in range(self.n):
                xb, zb = (self.x[k] >> q) & 1, (self.z[k] >> q) & 1
                s += "IXZY"[xb + 2 * zb]
            out.append(s)
        return out


def prepare_plus(excited: Iterable[int], n_slots: int) -> StabilizerTableau:
    excited = set(excited)
    if any(not 1 <= i <= n_slots for i in excited):
        raise IndexOutOfRange(f"excited slots must lie in [1, {n_slots}]")
    x, z = [], []
    for q in range(1, n_slots + 1):
        bit = 1 << (q - 1)
        if q in excited:
            x.append(bit)
            z.append(0)
        else:
            x.append(0)
            z.append(bit)
    return StabilizerTableau(n_slots, x, z, [0] * n_slots)


def apply_cz(t: StabilizerTableau, i: int, j: int) -> StabilizerTableau:
    """Functional CZ: returns a new tableau, leaving ``t`` untouched."""
    return t.copy().cz(i, j)


def run_gates(excited: Iterable[int], n_slots: int, gates: Iterable[Edge]) -> StabilizerTableau:
    t = prepare_plus(excited, n_slots)
    for i, j in gates:
        t.cz(i, j)
    return t


def run_schedule(s: Schedule) -> StabilizerTableau:
    """Prepare, then native chain gates, then each block's gates in ascending slot order."""
    s.validate()
    return run_gates(s.excitation_set, s.n_slots, s.gates())


def states_equal(t1: StabilizerTableau, t2: StabilizerTableau) -> bool:
    if t1.n != t2.n:
        raise ValueError(f"tableaux act on {t1.n} and {t2.n} qubits")
    return t1.key() == t2.key()


def extract_graph(t: StabilizerTableau, excited: Iterable[int]) -> ClusterGraph:
    """Read the graph off the canonical form.

    For a CZ image of :func:`prepare_plus` the canonical generators are
    ``X_i Z_N(i)`` for each excited ``i`` followed by ``Z_j`` for each vacuum
    ``j``; anything else raises :class:`NotGraphState`.
    """
    excited = sorted(set(excited))
    c = t.canonical()
    n = t.n
    vacuum = [q for q in range(1, n + 1) if q not in set(excited)]
    vac_mask = sum(1 << (q - 1) for q in vacuum)
    edges: set[Edge] = set()
    nbrs: dict[int, int] = {}
    for row, q in enumerate(excited):
        if c.x[row] != 1 << (q - 1) or c.signs[row]:
            raise NotGraphState(f"generator {row} is not +X_{q} times Z's: {c.pauli_strings()[row]}")
        if c.z[row] & vac_mask or c.z[row] & (1 << (q - 1)):
            raise NotGraphState(f"generator for qubit {q} has Z on itself or on a vacuum slot")
        nbrs[q] = c.z[row]
    for row, q in enumerate(vacuum, start=len(excited)):
        if c.x[row] or c.z[row] != 1 << (q - 1) or c.signs[row]:
            raise NotGraphState(f"vacuum slot {q} is not stabilized by +Z")
    for q, mask in nbrs.items():
        for p in excited:
            if mask >> (p - 1) & 1:
                if not nbrs[p] >> (q - 1) & 1:
                    raise NotGraphState(f"adjacency between {q} and {p} is not symmetric")
                edges.add((min(p, q), max(p, q)))
    return ClusterGraph(n, excited, edges)


@dataclass
class DenseState:
    """State vector with qubit ``q`` on bit ``q - 1`` of the basis index."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n > DENSE_MAX_QUBITS:
            raise TooLarge(f"dense states are limited to {DENSE_MAX_QUBITS} qubits, got {self.n}")
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (2**self.n,):
            raise ValueError("amplitude vector has the wrong length")
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1) > 1e-12:
            raise ValueError(f"state is not normalized (norm {norm})")


def _basis_bits(n: int) -> np.ndarray:
    return np.arange(2**n, dtype=np.int64)


def dense_from_gates(excited: Iterable[int], n_slots: int, gates: Iterable[Edge]) -> DenseState:
    if n_slots > DENSE_MAX_QUBITS:
        raise TooLarge(f"dense simulation limited to {DENSE_MAX_QUBITS} qubits, got {n_slots}")
    idx = _basis_bits(n_slots)
    exc_mask = sum(1 << (q - 1) for q in excited)
    # |+> on excited qubits, |0> elsewhere: uniform over indices inside exc_mask
    support = (idx & ~exc_mask) == 0
    amp = np.where(support, 1.0, 0.0).astype(complex)
    amp /= np.sqrt(support.sum())
    for i, j in gates:
        both = ((idx >> (i - 1)) & 1) & ((idx >> (j - 1)) & 1)
        amp = np.where(both == 1, -amp, amp)
    return DenseState(n_slots, amp)


def dense_oracle(s: Schedule) -> DenseState:
    return dense_from_gates(s.excitation_set, s.n_slots, s.gates())


def dense_fidelity(a: DenseState, b: DenseState) -> float:
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def tableau_to_dense(t: StabilizerTableau) -> DenseState:
    """Project onto the joint +1 eigenspace of all generators."""
    if t.n > DENSE_MAX_QUBITS:
        raise TooLarge(f"dense conversion limited to {DENSE_MAX_QUBITS} qubits, got {t.n}")
    idx = _basis_bits(t.n)
    parity = np.array([bin(i).count("1") & 1 for i in range(256)], dtype=np.int64)

    def popparity(v: np.ndarray) -> np.ndarray:
        out = np.zeros_like(v)
        while np.any(v):
            out ^= parity[v & 0xFF]
            v = v >> 8
        return out

    def apply(k: int, vec: np.ndarray) -> np.ndarray:
        x, z = t.x[k], t.z[k]
        # P = (-1)^s i^{|x&z|} X^x Z^z
        phase = (-1) ** t.signs[k] * 1j ** _popcount(x & z)
        zsign = 1 - 2 * popparity(idx & z)
        out = np.empty_like(vec)
        out[idx ^ x] = zsign * vec
        return phase * out

    for seed in range(2**t.n):
        vec = np.zeros(2**t.n, dtype=complex)
        vec[seed] = 1.0
        for k in range(t.n):
            vec = (vec + apply(k, vec)) / 2
        norm = np.linalg.norm(vec)
        if norm > 1e-9:
            return DenseState(t.n, vec / norm)
    raise ArithmeticError("stabilizer group has no +1 eigenstate")
