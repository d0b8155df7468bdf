"""Loss and gate-error budget for generated cluster states.

The closed-form estimate multiplies three independent factors::

    f_c = f_s**n_h * f_t**n_cz * per_damping_factor**(n_h * n_damp_ops)

where ``n_damp_ops`` is the number of inter-loop hand-offs each photon goes
through (one fewer than the number of feedback loops).  Dense density-matrix
routines are provided to check the single-photon damping factor exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from functools import reduce

import numpy as np

from .errors import OutOfRange, TooLarge
from .representation import DistributionMatrix, gate_counts
from .stabilizer import dense_from_gates

KRAUS_TOL = 1e-12
PSD_TOL = 1e-9
DENSITY_MAX_QUBITS = 10


def single_photon_damping_fidelity(gamma: float) -> float:
    """Fidelity of |+> after one amplitude-damping step: ``(1 + sqrt(1-gamma)) / 2``."""
    return (1 + math.sqrt(1 - gamma)) / 2


@dataclass(frozen=True)
class NoiseParams:
    f_s: float = 0.999
    f_t: float = 0.996
    gamma: float = 0.0
    per_damping_factor: float | None = field(default=None)

    def __post_init__(self):
        for name in ("f_s", "f_t"):
            v = getattr(self, name)
            if not 0 < v <= 1:
                raise OutOfRange(f"{name} must lie in (0, 1], got {v}")
        if not 0 <= self.gamma < 1:
            raise OutOfRange(f"gamma must lie in [0, 1), got {self.gamma}")
        if self.per_damping_factor is None:
            object.__setattr__(self, "per_damping_factor", single_photon_damping_fidelity(self.gamma))
        elif not 0 < self.per_damping_factor <= 1:
            raise OutOfRange(f"per_damping_factor must lie in (0, 1], got {self.per_damping_factor}")


TABLE2_PARAMS = NoiseParams(f_s=0.999, f_t=0.996, per_damping_factor=0.98)


@dataclass(frozen=True)
class FidelityReport:
    n_h: int
    n_cz: int
    n_damp_ops: int
    f_c: float
    params: NoiseParams

    @property
    def gate_factor_h(self) -> float:
        return self.params.f_s**self.n_h

    @property
    def gate_factor_cz(self) -> float:
        return self.params.f_t**self.n_cz

    @property
    def damping_factor(self) -> float:
        return self.params.per_damping_factor ** (self.n_h * self.n_damp_ops)


def fidelity_estimate(D: DistributionMatrix, n_tdf: int, params: NoiseParams) -> FidelityReport:
    if n_tdf < 0:
        raise OutOfRange(f"n_tdf must be >= 0, got {n_tdf}")
    n_h, n_cz = gate_counts(D)
    n_damp = max(n_tdf - 1, 0)
    f_c = params.f_s**n_h * params.f_t**n_cz * params.per_damping_factor ** (n_h * n_damp)
    return FidelityReport(n_h, n_cz, n_damp, f_c, params)


@dataclass(frozen=True, eq=False)
class KrausPair:
    k0: np.ndarray
    k1: np.ndarray

    def __post_init__(self):
        k0 = np.asarray(self.k0, dtype=complex)
        k1 = np.asarray(self.k1, dtype=complex)
        object.__setattr__(self, "k0", k0)
        object.__setattr__(self, "k1", k1)
        if self.completeness_residual() > KRAUS_TOL:
            raise OutOfRange(f"Kraus pair is not trace preserving (residual {self.completeness_residual():.2e})")

    def completeness_residual(self) -> float:
        total = self.k0.conj().T @ self.k0 + self.k1.conj().T @ self.k1
        return float(np.max(np.abs(total - np.eye(self.k0.shape[0]))))

    def __iter__(self):
        return iter((self.k0, self.k1))


def amplitude_damping_kraus(gamma: float) -> KrausPair:
    if not 0 <= gamma < 1:
        raise OutOfRange(f"gamma must lie in [0, 1), got {gamma}")
    k0 = np.diag([1.0, math.sqrt(1 - gamma)])
    k1 = np.array([[0.0, math.sqrt(gamma)], [0.0, 0.0]])
    return KrausPair(k0, k1)


def _n_qubits(rho: np.ndarray) -> int:
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    if rho.shape != (dim, dim) or 2**n != dim:
        raise ValueError(f"density matrix shape {rho.shape} is not 2^n x 2^n")
    return n


def apply_channel(rho: np.ndarray, kraus: KrausPair, qubit: int) -> np.ndarray:
    """Apply a single-qubit channel to ``qubit`` (1-based, bit ``qubit-1`` of the index)."""
    rho = np.asarray(rho, dtype=complex)
    n = _n_qubits(rho)
    if n > DENSITY_MAX_QUBITS:
        raise TooLarge(f"density matrices are limited to {DENSITY_MAX_QUBITS} qubits")
    if not 1 <= qubit <= n:
        raise ValueError(f"qubit {qubit} outside [1, {n}]")
    axis = n - qubit
    t = rho.reshape((2,) * (2 * n))
    out = np.zeros_like(t)
    for k in kraus:
        left = np.moveaxis(np.tensordot(k, t, axes=([1], [axis])), 0, axis)
        out += np.moveaxis(np.tensordot(left, k.conj(), axes=([n + axis], [1])), -1, n + axis)
    return out.reshape(rho.shape)


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2)
    if vals.min() < -PSD_TOL:
        raise ArithmeticError(f"matrix is not positive semidefinite (eigenvalue {vals.min():.3e})")
    vals = np.clip(vals, 0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def state_fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Uhlmann fidelity ``(Tr sqrt(sqrt(rho) sigma sqrt(rho)))**2``.

    Uses ``<psi|sigma|psi>`` when ``rho`` is pure.
    """
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise ValueError(f"shape mismatch {rho.shape} vs {sigma.shape}")
    vals, vecs = np.linalg.eigh((rho + rho.conj().T) / 2)
    if vals.min() < -PSD_TOL:
        raise ArithmeticError(f"rho is not positive semidefinite (eigenvalue {vals.min():.3e})")
    if abs(vals[-1] - 1) < PSD_TOL:
        psi = vecs[:, -1]
        return float(np.real(psi.conj() @ sigma @ psi))
    root = _psd_sqrt(rho)
    inner = _psd_sqrt(root @ sigma @ root)
    return float(np.real(np.trace(inner)) ** 2)


def path_cluster_density(n: int) -> np.ndarray:
    psi = dense_from_gates(range(1, n + 1), n, [(q, q + 1) for q in range(1, n)]).amplitudes
    return np.outer(psi, psi.conj())


def damping_product_check(n: int, gamma: float) -> tuple[float, float]:
    """(exact, product) fidelity of an n-photon path cluster after damping every photon once."""
    if not 2 <= n <= 6:
        raise OutOfRange(f"damping check supports 2 <= n <= 6, got {n}")
    rho0 = path_cluster_density(n)
    kraus = amplitude_damping_kraus(gamma)
    rho = reduce(lambda r, q: apply_channel(r, kraus, q), range(1, n + 1), rho0)
    exact = state_fidelity(rho0, rho)
    return exact, single_photon_damping_fidelity(gamma) ** n


def two_qubit_damped_fidelity(gamma: float) -> float:
    """Closed form for the 2-photon cluster: ``[(1+s)^4 + 2g(1-s)^2 + g^2] / 16``."""
    s = math.sqrt(1 - gamma)
    return ((1 + s) ** 4 + 2 * gamma * (1 - s) ** 2 + gamma**2) / 16


def beta_from_rates(gamma_r: float, gamma_l: float, gamma_rad: float) -> float:
    """Fraction of decay into the right-propagating waveguide mode."""
    total = gamma_r + gamma_l + gamma_rad
    if total <= 0 or min(gamma_r, gamma_l, gamma_rad) < 0:
        raise OutOfRange("decay rates must be non-negative with a positive sum")
    return gamma_r / total


def _check_beta(beta: float) -> None:
    if not 0.5 <= beta <= 1:
        raise OutOfRange(f"beta must lie in [0.5, 1], got {beta}")


def circulator_gamma(beta: float) -> float:
    """Circulator loss ``2 (1 - beta)``, evaluated in exact decimal arithmetic."""
    _check_beta(beta)
    return float(2 * (1 - Decimal(repr(beta))))


def circulator_kraus(beta: float) -> KrausPair:
    _check_beta(beta)
    k0 = np.diag([-math.sqrt(2 * beta - 1), 1.0])
    k1 = np.array([[0.0, 0.0], [math.sqrt(2 * (1 - beta)), 0.0]])
    return KrausPair(k0, k1)


def mzi_ratio(theta: float) -> float:
    """Fraction of light leaving the MZI through the mirror port."""
    return (1 - math.cos(theta)) / 2
