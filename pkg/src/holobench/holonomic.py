"""Holonomic single-qubit gate in a resonantly driven Lambda system.

Basis ordering is ``(|0>, |1>, |e>)``.  Two fields couple the logic states to
the auxiliary level with amplitudes ``a*Omega`` and ``b*Omega`` where
``a = sin(theta/2) e^{i phi}`` and ``b = cos(theta/2)``.  A square pulse of area
``Omega*T = pi`` returns the qubit subspace to itself and enacts the reflection
returned by :func:`ideal_holonomic_gate`.

Systematic errors shift ``Omega``, ``theta`` and ``phi`` by constants for the
whole pulse.  ``exact_propagator`` integrates the shifted Hamiltonian exactly;
``paper_propagator``, ``state_fidelity_order2`` and ``average_fidelity_order2``
evaluate the published closed forms as printed, so the two can be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qmath import (
    BlochAngles,
    ValidationError,
    bloch_states,
    embed_qubit,
    expm_unitary,
    fidelity,
    state_from_bloch,
)

TWO_PI = 2.0 * math.pi
PERTURBATIVE_LIMIT = 0.1


def _check_finite(**values):
    for name, v in values.items():
        if not math.isfinite(v):
            raise ValidationError(f"{name} must be finite, got {v}")


@dataclass(frozen=True)
class SystematicError:
    """Constant control-parameter deviations held fixed over one gate.

    ``rel_omega`` is the relative Rabi-frequency error dOmega/Omega; ``d_theta``
    and ``d_phi`` are absolute angle offsets in radians.
    """

    rel_omega: float = 0.0
    d_theta: float = 0.0
    d_phi: float = 0.0

    def __post_init__(self):
        _check_finite(rel_omega=self.rel_omega, d_theta=self.d_theta, d_phi=self.d_phi)
        if abs(self.rel_omega) > 1.0:
            raise ValidationError(f"|rel_omega| must be <= 1, got {self.rel_omega}")

    @property
    def perturbative(self) -> bool:
        """False once the Rabi error leaves the small-error regime (> 10%)."""
        return abs(self.rel_omega) <= PERTURBATIVE_LIMIT

    @property
    def epsilon(self) -> float:
        """Excess pulse area dOmega*T for a pi pulse."""
        return math.pi * self.rel_omega

    @property
    def is_zero(self) -> bool:
        return self.rel_omega == 0.0 and self.d_theta == 0.0 and self.d_phi == 0.0


ZERO_ERROR = SystematicError()


@dataclass(frozen=True)
class LambdaGateSpec:
    """Nominal mixing angle, relative phase and Rabi frequency of the gate."""

    theta: float
    phi: float = 0.0
    omega: float = 1.0

    def __post_init__(self):
        _check_finite(theta=self.theta, phi=self.phi, omega=self.omega)
        if not -1e-12 <= self.theta <= math.pi + 1e-12:
            raise ValidationError(f"theta={self.theta} outside [0, pi]")
        if self.omega <= 0:
            raise ValidationError(f"omega must be positive, got {self.omega}")
        object.__setattr__(self, "theta", min(max(float(self.theta), 0.0), math.pi))
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)
        object.__setattr__(self, "omega", float(self.omega))

    @property
    def duration(self) -> float:
        return math.pi / self.omega

    @property
    def a(self) -> complex:
        return math.sin(self.theta / 2) * complex(math.cos(self.phi), math.sin(self.phi))

    @property
    def b(self) -> float:
        return math.cos(self.theta / 2)


@dataclass(frozen=True)
class LeakageRecord:
    input: BlochAngles
    leak_prob: float


@dataclass(frozen=True)
class LambdaEigensystem:
    dark: np.ndarray
    bright_plus: np.ndarray
    bright_minus: np.ndarray
    energies: tuple[float, float, float]


@dataclass(frozen=True)
class PropagatorMismatch:
    """Entrywise comparison of the published propagator with the exact one."""

    max_magnitude_error: float
    entries: tuple[tuple[int, int, float], ...]  # (row, col, |P - U|) above tolerance

    @property
    def auxiliary_only(self) -> bool:
        return all(2 in (i, j) for i, j, _ in self.entries)


def _primed(spec: LambdaGateSpec, err: SystematicError):
    return (
        spec.theta + err.d_theta,
        spec.phi + err.d_phi,
        spec.omega * (1.0 + err.rel_omega),
    )


def lambda_hamiltonian(spec: LambdaGateSpec, err: SystematicError = ZERO_ERROR) -> np.ndarray:
    theta, phi, omega = _primed(spec, err)
    H = np.zeros((3, 3), dtype=complex)
    H[2, 0] = omega * math.sin(theta / 2) * np.exp(1j * phi)
    H[2, 1] = omega * math.cos(theta / 2)
    H[0, 2] = np.conj(H[2, 0])
    H[1, 2] = np.conj(H[2, 1])
    return H


def bright_dark_basis(spec: LambdaGateSpec, err: SystematicError = ZERO_ERROR) -> LambdaEigensystem:
    """Dark state (energy 0) and the two bright/excited dressed states (+-Omega')."""
    theta, phi, omega = _primed(spec, err)
    a = math.sin(theta / 2) * np.exp(1j * phi)
    b = math.cos(theta / 2)
    dark = np.array([b, -a, 0.0], dtype=complex)
    bright = np.array([np.conj(a), b, 0.0], dtype=complex)
    excited = np.array([0.0, 0.0, 1.0], dtype=complex)
    return LambdaEigensystem(
        dark=dark,
        bright_plus=(bright + excited) / math.sqrt(2),
        bright_minus=(bright - excited) / math.sqrt(2),
        energies=(0.0, omega, -omega),
    )


def dark_state_angles(spec: LambdaGateSpec, err: SystematicError = ZERO_ERROR) -> BlochAngles:
    """Bloch angles of the (possibly shifted) dark state ``b'|0> - a'|1>``.

    Only meaningful while ``theta + d_theta`` stays inside [0, pi].
    """
    theta, phi, _ = _primed(spec, err)
    return BlochAngles(theta, (phi + math.pi) % TWO_PI)


def ideal_holonomic_gate(theta: float, phi: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [
            [c, -s * np.exp(-1j * phi)],
            [-s * np.exp(1j * phi), -c],
        ]
    )


def exact_propagator(spec: LambdaGateSpec, err: SystematicError = ZERO_ERROR) -> np.ndarray:
    """Exact 3x3 propagator of the shifted Hamiltonian over ``T = pi/Omega``."""
    return expm_unitary(lambda_hamiltonian(spec, err), spec.duration)


def paper_propagator(spec: LambdaGateSpec, err: SystematicError = ZERO_ERROR) -> np.ndarray:
    """Published closed-form propagator, transcribed entry by entry.

    Kept free of shared helpers on purpose: this is the path under test.  The
    auxiliary row/column phases follow the printed form, which is the transpose
    of what direct exponentiation yields; magnitudes agree.
    """
    tp = spec.theta + err.d_theta
    pp = spec.phi + err.d_phi
    eps = math.pi * err.rel_omega

    ep, em = np.exp(1j * pp), np.exp(-1j * pp)
    cos_t, sin_t = np.cos(tp), np.sin(tp)
    s_half, c_half = np.sin(tp / 2), np.cos(tp / 2)
    one_minus = 1.0 - np.cos(eps)
    sin_e = np.sin(eps)

    u0 = np.array(
        [
            [cos_t, -em * sin_t, 0.0],
            [-ep * sin_t, -cos_t, 0.0],
            [0.0, 0.0, 0.0],
        ],
        dtype=complex,
    )
    u1 = np.array(
        [
            [one_minus * s_half**2, 0.5 * one_minus * sin_t * em, 1j * sin_e * s_half * ep],
            [0.5 * one_minus * sin_t * ep, one_minus * c_half**2, 1j * sin_e * c_half],
            [1j * sin_e * s_half * em, 1j * sin_e * c_half, -np.cos(eps)],
        ],
        dtype=complex,
    )
    return u0 + u1


def propagator_mismatch(spec: LambdaGateSpec, err: SystematicError = ZERO_ERROR,
                        tol: float = 1e-10) -> PropagatorMismatch:
    """Where the published propagator departs from exact exponentiation.

    Nothing is corrected: the published matrix is compared as printed.
    """
    P, U = paper_propagator(spec, err), exact_propagator(spec, err)
    diff = np.abs(P - U)
    entries = tuple((int(i), int(j), float(diff[i, j])) for i, j in zip(*np.nonzero(diff > tol)))
    return PropagatorMismatch(float(np.max(np.abs(np.abs(P) - np.abs(U)))), entries)


def _segment_defects(segments, n_samples: int) -> float:
    total = sum(d for _, d in segments)
    times = np.linspace(0.0, total, n_samples)
    worst = 0.0
    start, U_start = 0.0, np.eye(3, dtype=complex)
    bounds = []
    for H, d in segments:
        bounds.append((start, start + d, H, U_start))
        U_start = expm_unitary(H, d) @ U_start
        start += d
    for t in times:
        for idx, (t0, t1, H, U0) in enumerate(bounds):
            if t < t1 or idx == len(bounds) - 1:
                break
        U = expm_unitary(H, max(0.0, t - t0)) @ U0
        block = (U.conj().T @ H @ U)[:2, :2]
        worst = max(worst, float(np.max(np.abs(block))))
    return worst


def parallel_transport_defect(spec: LambdaGateSpec, n_samples: int = 50, segments=None) -> float:
    """Largest ``|<psi_k(t)|H(t)|psi_j(t)>|`` over sampled times and k, j in {0, 1}.

    ``segments`` optionally replaces the single constant pulse by a list of
    ``(hamiltonian, duration)`` pieces applied in order, which lets a test break
    the constant-ratio condition deliberately.
    """
    if n_samples < 2:
        raise ValidationError("n_samples must be at least 2")
    if segments is None:
        segments = [(lambda_hamiltonian(spec), spec.duration)]
    return _segment_defects(segments, n_samples)


# -- fidelities ---------------------------------------------------------------


def fidelity_and_leakage_grid(spec, err, alpha, beta):
    """Exact per-state fidelity and leakage for arrays of Bloch angles."""
    psi = bloch_states(alpha, beta)
    desired = psi @ ideal_holonomic_gate(spec.theta, spec.phi).T
    actual = embed_qubit(psi) @ exact_propagator(spec, err).T
    overlap = np.einsum("...i,...i->...", desired.conj(), actual[..., :2])
    return np.minimum(np.abs(overlap) ** 2, 1.0), np.abs(actual[..., 2]) ** 2


def leakage(spec: LambdaGateSpec, err: SystematicError, input: BlochAngles) -> LeakageRecord:
    out = exact_propagator(spec, err) @ embed_qubit(state_from_bloch(input))
    return LeakageRecord(input=input, leak_prob=min(1.0, abs(out[2]) ** 2))


def state_fidelity_exact(spec: LambdaGateSpec, err: SystematicError, input: BlochAngles) -> float:
    psi = state_from_bloch(input)
    desired = embed_qubit(ideal_holonomic_gate(spec.theta, spec.phi) @ psi)
    actual = exact_propagator(spec, err) @ embed_qubit(psi)
    return fidelity(desired, actual)


def state_fidelity_order2_grid(spec, err, alpha, beta):
    """Published second-order per-state fidelity, vectorised over angles.

    Evaluated exactly as printed, including the full-angle ``cos(alpha)`` and
    ``sin(alpha)`` in the Rabi-error term.
    """
    th, ph = spec.theta, spec.phi
    dth, dph, eps = err.d_theta, err.d_phi, err.epsilon
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    sa, ca = np.sin(alpha), np.cos(alpha)
    bracket = ca * np.sin(th) ** 2 + 0.5 * sa * np.sin(2 * th) * np.cos(beta - ph)
    rabi = np.abs(ca * np.sin(th / 2) * np.exp(1j * ph) + sa * np.cos(th / 2) * np.exp(1j * beta)) ** 2
    return (
        1.0
        - dth**2 * (1.0 - sa**2 * np.sin(beta - ph) ** 2)
        - dph**2 * (np.sin(th) ** 2 - bracket**2)
        - 2.0 * dth * dph * sa * np.sin(beta - ph) * bracket
        - eps**2 * rabi
    )


def state_fidelity_order2(spec: LambdaGateSpec, err: SystematicError, input: BlochAngles) -> float:
    return float(state_fidelity_order2_grid(spec, err, input.alpha, input.beta))


def average_infidelity_order2(theta: float, err: SystematicError) -> float:
    """Published Bloch-sphere-averaged infidelity to second order in the errors."""
    return (
        (math.pi * err.rel_omega) ** 2 * (1.0 + math.cos(theta / 2) ** 2) / 3.0
        + 2.0 / 3.0 * err.d_theta**2
        + err.d_phi**2 * (2.0 / 3.0 * math.sin(theta) ** 2 - math.sin(2 * theta) ** 2 / 12.0)
    )


def average_fidelity_order2(theta: float, err: SystematicError) -> float:
    return 1.0 - average_infidelity_order2(theta, err)


# -- amplitude ratio ----------------------------------------------------------


def ratio_from_theta(theta: float) -> float:
    """Field amplitude ratio ``r = |a/b| = tan(theta/2)``."""
    if abs(theta - math.pi) < 1e-12:
        raise ValidationError("ratio undefined, b = 0")
    return math.tan(theta / 2)


def theta_from_ratio(r: float) -> float:
    return 2.0 * math.atan(r)


def dtheta_from_ratio_error(r: float, dr: float) -> float:
    """Mixing-angle error produced by an amplitude-ratio error ``dr``."""
    if not math.isfinite(r) or r < 0:
        raise ValidationError(f"ratio must be finite and >= 0, got {r}")
    return 2.0 * dr / (1.0 + r * r)
