"""Resonant two-level (dynamical) gate driven directly between |0> and |1>.

A field of Rabi frequency ``Omega`` and phase ``phi`` applied for ``tau``
rotates the qubit by ``theta = Omega*tau`` about the equatorial axis
``(cos phi, sin phi, 0)``.  A Rabi error rescales the rotation angle, a phase
error tilts the axis; there is no second field, so a mixing-angle error has no
meaning here and is rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .holonomic import ZERO_ERROR, SystematicError
from .qmath import BlochAngles, ValidationError, bloch_states, expm_unitary, fidelity, state_from_bloch

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RabiGateSpec:
    """Rotation parameter ``theta`` in (0, pi], phase ``phi``, Rabi frequency.

    A universal gate set only needs ``theta <= pi/2``; larger values are
    accepted so that shared theta grids can be evaluated for both gate kinds.
    """

    theta: float
    phi: float = 0.0
    omega: float = 1.0

    def __post_init__(self):
        for name in ("theta", "phi", "omega"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if not 0.0 < self.theta <= math.pi + 1e-12:
            raise ValidationError(f"theta={self.theta} outside (0, pi]")
        if self.omega <= 0:
            raise ValidationError(f"omega must be positive, got {self.omega}")
        object.__setattr__(self, "theta", min(float(self.theta), math.pi))
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)
        object.__setattr__(self, "omega", float(self.omega))

    @property
    def duration(self) -> float:
        return self.theta / self.omega

    @property
    def universal(self) -> bool:
        return self.theta <= math.pi / 2 + 1e-12


@dataclass(frozen=True)
class GateSequence:
    """Pulses in application order (first element acts first)."""

    gates: tuple[RabiGateSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if not self.gates:
            raise ValidationError("gate sequence must not be empty")

    def __iter__(self):
        return iter(self.gates)

    def __len__(self):
        return len(self.gates)


GateLike = Union[RabiGateSpec, GateSequence]


def _as_sequence(gates: GateLike) -> GateSequence:
    if isinstance(gates, RabiGateSpec):
        return GateSequence((gates,))
    if isinstance(gates, GateSequence):
        return gates
    return GateSequence(tuple(gates))


def _single_field(err: SystematicError):
    if err.d_theta != 0.0:
        raise ValidationError("amplitude-ratio error undefined for single-field gate")


def rabi_hamiltonian(spec: RabiGateSpec, err: SystematicError = ZERO_ERROR) -> np.ndarray:
    _single_field(err)
    omega = spec.omega * (1.0 + err.rel_omega)
    phi = spec.phi + err.d_phi
    coupling = omega * np.exp(-1j * phi)
    return np.array([[0.0, coupling], [np.conj(coupling), 0.0]], dtype=complex)


def ideal_dynamical_gate(theta: float, phi: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [
            [c, -1j * np.exp(-1j * phi) * s],
            [-1j * np.exp(1j * phi) * s, c],
        ]
    )


def perturbed_dynamical_gate(spec: RabiGateSpec, err: SystematicError = ZERO_ERROR) -> np.ndarray:
    """Closed-form gate with rotation ``theta*(1 + rel_omega)`` and phase ``phi + d_phi``."""
    _single_field(err)
    return ideal_dynamical_gate(spec.theta * (1.0 + err.rel_omega), spec.phi + err.d_phi)


def exact_dynamical_propagator(spec: RabiGateSpec, err: SystematicError = ZERO_ERROR) -> np.ndarray:
    """Matrix exponential of the shifted Hamiltonian over the nominal duration."""
    return expm_unitary(rabi_hamiltonian(spec, err), spec.duration)


def compose(seq: GateLike, err: SystematicError = ZERO_ERROR) -> np.ndarray:
    """Ordered product of closed-form pulses sharing one systematic error."""
    U = np.eye(2, dtype=complex)
    for spec in _as_sequence(seq):
        U = perturbed_dynamical_gate(spec, err) @ U
    return U


def propagate(seq: GateLike, err: SystematicError = ZERO_ERROR) -> np.ndarray:
    """Same product as :func:`compose`, built from matrix exponentials."""
    U = np.eye(2, dtype=complex)
    for spec in _as_sequence(seq):
        U = exact_dynamical_propagator(spec, err) @ U
    return U


def named_rotation(kind: str, angle: float) -> GateSequence:
    """Pulse recipe for ``exp(i angle sigma_y)`` or, up to a global sign, ``exp(i angle sigma_z)``."""
    if not 0.0 < angle < math.pi:
        raise ValidationError(f"rotation angle must lie in (0, pi), got {angle}")
    if kind == "y_rotation":
        return GateSequence((RabiGateSpec(angle, 1.5 * math.pi),))
    if kind == "z_rotation":
        return GateSequence(
            (
                RabiGateSpec(math.pi / 2, angle / 2),
                RabiGateSpec(math.pi / 2, -angle / 2),
            )
        )
    raise ValidationError(f"unknown rotation kind {kind!r}")


def fidelity_grid(seq: GateLike, err: SystematicError, alpha, beta) -> np.ndarray:
    """Exact per-state fidelity for arrays of Bloch angles."""
    psi = bloch_states(alpha, beta)
    desired = psi @ propagate(seq).T
    actual = psi @ propagate(seq, err).T
    overlap = np.einsum("...i,...i->...", desired.conj(), actual)
    return np.minimum(np.abs(overlap) ** 2, 1.0)


def state_fidelity_exact(seq: GateLike, err: SystematicError, input: BlochAngles) -> float:
    psi = state_from_bloch(input)
    return fidelity(propagate(seq) @ psi, propagate(seq, err) @ psi)


def state_fidelity_order2_grid(spec: RabiGateSpec, err: SystematicError, alpha, beta):
    """Published second-order per-state fidelity, evaluated as printed."""
    _single_field(err)
    th, ph = spec.theta, spec.phi
    rot, dph = th * err.rel_omega, err.d_phi
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    sa, ca = np.sin(alpha), np.cos(alpha)
    s2, s2t = np.sin(th) ** 2, np.sin(2 * th)
    return (
        1.0
        - rot**2 * (1.0 - sa**2 * np.cos(beta - ph) ** 2)
        - dph**2 * (s2 - (ca * s2 + 0.5 * sa * s2t * np.sin(beta - ph)) ** 2)
        - 2.0 * dph * rot * sa * np.cos(beta - ph) * (ca * s2 - 0.5 * sa * s2t * np.sin(beta - ph))
    )


def state_fidelity_order2(spec: RabiGateSpec, err: SystematicError, input: BlochAngles) -> float:
    return float(state_fidelity_order2_grid(spec, err, input.alpha, input.beta))


def average_infidelity_order2(theta: float, err: SystematicError) -> float:
    _single_field(err)
    return (
        2.0 / 3.0 * (theta * err.rel_omega) ** 2
        + err.d_phi**2 * (2.0 / 3.0 * math.sin(theta) ** 2 - math.sin(2 * theta) ** 2 / 12.0)
    )


def average_fidelity_order2(theta: float, err: SystematicError) -> float:
    return 1.0 - average_infidelity_order2(theta, err)
