"""Averages of per-state quantities over pure qubit inputs.

The measure is uniform on the Bloch sphere, ``d(cos alpha) d(beta) / (4 pi)``.
Quadrature uses Gauss-Legendre nodes in ``cos(alpha)`` and equally spaced
nodes in ``beta``; every integrand met here is a low-order trigonometric
polynomial, for which this rule is exact.  Monte Carlo draws Haar-random states
in fixed-size chunks, each chunk seeded from ``(seed, chunk_index)`` so that the
stream does not depend on how chunks are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import dynamical, holonomic
from ..holonomic import LambdaGateSpec, SystematicError
from ..qmath import BlochAngles, ValidationError

MC_CHUNK = 1 << 16


@dataclass(frozen=True)
class AverageConfig:
    method: str = "quadrature"
    nodes_alpha: int = 64
    nodes_beta: int = 64
    samples: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.method not in ("quadrature", "monte_carlo"):
            raise ValidationError(f"unknown averaging method {self.method!r}")
        for name in ("nodes_alpha", "nodes_beta", "samples"):
            if int(getattr(self, name)) < 4:
                raise ValidationError(f"{name} must be >= 4")
        if not 0 <= int(self.seed) < 2**64:
            raise ValidationError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class AverageResult:
    mean: float
    std_error: float
    leakage_mean: float = 0.0


def quadrature_nodes(nodes_alpha: int = 64, nodes_beta: int = 64):
    """Flattened ``(alpha, beta, weight)`` arrays; weights sum to one."""
    x, w = np.polynomial.legendre.leggauss(nodes_alpha)
    beta = 2.0 * math.pi * np.arange(nodes_beta) / nodes_beta
    A, B = np.meshgrid(np.arccos(x), beta, indexing="ij")
    W = np.outer(w / 2.0, np.full(nodes_beta, 1.0 / nodes_beta))
    return A.ravel(), B.ravel(), W.ravel()


def haar_angles_from_uniform(u, v):
    """Map uniforms on [0, 1) to Haar-distributed Bloch angles."""
    return np.arccos(1.0 - 2.0 * np.asarray(u, dtype=float)), 2.0 * math.pi * np.asarray(v, dtype=float)


def haar_qubit_sample(rng: np.random.Generator) -> BlochAngles:
    u, v = rng.random(2)
    alpha, beta = haar_angles_from_uniform(u, v)
    return BlochAngles(float(alpha), float(beta))


def haar_qubit_samples(n: int, seed: int):
    """Deterministic Haar angles; sample ``i`` depends only on ``(seed, i)``."""
    alphas, betas = [], []
    for chunk, start in enumerate(range(0, n, MC_CHUNK)):
        size = min(MC_CHUNK, n - start)
        ss = np.random.SeedSequence(int(seed), spawn_key=(chunk,))
        uv = np.random.Generator(np.random.Philox(ss)).random((MC_CHUNK, 2))[:size]
        a, b = haar_angles_from_uniform(uv[:, 0], uv[:, 1])
        alphas.append(a)
        betas.append(b)
    return np.concatenate(alphas), np.concatenate(betas)


def sphere_average(func, cfg: AverageConfig = AverageConfig()):
    """Average ``func(alpha, beta)`` (which may return a tuple of arrays).

    Returns a list of ``(mean, std_error)`` pairs, one per returned array.
    """
    if cfg.method == "quadrature":
        alpha, beta, weight = quadrature_nodes(cfg.nodes_alpha, cfg.nodes_beta)
    else:
        alpha, beta = haar_qubit_samples(cfg.samples, cfg.seed)
        weight = None
    values = func(alpha, beta)
    if not isinstance(values, tuple):
        values = (values,)
    out = []
    for v in values:
        if weight is not None:
            out.append((float(np.dot(weight, v)), 0.0))
        else:
            out.append((float(np.mean(v)), float(np.std(v, ddof=1) / math.sqrt(v.size))))
    return out


def exact_fidelity_grid(spec, err: SystematicError, alpha, beta):
    """Exact per-state (fidelity, leakage) arrays for either gate kind."""
    if isinstance(spec, LambdaGateSpec):
        return holonomic.fidelity_and_leakage_grid(spec, err, alpha, beta)
    fid = dynamical.fidelity_grid(spec, err, alpha, beta)
    return fid, np.zeros_like(fid)


def paper_fidelity_grid(spec, err: SystematicError, alpha, beta):
    """Published second-order per-state fidelity for either gate kind."""
    if isinstance(spec, LambdaGateSpec):
        return holonomic.state_fidelity_order2_grid(spec, err, alpha, beta)
    return dynamical.state_fidelity_order2_grid(spec, err, alpha, beta)


def paper_average(spec, err: SystematicError) -> float:
    if isinstance(spec, LambdaGateSpec):
        return holonomic.average_fidelity_order2(spec.theta, err)
    return dynamical.average_fidelity_order2(spec.theta, err)


def average_fidelity_numeric(spec, err: SystematicError, cfg: AverageConfig = AverageConfig()) -> AverageResult:
    """Sphere-averaged exact fidelity (and leakage) of a geometric or dynamical gate.

    ``spec`` is a :class:`LambdaGateSpec` for the geometric gate, or a
    ``RabiGateSpec``/``GateSequence`` for the dynamical one.
    """
    (mean, se), (leak, _) = sphere_average(lambda a, b: exact_fidelity_grid(spec, err, a, b), cfg)
    return AverageResult(mean=mean, std_error=se, leakage_mean=leak)


def average_paper_per_state(spec, err: SystematicError, cfg: AverageConfig = AverageConfig()) -> float:
    """Sphere average of the published per-state second-order formula."""
    ((mean, _),) = sphere_average(lambda a, b: paper_fidelity_grid(spec, err, a, b), cfg)
    return mean
