"""Geometric versus dynamical sensitivity to a Rabi-frequency error."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .. import dynamical, holonomic
from ..dynamical import RabiGateSpec
from ..holonomic import LambdaGateSpec, SystematicError
from ..qmath import ValidationError
from .averaging import AverageConfig, average_fidelity_numeric

HADAMARD_THETA = math.pi / 4
HADAMARD_NOTE = (
    "the dynamical decomposition of the Hadamard gate is not fixed; the ratio is "
    "quoted at theta = pi/4 for both gates and tabulated over theta"
)


@dataclass(frozen=True)
class ComparisonRow:
    theta: float
    geometric_formula: float
    dynamical_formula: float
    formula_ratio: float
    geometric_oracle: float
    dynamical_oracle: float
    oracle_ratio: float
    duration_ratio: float


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[ComparisonRow, ...]
    rel_omega: float
    half_ratio_check: float
    half_ratio_oracle: float
    hadamard_ratio: float
    hadamard_ratio_oracle: float
    note: str = HADAMARD_NOTE

    @property
    def theta_grid(self):
        return tuple(r.theta for r in self.rows)


def _formula_infidelities(theta: float, err: SystematicError):
    return (
        holonomic.average_infidelity_order2(theta, err),
        dynamical.average_infidelity_order2(theta, err),
    )


def _oracle_infidelities(theta: float, err: SystematicError, cfg: AverageConfig):
    geo = average_fidelity_numeric(LambdaGateSpec(theta), err, cfg).mean
    dyn = average_fidelity_numeric(RabiGateSpec(theta), err, cfg).mean
    return 1.0 - geo, 1.0 - dyn


def compare_gates(theta_grid=(math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2),
                  err: SystematicError = SystematicError(rel_omega=0.01),
                  cfg: AverageConfig = AverageConfig()) -> ComparisonReport:
    """Rabi-error infidelities of both gates over ``theta_grid``.

    Only ``err.rel_omega`` is used.  ``half_ratio_check`` divides the largest
    dynamical infidelity over ``theta <= pi/2`` by the smallest geometric one
    over ``theta <= pi``; the extremal angles pi/2 and pi are always included.
    """
    if err.rel_omega == 0.0:
        raise ValidationError("comparison needs a nonzero rel_omega")
    rabi = SystematicError(rel_omega=err.rel_omega)
    thetas = [float(t) for t in theta_grid]
    if not thetas or any(not 0.0 < t <= math.pi for t in thetas):
        raise ValidationError("theta grid must be non-empty and inside (0, pi]")

    rows = []
    for theta in thetas:
        gf, df = _formula_infidelities(theta, rabi)
        go, do = _oracle_infidelities(theta, rabi, cfg)
        rows.append(ComparisonRow(theta, gf, df, df / gf, go, do, do / go, theta / math.pi))

    dyn_thetas = sorted({t for t in thetas if t <= math.pi / 2} | {math.pi / 2})
    geo_thetas = sorted(set(thetas) | {math.pi})
    half_formula = (max(_formula_infidelities(t, rabi)[1] for t in dyn_thetas)
                    / min(_formula_infidelities(t, rabi)[0] for t in geo_thetas))
    half_oracle = (max(_oracle_infidelities(t, rabi, cfg)[1] for t in dyn_thetas)
                   / min(_oracle_infidelities(t, rabi, cfg)[0] for t in geo_thetas))

    gh, dh = _formula_infidelities(HADAMARD_THETA, rabi)
    go, do = _oracle_infidelities(HADAMARD_THETA, rabi, cfg)
    return ComparisonReport(
        rows=tuple(rows),
        rel_omega=err.rel_omega,
        half_ratio_check=half_formula,
        half_ratio_oracle=half_oracle,
        hadamard_ratio=gh / dh,
        hadamard_ratio_oracle=go / do,
    )
