"""One-parameter sweeps of averaged gate fidelity."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from ..dynamical import RabiGateSpec
from ..holonomic import LambdaGateSpec, SystematicError
from ..qmath import NumericInvariantError, ValidationError
from .averaging import AverageConfig, average_fidelity_numeric, paper_average

THREADS_ENV = "HOLOBENCH_THREADS"
GATE_KINDS = ("geometric", "dynamical")
AXES = ("theta", "rel_omega", "d_theta", "d_phi")


@dataclass(frozen=True)
class SweepPlan:
    gate_kind: str
    axis: str
    grid: tuple
    theta: float = np.pi / 2
    phi: float = 0.0
    omega: float = 1.0
    errors: SystematicError = field(default_factory=SystematicError)
    averaging: AverageConfig = field(default_factory=AverageConfig)

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(float(g) for g in self.grid))
        if self.gate_kind not in GATE_KINDS:
            raise ValidationError(f"gate_kind must be one of {GATE_KINDS}, got {self.gate_kind!r}")
        if self.axis not in AXES:
            raise ValidationError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.gate_kind == "dynamical" and (self.axis == "d_theta" or self.errors.d_theta != 0):
            raise ValidationError("d_theta is not defined for the dynamical gate")
        if not self.grid:
            raise ValidationError("sweep grid is empty")
        steps = np.diff(self.grid)
        if len(steps) and not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValidationError("sweep grid must be strictly monotone")

    def point(self, value: float):
        """Gate spec and error for one grid value."""
        theta, errors = self.theta, self.errors
        if self.axis == "theta":
            theta = value
        else:
            errors = replace(errors, **{self.axis: value})
        cls = LambdaGateSpec if self.gate_kind == "geometric" else RabiGateSpec
        return cls(theta, self.phi, self.omega), errors


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    exact_avg_fidelity: float
    paper_avg_fidelity: float
    leakage_avg: float
    mc_std_error: float


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValidationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def _evaluate(plan: SweepPlan, value: float) -> SweepRow:
    try:
        spec, err = plan.point(value)
        res = average_fidelity_numeric(spec, err, plan.averaging)
        paper = paper_average(spec, err)
    except (ValidationError, NumericInvariantError) as exc:
        raise type(exc)(f"sweep point {plan.axis}={value!r}: {exc}") from exc
    return SweepRow(
        axis_value=value,
        exact_avg_fidelity=res.mean,
        paper_avg_fidelity=paper,
        leakage_avg=res.leakage_mean,
        mc_std_error=res.std_error,
    )


def sweep(plan: SweepPlan, threads: int | None = None) -> list[SweepRow]:
    """Evaluate every grid point independently; rows come back in grid order."""
    threads = threads or _thread_count()
    if threads == 1:
        return [_evaluate(plan, v) for v in plan.grid]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda v: _evaluate(plan, v), plan.grid))
