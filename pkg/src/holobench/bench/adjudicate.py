"""Checks of the published second-order fidelity formulas against exact averages.

Each *term* isolates one error channel of one gate kind.  For a term the
sphere-averaged infidelity is expanded as ``c * x**2 + O(x**4)`` where ``x`` is
the natural small parameter of that channel (see ``Term.unit``).  Three
estimates of ``c`` are compared:

* ``paper``: read off the published averaged formula,
* ``per_state``: quadrature of the published per-state formula,
* ``exact``: Richardson extrapolation of the exact averaged infidelity.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from ..dynamical import RabiGateSpec
from ..holonomic import LambdaGateSpec, SystematicError
from ..qmath import ValidationError
from .averaging import AverageConfig, average_fidelity_numeric, average_paper_per_state, paper_average

RESIDUAL_FLOOR = 1e-14
REL_TOL = 0.01
ABS_FLOOR = 1e-6
DEFAULT_THETAS = (math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi)


@dataclass(frozen=True)
class Term:
    name: str
    gate_kind: str
    channel: str
    unit: str

    def spec(self, theta: float, phi: float = 0.0):
        if self.gate_kind == "geometric":
            return LambdaGateSpec(theta, phi)
        return RabiGateSpec(theta, phi)

    def error(self, delta: float) -> SystematicError:
        return SystematicError(**{self.channel: delta})

    def variable(self, delta: float) -> float:
        # geometric Rabi coefficients are quoted per (pi * dOmega/Omega)^2
        if self.name == "geometric_domega":
            return math.pi * delta
        return delta


TERMS = {
    t.name: t
    for t in (
        Term("geometric_domega", "geometric", "rel_omega", "(pi*dOmega/Omega)^2"),
        Term("geometric_dtheta", "geometric", "d_theta", "dtheta^2"),
        Term("geometric_dphi", "geometric", "d_phi", "dphi^2"),
        Term("dynamical_domega", "dynamical", "rel_omega", "(dOmega/Omega)^2"),
        Term("dynamical_dphi", "dynamical", "d_phi", "dphi^2"),
    )
}


def _term(term) -> Term:
    if isinstance(term, Term):
        return term
    try:
        return TERMS[term]
    except KeyError:
        raise ValidationError(f"unknown term {term!r}; expected one of {sorted(TERMS)}") from None


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    r_squared: float
    window: tuple[float, float]
    exact_match: bool = False


def residual_scaling(term, theta: float, window=(1e-3, 1e-2), n_points: int = 6,
                     cfg: AverageConfig = AverageConfig()) -> ScalingFit:
    """Log-log slope of ``|exact average - published average|`` against the error size.

    A slope near 2 means the published second-order coefficient is wrong; a
    slope of 3 or more means it is right and only higher orders remain.
    Residuals below ``RESIDUAL_FLOOR`` are rounding noise and are dropped; if
    fewer than five points survive the fit is reported as an exact match.
    """
    term = _term(term)
    lo, hi = window
    if not 1e-4 <= lo < hi <= 5e-2:
        raise ValidationError(f"window {window} must lie within [1e-4, 5e-2]")
    if n_points < 5:
        raise ValidationError("n_points must be >= 5")
    spec = term.spec(theta)
    deltas = np.geomspace(lo, hi, n_points)
    residuals = np.array([
        abs(average_fidelity_numeric(spec, term.error(d), cfg).mean - paper_average(spec, term.error(d)))
        for d in deltas
    ])
    keep = residuals >= RESIDUAL_FLOOR
    if keep.sum() < 5:
        return ScalingFit(math.nan, math.nan, math.nan, (lo, hi), exact_match=True)
    x, y = np.log(deltas[keep]), np.log(residuals[keep])
    slope, intercept = np.polyfit(x, y, 1)
    fit = slope * x + intercept
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum((y - fit) ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return ScalingFit(float(slope), float(intercept), min(1.0, max(0.0, r2)), (lo, hi))


def exact_coefficient(term, theta: float, delta: float = 1e-3, cfg: AverageConfig = AverageConfig()) -> float:
    """Second-order coefficient of the exact averaged infidelity.

    Two-point Richardson on ``(1 - F)/x^2`` at ``delta`` and ``delta/2``; the
    averaged infidelity is even in the error, so this removes the ``x^2``
    correction.
    """
    term = _term(term)
    spec = term.spec(theta)

    def scaled(d):
        return (1.0 - average_fidelity_numeric(spec, term.error(d), cfg).mean) / term.variable(d) ** 2

    return (4.0 * scaled(delta / 2) - scaled(delta)) / 3.0


def paper_coefficient(term, theta: float, delta: float = 1e-3) -> float:
    term = _term(term)
    return (1.0 - paper_average(term.spec(theta), term.error(delta))) / term.variable(delta) ** 2


def per_state_coefficient(term, theta: float, delta: float = 1e-3, cfg: AverageConfig = AverageConfig()) -> float:
    term = _term(term)
    F = average_paper_per_state(term.spec(theta), term.error(delta), cfg)
    return (1.0 - F) / term.variable(delta) ** 2


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= REL_TOL * max(abs(a), abs(b)) + ABS_FLOOR


@dataclass(frozen=True)
class CoefficientRow:
    term: str
    theta: float
    unit: str
    paper: float
    per_state: float
    exact: float
    residual_slope: float
    verdict: str


@dataclass(frozen=True)
class AdjudicationReport:
    rows: tuple[CoefficientRow, ...]

    def row(self, term: str, theta: float) -> CoefficientRow:
        for r in self.rows:
            if r.term == term and math.isclose(r.theta, theta, abs_tol=1e-12):
                return r
        raise KeyError((term, theta))

    def as_records(self) -> list[dict]:
        return [asdict(r) for r in self.rows]


def adjudicate_formulas(theta_grid=DEFAULT_THETAS, delta: float = 1e-3,
                        window=(1e-3, 1e-2), cfg: AverageConfig = AverageConfig()) -> AdjudicationReport:
    """Compare every term at every ``theta``; verdicts use a 1% relative tolerance.

    A term is ``consistent`` only when both the published averaged coefficient
    and the averaged per-state formula match the exact coefficient.
    """
    thetas = [float(t) for t in theta_grid]
    for t in thetas:
        if not 0.0 < t <= math.pi + 1e-12:
            raise ValidationError(f"theta={t} outside (0, pi]")
    rows = []
    for term in TERMS.values():
        for theta in thetas:
            paper = paper_coefficient(term, theta, delta)
            per_state = per_state_coefficient(term, theta, delta, cfg)
            exact = exact_coefficient(term, theta, delta, cfg)
            fit = residual_scaling(term, theta, window, cfg=cfg)
            verdict = "consistent" if _close(paper, exact) and _close(per_state, exact) else "discrepant"
            rows.append(CoefficientRow(term.name, theta, term.unit, paper, per_state, exact,
                                       fit.slope, verdict))
    return AdjudicationReport(tuple(rows))
