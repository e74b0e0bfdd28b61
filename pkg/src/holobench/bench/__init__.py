from .adjudicate import (
    TERMS,
    AdjudicationReport,
    CoefficientRow,
    ScalingFit,
    adjudicate_formulas,
    exact_coefficient,
    residual_scaling,
)
from .averaging import (
    AverageConfig,
    AverageResult,
    average_fidelity_numeric,
    haar_angles_from_uniform,
    haar_qubit_sample,
    haar_qubit_samples,
    quadrature_nodes,
    sphere_average,
)
from .compare import ComparisonReport, compare_gates
from .sweep import SweepPlan, SweepRow, sweep

__all__ = [
    "TERMS",
    "AdjudicationReport",
    "AverageConfig",
    "AverageResult",
    "CoefficientRow",
    "ComparisonReport",
    "ScalingFit",
    "SweepPlan",
    "SweepRow",
    "adjudicate_formulas",
    "average_fidelity_numeric",
    "compare_gates",
    "exact_coefficient",
    "haar_angles_from_uniform",
    "haar_qubit_sample",
    "haar_qubit_samples",
    "quadrature_nodes",
    "residual_scaling",
    "sphere_average",
    "sweep",
]
