"""Monotone quantum metrics and deformed group actions on density matrices."""

from ._qig import (
    QigConditioningError,
    QigConvergenceError,
    QigDimensionError,
    QigDomainError,
    QigUsageError,
    __version__,
    act_beta,
    act_gamma,
    act_zeta,
    apply_K,
    derivative_at_zero,
    eval_f,
    fisher_rao,
    fund_W,
    fund_W_deformed,
    fund_X,
    fund_Y,
    fund_Z,
    gradient_field,
    hermitian_eig,
    matrix_exp,
    matrix_log,
    matrix_power,
    metric_eval,
    monotonicity_witness,
    random_density,
    random_observable,
    random_unitary,
)

__all__ = [
    "QigConditioningError",
    "QigConvergenceError",
    "QigDimensionError",
    "QigDomainError",
    "QigUsageError",
    "__version__",
    "act_beta",
    "act_gamma",
    "act_zeta",
    "apply_K",
    "derivative_at_zero",
    "eval_f",
    "fisher_rao",
    "fund_W",
    "fund_W_deformed",
    "fund_X",
    "fund_Y",
    "fund_Z",
    "gradient_field",
    "hermitian_eig",
    "matrix_exp",
    "matrix_log",
    "matrix_power",
    "metric_eval",
    "monotonicity_witness",
    "random_density",
    "random_observable",
    "random_unitary",
]
