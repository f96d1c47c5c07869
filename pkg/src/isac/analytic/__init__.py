"""Analytic engine: coverage probabilities and ergodic metrics by numerical integration."""
from ._common import (
    DEFAULT_OPTIONS,
    PATHS,
    DegenerateConditionError,
    EvalOptions,
    FormulaError,
)
from .communication import (
    comm_cov_ser,
    comm_cov_sinr,
    interference_rate,
    laplace_interference,
    ser_of_sinr,
    sinr_for_ser,
    tail_factor,
)
from .ergodic import (
    ERGODIC_METRICS,
    ergodic,
    ergodic_crlb,
    ergodic_crlb_given_ser,
    ergodic_crlb_given_sinr,
    ergodic_rate,
    ergodic_rate_given_crlb,
    ergodic_ser,
    ergodic_ser_given_crlb,
)
from .joint import (
    METRICS,
    CoverageQuery,
    conditional_cov,
    coverage,
    joint_cov,
    joint_cov_conditional,
    joint_cov_sinr,
    metric_thresholds,
    positioning_marginal,
)
from .positioning import (
    localizability,
    localizability_curve,
    mu_of_eps1,
    participation_weights,
    pmf_participation,
    positioning_cov,
    positioning_cov_conditional,
)
