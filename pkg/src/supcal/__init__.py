"""Support intervals, minimum support intervals and their calibration to confidence intervals."""

__version__ = "0.1.0"

from .bayes_factors import (
    BfCurve,
    bayes_factor,
    bf_curve,
    bf_local_normal,
    bf_nonlocal_moment,
    bf_normal,
    minbf_all,
    minbf_eplogp,
    minbf_local_normal,
)
from .calibration import ci_level_to_min_support, min_support_to_ci_level, transform_interval
from .coverage import FixedN, OptionalStopping, SimConfig, SimResult, simulate_coverage, universal_bound_check
from .design import DesignResult, DesignSpec, JeffreysApprox, design, n_for_existence, n_for_width
from .intervals import jeffreys_si, multiplier, nm_scale_from_mass, support_interval
from .model import (
    ConfidenceInterval,
    EffectiveSample,
    LocalNormalPrior,
    MinFamily,
    MinSupportInterval,
    NonlocalMomentPrior,
    NormalPrior,
    RealInterval,
    SummaryData,
    SupportInterval,
    summary_from_ci,
)

__all__ = [
    "bayes_factor",
    "bf_curve",
    "bf_local_normal",
    "bf_nonlocal_moment",
    "bf_normal",
    "BfCurve",
    "ci_level_to_min_support",
    "ConfidenceInterval",
    "design",
    "DesignResult",
    "DesignSpec",
    "EffectiveSample",
    "FixedN",
    "jeffreys_si",
    "JeffreysApprox",
    "LocalNormalPrior",
    "min_support_to_ci_level",
    "minbf_all",
    "minbf_eplogp",
    "minbf_local_normal",
    "MinFamily",
    "MinSupportInterval",
    "multiplier",
    "n_for_existence",
    "n_for_width",
    "nm_scale_from_mass",
    "NonlocalMomentPrior",
    "NormalPrior",
    "OptionalStopping",
    "RealInterval",
    "SimConfig",
    "SimResult",
    "simulate_coverage",
    "summary_from_ci",
    "SummaryData",
    "support_interval",
    "SupportInterval",
    "transform_interval",
    "universal_bound_check",
]
