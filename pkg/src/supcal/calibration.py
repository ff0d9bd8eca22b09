"""Mapping between confidence levels and minimum support levels.

For the three minimum-support families the multiplier depends on k alone, so
each k corresponds to exactly one confidence level and back. Intervals of any
type can also be converted into each other by rescaling their half-width
with the ratio of multipliers.
"""

from __future__ import annotations

import math

from .errors import DomainError, InconsistentIntervalError, MappingUndefinedError
from .intervals import multiplier, support_interval
from .model import (
    ConfidenceInterval,
    IntervalKind,
    IntervalMethod,
    MinFamily,
    MinSupportInterval,
    RealInterval,
    SummaryData,
)
from .numerics import norm_quantile, norm_sf

_INV_E = math.exp(-1.0)


def ci_level_to_min_support(level: float, family: MinFamily) -> float:
    """Minimum support level k whose interval coincides with the ``level`` CI."""
    family = MinFamily(family)
    ConfidenceInterval(level)
    z = norm_quantile(0.5 * (1.0 + level))
    if family is MinFamily.ALL_PRIORS:
        return math.exp(-0.5 * z * z)
    if family is MinFamily.LOCAL_NORMAL:
        if z < 1.0:
            raise MappingUndefinedError(
                f"local normal mapping needs level >= {2 * norm_sf(-1.0) - 1:.6f} "
                f"(multiplier >= 1); got level {level:g}"
            )
        return z * math.exp(0.5 * (1.0 - z * z))
    p = 1.0 - level
    if p > _INV_E:
        raise MappingUndefinedError(
            f"-e p log p mapping needs level >= 1 - 1/e = {1 - _INV_E:.6f}; got level {level:g}"
        )
    return -math.e * p * math.log(p)


def min_support_to_ci_level(k: float, family: MinFamily) -> float:
    """Confidence level 2 Phi(M_k) - 1 of the CI equal to the k minimum support interval."""
    if not 0.0 < k <= 1.0:
        raise DomainError(f"minimum support level must satisfy 0 < k <= 1, got {k!r}")
    m = multiplier(MinSupportInterval(k, MinFamily(family))).multiplier
    return 1.0 - 2.0 * norm_sf(m)


def transform_interval(interval: RealInterval, source: IntervalMethod, target: IntervalMethod,
                       data: SummaryData) -> RealInterval:
    """Convert an interval of type ``source`` into one of type ``target``.

    Subtract the estimate, scale by M_target / M_source, add the estimate
    back. ``interval`` must agree with ``source`` applied to ``data`` within
    1e-6 standard errors. A target whose multiplier does not exist yields an
    Empty interval carrying the existence condition.
    """
    m_src = multiplier(source, data)
    if not m_src.exists or interval.kind is IntervalKind.EMPTY:
        raise InconsistentIntervalError("cannot transform from a nonexistent interval")
    expected = support_interval(data, source)
    tol = 1e-6 * data.se
    if abs(interval.lower - expected.lower) > tol or abs(interval.upper - expected.upper) > tol:
        raise InconsistentIntervalError(
            f"interval [{interval.lower}, {interval.upper}] does not match the source method "
            f"applied to the data: [{expected.lower}, {expected.upper}]"
        )

    m_tgt = multiplier(target, data)
    if not m_tgt.exists:
        return RealInterval.empty(f"interval does not exist: requires {m_tgt.condition}")
    centre = data.estimate
    if m_src.multiplier == 0.0:
        return RealInterval.centred(centre, data.se * m_tgt.multiplier)
    ratio = m_tgt.multiplier / m_src.multiplier
    lower = centre + (interval.lower - centre) * ratio
    upper = centre + (interval.upper - centre) * ratio
    if lower == upper:
        return RealInterval.point(centre)
    return RealInterval.bounded(lower, upper)
