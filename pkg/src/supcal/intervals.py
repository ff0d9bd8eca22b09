"""Standard-error multipliers and the intervals built from them.

Every interval type here has the form ``estimate +/- se * M``. ``multiplier``
returns M (or reports that it does not exist) and ``support_interval`` turns
it into a :class:`~supcal.model.RealInterval`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .model import (
    ConfidenceInterval,
    EffectiveSample,
    IntervalMethod,
    LocalNormalPrior,
    MinFamily,
    MinSupportInterval,
    NonlocalMomentPrior,
    NormalPrior,
    RealInterval,
    SummaryData,
    SupportInterval,
)
from .numerics import (
    Bracket,
    find_root,
    lambert_w0_exp,
    lambert_wm1,
    norm_cdf,
    norm_isf,
    norm_pdf,
    norm_quantile,
)

# radicands in [-RADICAND_TOL, 0] count as exactly zero
RADICAND_TOL = 1e-12
_HALF_LOG_E = 0.5


@dataclass(frozen=True)
class MultiplierResult:
    """Outcome of a multiplier computation.

    ``multiplier`` is None when the interval does not exist. ``condition``
    states the existence requirement with the numbers plugged in.
    """

    multiplier: Optional[float]
    exists: bool
    condition: str


def _from_radicand(radicand: float, condition: str) -> MultiplierResult:
    if radicand < -RADICAND_TOL:
        return MultiplierResult(None, False, condition)
    return MultiplierResult(math.sqrt(max(radicand, 0.0)) + 0.0, True, condition)


def _require_data(data, method):
    if data is None:
        raise DomainError(f"{type(method).__name__} multiplier needs summary data")


def _si_radicand(method: SupportInterval, data: SummaryData) -> tuple[float, str]:
    k = method.k
    prior = method.prior
    se2 = data.se ** 2
    if isinstance(prior, NormalPrior):
        sd2 = prior.sd ** 2
        lhs = math.log1p(sd2 / se2) + (data.estimate - prior.mean) ** 2 / (se2 + sd2)
        cond = (f"log(1 + sd^2/se^2) + (estimate - mean)^2/(se^2 + sd^2) = {lhs:.6g}"
                f" >= 2 log k = {2 * math.log(k):.6g}")
        return lhs - 2.0 * math.log(k), cond
    if isinstance(prior, LocalNormalPrior):
        r = prior.sd ** 2 / se2
        lhs = math.log1p(r)
        cond = f"log(1 + sd^2/se^2) = {lhs:.6g} >= 2 log k = {2 * math.log(k):.6g}"
        return (lhs - 2.0 * math.log(k)) * (1.0 + 1.0 / r), cond
    if isinstance(prior, NonlocalMomentPrior):
        ratio = prior.scale / data.se
        r = ratio * ratio
        log_peak = 1.5 * math.log1p(r) if ratio < 1e150 else 3.0 * math.log(ratio)
        cond = f"(1 + s^2/se^2)^(3/2) = {math.exp(min(log_peak, 700)):.6g} >= k = {k:g}"
        # W0 argument (1 + r)^(3/2) sqrt(e) / (2k), handled on the log scale
        w = lambert_w0_exp(log_peak + _HALF_LOG_E - math.log(2.0 * k))
        return (2.0 * w - 1.0) * (1.0 + 1.0 / r), cond
    raise TypeError(f"unknown prior {prior!r}")


def squared_multiplier(method: SupportInterval, data: SummaryData) -> float:
    """M^2 for a support interval, negative when the interval does not exist."""
    return _si_radicand(method, data)[0]


def multiplier(method: IntervalMethod, data: Optional[SummaryData] = None) -> MultiplierResult:
    """Standard-error multiplier M for any of the seven interval types.

    Confidence and minimum support intervals depend only on their level;
    support intervals also need the data (through se, and for the normal
    prior through the estimate as well).
    """
    if isinstance(method, ConfidenceInterval):
        m = norm_quantile(0.5 * (1.0 + method.level))
        return MultiplierResult(m, True, "0 < level < 1")

    if isinstance(method, MinSupportInterval):
        k = method.k
        cond = f"k = {k:g} <= 1"
        if method.family is MinFamily.ALL_PRIORS:
            return MultiplierResult(math.sqrt(max(-2.0 * math.log(k), 0.0)) + 0.0, True, cond)
        if method.family is MinFamily.LOCAL_NORMAL:
            w = lambert_wm1(-k * k / math.e)
            return MultiplierResult(math.sqrt(-w), True, cond)
        w = lambert_wm1(-k / math.e)
        # upper-tail quantile keeps precision when exp(w)/2 is tiny
        return MultiplierResult(norm_isf(0.5 * math.exp(w)), True, cond)

    if isinstance(method, SupportInterval):
        _require_data(data, method)
        radicand, cond = _si_radicand(method, data)
        return _from_radicand(radicand, cond)

    raise TypeError(f"unknown interval method {method!r}")


def _build(data: SummaryData, result: MultiplierResult) -> RealInterval:
    if not result.exists:
        return RealInterval.empty(f"interval does not exist: requires {result.condition}")
    return RealInterval.centred(data.estimate, data.se * result.multiplier)


def support_interval(data: SummaryData, method: IntervalMethod) -> RealInterval:
    """The interval ``estimate +/- se * M`` for ``method``, or Empty if M does not exist."""
    return _build(data, multiplier(method, data))


def jeffreys_multiplier(n: float, k: float, unit_information: bool = False) -> MultiplierResult:
    """Multiplier for Jeffreys's approximate Bayes factor.

    The prior is centred on the estimate with variance of one effective
    observation. ``unit_information=True`` gives the local-normal
    unit-information variant, wider by sqrt(1 + 1/n).
    """
    if n <= 0:
        raise DomainError(f"effective sample size must be > 0, got {n!r}")
    if k <= 0:
        raise DomainError(f"support level must be > 0, got {k!r}")
    radicand = math.log1p(n) - 2.0 * math.log(k)
    if unit_information:
        radicand *= 1.0 + 1.0 / n
    cond = f"n = {n:g} >= k^2 - 1 = {k * k - 1:g}"
    return _from_radicand(radicand, cond)


def jeffreys_si(data: SummaryData, n: EffectiveSample, k: float,
                unit_information: bool = False) -> RealInterval:
    if abs(n.se - data.se) > 1e-6 * data.se:
        warnings.warn(
            f"se = {data.se:.6g} differs from lambda/sqrt(n) = {n.se:.6g}; "
            "the interval uses the supplied se",
            UserWarning,
            stacklevel=2,
        )
    return _build(data, jeffreys_multiplier(n.n, k, unit_information))


# ---------------------------------------------------------------------------
# Eliciting the normal moment scale


def nm_central_mass(halfwidth: float, scale: float) -> float:
    """Probability a NM(0, scale) prior puts on [-halfwidth, halfwidth].

    With u = halfwidth/scale this is E[Z^2; |Z| < u] = 2 Phi(u) - 1 - 2 u phi(u).
    """
    u = halfwidth / scale
    return 2.0 * norm_cdf(u) - 1.0 - 2.0 * u * norm_pdf(u)


def nm_scale_from_mass(halfwidth: float, mass: float) -> float:
    """Scale of the normal moment prior that puts ``mass`` within +/- ``halfwidth`` of its centre."""
    if not halfwidth > 0 or not math.isfinite(halfwidth):
        raise DomainError(f"halfwidth must be > 0, got {halfwidth!r}")
    if not 0.0 < mass < 1.0:
        raise DomainError(f"mass must lie in (0, 1), got {mass!r}")

    # solve in u = halfwidth/scale, where the mass is increasing from 0 to 1
    def excess(u):
        return 2.0 * norm_cdf(u) - 1.0 - 2.0 * u * norm_pdf(u) - mass

    u = find_root(excess, Bracket(1e-8, 40.0), tol=1e-14)
    return halfwidth / u
