"""Bayes factors BF01(estimate; theta0) viewed as functions of the null value.

All evaluators work on the log scale and exponentiate at the end, so that
standardized distances of a few hundred do not underflow to zero before the
log is taken. The ``_log_*`` kernels accept numpy arrays and broadcast; the
public functions take the domain types and return floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedMethodError
from .model import (
    ConfidenceInterval,
    IntervalMethod,
    LocalNormalPrior,
    MinFamily,
    MinSupportInterval,
    NonlocalMomentPrior,
    NormalPrior,
    SummaryData,
    SupportInterval,
)
from .numerics import Bracket, log_norm_sf

_LOG_2 = math.log(2.0)


def _log_bf_normal(estimate, se, mean, sd, theta0):
    s2 = se * se
    t2 = sd * sd
    return 0.5 * np.log1p(t2 / s2) - 0.5 * (
        (estimate - theta0) ** 2 / s2 - (estimate - mean) ** 2 / (s2 + t2)
    )


def _shrunk_z2(estimate, se, sd, theta0):
    """(estimate - theta0)^2 / (se^2 (1 + se^2/sd^2))."""
    s2 = se * se
    return (estimate - theta0) ** 2 / (s2 * (1.0 + s2 / (sd * sd)))


def _log_bf_local_normal(estimate, se, sd, theta0):
    return 0.5 * np.log1p((sd / se) ** 2) - 0.5 * _shrunk_z2(estimate, se, sd, theta0)


def _log_bf_nonlocal_moment(estimate, se, scale, theta0):
    y = _shrunk_z2(estimate, se, scale, theta0)
    return 1.5 * np.log1p((scale / se) ** 2) - 0.5 * y - np.log1p(y)


def _log_minbf_all(estimate, se, theta0):
    z = (estimate - theta0) / se
    return -0.5 * z * z


def _log_minbf_local_normal(estimate, se, theta0):
    z = abs((estimate - theta0) / se)
    if z <= 1.0:
        return 0.0
    return math.log(z) - 0.5 * z * z + 0.5


def _log_minbf_eplogp(estimate, se, theta0):
    z = abs((estimate - theta0) / se)
    log_p = _LOG_2 + log_norm_sf(z)
    if log_p > -1.0:
        return 0.0
    return 1.0 + log_p + math.log(-log_p)


# ---------------------------------------------------------------------------
# Public evaluators


def _exp(log_value: float) -> float:
    # BF01 can exceed the double range when the prior sits far from the data
    return math.inf if log_value > 709.78 else math.exp(log_value)


def bf_normal(data: SummaryData, prior: NormalPrior, theta0: float) -> float:
    """Bayes factor against a fixed normal prior N(mean, sd^2) under H1."""
    return _exp(_log_bf_normal(data.estimate, data.se, prior.mean, prior.sd, theta0))


def bf_local_normal(data: SummaryData, prior: LocalNormalPrior, theta0: float) -> float:
    """Bayes factor against N(theta0, sd^2) under H1; peaks at theta0 = estimate."""
    return _exp(_log_bf_local_normal(data.estimate, data.se, prior.sd, theta0))


def bf_nonlocal_moment(data: SummaryData, prior: NonlocalMomentPrior, theta0: float) -> float:
    """Bayes factor against a normal moment prior centred at theta0."""
    return _exp(_log_bf_nonlocal_moment(data.estimate, data.se, prior.scale, theta0))


def minbf_all(data: SummaryData, theta0: float) -> float:
    """Smallest BF over all priors: a point mass at the estimate."""
    return _exp(_log_minbf_all(data.estimate, data.se, theta0))


def minbf_local_normal(data: SummaryData, theta0: float) -> float:
    """Smallest BF over local normal priors (variance chosen to maximise the marginal)."""
    return _exp(_log_minbf_local_normal(data.estimate, data.se, theta0))


def minbf_eplogp(data: SummaryData, theta0: float) -> float:
    """The -e p log(p) bound with two-sided p-value p = 2(1 - Phi(|z|))."""
    return _exp(_log_minbf_eplogp(data.estimate, data.se, theta0))


def log_bayes_factor(data: SummaryData, method: IntervalMethod, theta0: float) -> float:
    """log BF01 for the Bayes factor underlying a support or minimum support interval."""
    est, se = data.estimate, data.se
    if isinstance(method, SupportInterval):
        prior = method.prior
        if isinstance(prior, NormalPrior):
            return float(_log_bf_normal(est, se, prior.mean, prior.sd, theta0))
        if isinstance(prior, LocalNormalPrior):
            return float(_log_bf_local_normal(est, se, prior.sd, theta0))
        if isinstance(prior, NonlocalMomentPrior):
            return float(_log_bf_nonlocal_moment(est, se, prior.scale, theta0))
        raise TypeError(f"unknown prior {prior!r}")
    if isinstance(method, MinSupportInterval):
        if method.family is MinFamily.ALL_PRIORS:
            return _log_minbf_all(est, se, theta0)
        if method.family is MinFamily.LOCAL_NORMAL:
            return _log_minbf_local_normal(est, se, theta0)
        return _log_minbf_eplogp(est, se, theta0)
    if isinstance(method, ConfidenceInterval):
        raise UnsupportedMethodError("confidence intervals have no Bayes factor curve")
    raise TypeError(f"unknown interval method {method!r}")


def bayes_factor(data: SummaryData, method: IntervalMethod, theta0: float) -> float:
    return _exp(log_bayes_factor(data, method, theta0))


def log_bf_at(estimate, se, method: SupportInterval, theta0):
    """Vectorised log BF01 for a support-interval method.

    ``estimate`` and ``se`` may be arrays (broadcast together with ``theta0``).
    Used by the coverage simulator, where the data vary and the null is fixed.
    """
    if not isinstance(method, SupportInterval):
        raise UnsupportedMethodError("vectorised evaluation is only defined for support intervals")
    prior = method.prior
    if isinstance(prior, NormalPrior):
        return _log_bf_normal(estimate, se, prior.mean, prior.sd, theta0)
    if isinstance(prior, LocalNormalPrior):
        return _log_bf_local_normal(estimate, se, prior.sd, theta0)
    return _log_bf_nonlocal_moment(estimate, se, prior.scale, theta0)


# ---------------------------------------------------------------------------
# Curves


@dataclass(frozen=True)
class BfCurve:
    """BF01 evaluated on a uniform grid of null values."""

    method: IntervalMethod
    theta0: np.ndarray
    bf01: np.ndarray

    def __len__(self):
        return len(self.theta0)

    def argmax(self) -> float:
        return float(self.theta0[int(np.argmax(self.bf01))])

    def crossings(self, k: float) -> list[float]:
        """Null values where the curve crosses height k, by linear interpolation."""
        above = self.bf01 >= k
        out = []
        for i in np.flatnonzero(above[1:] != above[:-1]):
            x0, x1 = self.theta0[i], self.theta0[i + 1]
            y0, y1 = self.bf01[i], self.bf01[i + 1]
            out.append(float(x0 + (k - y0) * (x1 - x0) / (y1 - y0)))
        return out


def bf_curve(data: SummaryData, method: IntervalMethod, range: Bracket, points: int = 401) -> BfCurve:
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points}")
    if isinstance(method, ConfidenceInterval):
        raise UnsupportedMethodError("confidence intervals have no Bayes factor curve")
    grid = np.linspace(range.lo, range.hi, points)
    values = np.array([bayes_factor(data, method, t) for t in grid])
    return BfCurve(method, grid, values)
