"""Domain types: summary data, priors, interval methods and real intervals."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union

from .errors import DomainError, UnsupportedLevelError
from .numerics import norm_quantile


def _finite(name, value):
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")


def _positive(name, value):
    _finite(name, value)
    if value <= 0:
        raise DomainError(f"{name} must be > 0, got {value!r}")


@dataclass(frozen=True)
class SummaryData:
    """Estimate and standard error of an approximately normal estimator."""

    estimate: float
    se: float

    def __post_init__(self):
        _finite("estimate", self.estimate)
        _positive("se", self.se)


# ---------------------------------------------------------------------------
# Priors under the alternative


@dataclass(frozen=True)
class NormalPrior:
    mean: float
    sd: float

    def __post_init__(self):
        _finite("prior mean", self.mean)
        _positive("prior sd", self.sd)

    def describe(self) -> str:
        return (f"Normal prior for parameter under alternative\n"
                f"with mean m = {self.mean:g} and standard deviation sd = {self.sd:g}")


@dataclass(frozen=True)
class LocalNormalPrior:
    """Normal prior centred on the tested null value."""

    sd: float

    def __post_init__(self):
        _positive("prior sd", self.sd)

    def describe(self) -> str:
        return (f"Local normal prior for parameter under alternative\n"
                f"centred at the null value with standard deviation sd = {self.sd:g}")


@dataclass(frozen=True)
class NonlocalMomentPrior:
    """Normal moment prior: N(theta0, scale^2) density times (theta - theta0)^2 / scale^2."""

    scale: float

    def __post_init__(self):
        _positive("prior scale", self.scale)

    def describe(self) -> str:
        return (f"Nonlocal normal moment prior for parameter under alternative\n"
                f"centred at the null value with scale s = {self.scale:g}")


PriorSpec = Union[NormalPrior, LocalNormalPrior, NonlocalMomentPrior]


class MinFamily(str, enum.Enum):
    """Prior classes over which a minimum Bayes factor is taken."""

    ALL_PRIORS = "all"
    LOCAL_NORMAL = "local-normal"
    EPLOGP = "eplogp"

    def describe(self) -> str:
        return {
            MinFamily.ALL_PRIORS: "Minimum over all priors for parameter under alternative",
            MinFamily.LOCAL_NORMAL: "Minimum over local normal priors for parameter under alternative",
            MinFamily.EPLOGP: "Minimum over p-value based (-e p log p) alternatives",
        }[self]


# ---------------------------------------------------------------------------
# Interval methods


@dataclass(frozen=True)
class ConfidenceInterval:
    level: float

    def __post_init__(self):
        _finite("confidence level", self.level)
        if not 0.0 < self.level < 1.0:
            raise DomainError(f"confidence level must lie in (0, 1), got {self.level!r}")

    def describe(self) -> str:
        return "Wald confidence interval"

    def title(self) -> str:
        return f"{_fmt_pct(self.level)} Confidence Interval"


@dataclass(frozen=True)
class SupportInterval:
    k: float
    prior: PriorSpec

    def __post_init__(self):
        _positive("support level k", self.k)

    def describe(self) -> str:
        return self.prior.describe()

    def title(self) -> str:
        return f"k = {_fmt_k(self.k)} Support Interval"


@dataclass(frozen=True)
class MinSupportInterval:
    k: float
    family: MinFamily

    def __post_init__(self):
        _positive("support level k", self.k)
        if self.k > 1.0:
            raise UnsupportedLevelError(
                f"minimum support intervals exist only for k <= 1, got k = {self.k:g}"
            )
        object.__setattr__(self, "family", MinFamily(self.family))

    def describe(self) -> str:
        return self.family.describe()

    def title(self) -> str:
        return f"k = {_fmt_k(self.k)} Minimum Support Interval"


IntervalMethod = Union[ConfidenceInterval, SupportInterval, MinSupportInterval]


def _fmt_k(k: float) -> str:
    if k < 1:
        inv = 1.0 / k
        if abs(inv - round(inv, 1)) < 1e-9:
            return f"1/{round(inv, 1):g}"
    return f"{k:g}"


def _fmt_pct(level: float) -> str:
    return f"{100 * level:.4g}%"


# ---------------------------------------------------------------------------
# Intervals on the real line


class IntervalKind(str, enum.Enum):
    EMPTY = "empty"
    POINT = "point"
    BOUNDED = "bounded"
    WHOLE_LINE = "whole_line"


@dataclass(frozen=True)
class RealInterval:
    """An interval that may be empty, a single point, bounded, or all of R.

    ``note`` carries a human-readable reason when the interval is empty.
    """

    kind: IntervalKind
    lower: float = math.nan
    upper: float = math.nan
    note: str = ""

    def __post_init__(self):
        kind = IntervalKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is IntervalKind.BOUNDED and not self.lower < self.upper:
            raise DomainError(f"bounded interval needs lower < upper, got [{self.lower}, {self.upper}]")
        if kind is IntervalKind.POINT and self.lower != self.upper:
            raise DomainError("point interval needs lower == upper")
        if kind is IntervalKind.WHOLE_LINE:
            object.__setattr__(self, "lower", -math.inf)
            object.__setattr__(self, "upper", math.inf)

    @classmethod
    def empty(cls, note: str = "") -> "RealInterval":
        return cls(IntervalKind.EMPTY, note=note)

    @classmethod
    def point(cls, x: float) -> "RealInterval":
        return cls(IntervalKind.POINT, x, x)

    @classmethod
    def bounded(cls, lower: float, upper: float) -> "RealInterval":
        return cls(IntervalKind.BOUNDED, lower, upper)

    @classmethod
    def whole_line(cls) -> "RealInterval":
        return cls(IntervalKind.WHOLE_LINE)

    @classmethod
    def centred(cls, centre: float, halfwidth: float) -> "RealInterval":
        if halfwidth == 0.0:
            return cls.point(centre)
        if math.isinf(halfwidth):
            return cls.whole_line()
        return cls.bounded(centre - halfwidth, centre + halfwidth)

    @property
    def is_empty(self) -> bool:
        return self.kind is IntervalKind.EMPTY

    @property
    def width(self) -> float:
        if self.kind is IntervalKind.EMPTY:
            return 0.0
        return self.upper - self.lower

    def contains(self, x: float) -> bool:
        if self.kind is IntervalKind.EMPTY:
            return False
        return self.lower <= x <= self.upper

    def issubset(self, other: "RealInterval", tol: float = 0.0) -> bool:
        if self.kind is IntervalKind.EMPTY:
            return True
        if other.kind is IntervalKind.EMPTY:
            return False
        return other.lower - tol <= self.lower and self.upper <= other.upper + tol

    def rounded(self, digits: int = 2) -> tuple[float, float]:
        return (_round(self.lower, digits), _round(self.upper, digits))

    def format(self, digits: int = 2) -> str:
        if self.kind is IntervalKind.EMPTY:
            return "does not exist"
        lo, hi = self.rounded(digits)
        return f"[{lo:.{digits}f},{hi:.{digits}f}]"

    def to_dict(self) -> dict:
        finite = self.kind in (IntervalKind.POINT, IntervalKind.BOUNDED)
        return {
            "kind": self.kind.value,
            "lower": self.lower if finite else None,
            "upper": self.upper if finite else None,
        }


def _round(x: float, digits: int) -> float:
    r = round(x, digits)
    return 0.0 if r == 0 else r  # no "-0.00"


@dataclass(frozen=True)
class EffectiveSample:
    """Effective sample size n and unit variance lambda^2, with se = lambda / sqrt(n)."""

    n: float
    unit_var: float

    def __post_init__(self):
        _positive("effective sample size", self.n)
        _positive("unit variance", self.unit_var)

    @property
    def se(self) -> float:
        return math.sqrt(self.unit_var / self.n)


# ---------------------------------------------------------------------------
# Input normalisation


def summary_from_ci(lower: float, upper: float, level: float = 0.95) -> SummaryData:
    """Recover estimate and standard error from a symmetric Wald interval."""
    _finite("ci lower", lower)
    _finite("ci upper", upper)
    if not lower < upper:
        raise DomainError(f"degenerate confidence interval [{lower}, {upper}]")
    ConfidenceInterval(level)
    z = norm_quantile(0.5 * (1.0 + level))
    return SummaryData(0.5 * (lower + upper), (upper - lower) / (2.0 * z))


def resolve_summary(
    estimate: Optional[float] = None,
    se: Optional[float] = None,
    ci_lower: Optional[float] = None,
    ci_upper: Optional[float] = None,
    ci_level: float = 0.95,
) -> SummaryData:
    """Build :class:`SummaryData` from whichever inputs were supplied.

    Estimate and standard error take precedence over a confidence interval.
    When both are given the interval is only cross-checked, and a
    ``UserWarning`` is issued if it disagrees beyond relative 1e-6.
    """
    have_direct = estimate is not None and se is not None
    have_ci = ci_lower is not None and ci_upper is not None
    if not (have_direct or have_ci):
        raise DomainError("need either estimate and se, or ci_lower and ci_upper")
    if have_direct:
        data = SummaryData(float(estimate), float(se))
        if have_ci:
            from_ci = summary_from_ci(ci_lower, ci_upper, ci_level)
            scale = max(abs(data.estimate), data.se)
            if (abs(from_ci.estimate - data.estimate) > 1e-6 * scale
                    or abs(from_ci.se - data.se) > 1e-6 * data.se):
                warnings.warn(
                    f"confidence interval [{ci_lower}, {ci_upper}] implies estimate "
                    f"{from_ci.estimate:.6g} and se {from_ci.se:.6g}; using the supplied "
                    f"estimate {data.estimate:.6g} and se {data.se:.6g}",
                    UserWarning,
                    stacklevel=2,
                )
        return data
    return summary_from_ci(float(ci_lower), float(ci_upper), ci_level)
