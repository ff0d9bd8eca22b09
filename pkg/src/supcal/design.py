"""Sample size for a future study, chosen by target support.

Two questions are answered. How many effective observations are needed
before a k support interval (k > 1) can exist at all, and which sample
sizes make that interval span a chosen width. Standard errors follow
se = lambda / sqrt(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError
from .intervals import RADICAND_TOL, squared_multiplier
from .model import NormalPrior, PriorSpec, SummaryData, SupportInterval
from .numerics import Bracket, find_root, lambert_w0, lambert_wm1

_INV_E = math.exp(-1.0)
_N_MIN, _N_MAX = 1e-6, 1e15


@dataclass(frozen=True)
class JeffreysApprox:
    """Prior centred on the estimate with the variance of one effective observation."""

    def describe(self) -> str:
        return "Jeffreys's approximate Bayes factor (unit-information prior centred at the estimate)"


@dataclass(frozen=True)
class DesignSpec:
    """Inputs for a support-based sample size calculation.

    ``anticipated_estimate`` is the estimate assumed at the planning stage.
    It only matters for a normal prior, where it defaults to the prior
    mean, i.e. no conflict between prior and data. ``exact`` switches the
    Jeffreys width calculation from the closed form, which uses
    log(1 + n) ~ log(n), to a numeric solve with log(1 + n).
    """

    k: float
    unit_var: float = 1.0
    prior: Union[PriorSpec, JeffreysApprox] = field(default_factory=JeffreysApprox)
    anticipated_estimate: Optional[float] = None
    target_width: Optional[float] = None
    exact: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k > 1.0):
            raise DomainError(f"design requires support level k > 1, got {self.k!r}")
        if not (math.isfinite(self.unit_var) and self.unit_var > 0):
            raise DomainError(f"unit variance must be > 0, got {self.unit_var!r}")
        if self.target_width is not None and not (self.target_width > 0 and math.isfinite(self.target_width)):
            raise DomainError(f"target width must be > 0, got {self.target_width!r}")

    @property
    def planning_estimate(self) -> float:
        if self.anticipated_estimate is not None:
            return self.anticipated_estimate
        if isinstance(self.prior, NormalPrior):
            return self.prior.mean
        return 0.0

    @property
    def is_jeffreys(self) -> bool:
        return isinstance(self.prior, JeffreysApprox)


@dataclass(frozen=True)
class DesignResult:
    n_exists: int
    n_width: Optional[tuple[int, int]] = None
    width_feasible: Optional[bool] = None
    max_width: Optional[float] = None
    notes: tuple[str, ...] = ()


def jeffreys_min_n(k: float) -> int:
    """Smallest n with log(1 + n) >= 2 log k, i.e. n >= k^2 - 1, floored at 1."""
    bound = k * k - 1.0
    return max(1, math.ceil(bound - 1e-12 * max(1.0, bound)))


def _squared_multiplier(spec: DesignSpec, n: float) -> float:
    if spec.is_jeffreys:
        return math.log1p(n) - 2.0 * math.log(spec.k)
    data = SummaryData(spec.planning_estimate, math.sqrt(spec.unit_var / n))
    return squared_multiplier(SupportInterval(spec.k, spec.prior), data)


def n_for_existence(spec: DesignSpec) -> int:
    """Smallest integer n for which the k support interval exists."""
    if spec.is_jeffreys:
        return jeffreys_min_n(spec.k)

    def exists(n):
        return _squared_multiplier(spec, n) >= -RADICAND_TOL

    if exists(1):
        return 1
    lo, hi = 1, 2
    while not exists(hi):
        lo, hi = hi, hi * 2
        if hi > _N_MAX:
            raise DomainError("support interval does not exist for any practical sample size")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if exists(mid):
            hi = mid
        else:
            lo = mid
    return hi


def width_bound(spec: DesignSpec) -> float:
    """Largest width reachable under the closed-form Jeffreys design: 2 lambda / (k sqrt(e))."""
    return 2.0 * math.sqrt(spec.unit_var) / (spec.k * math.sqrt(math.e))


def _jeffreys_closed_form(spec: DesignSpec) -> Optional[tuple[float, float]]:
    k2 = spec.k ** 2
    arg = -k2 * spec.target_width ** 2 / (4.0 * spec.unit_var)
    if arg < -_INV_E - 1e-15:
        return None
    return k2 * math.exp(-lambert_w0(arg)), k2 * math.exp(-lambert_wm1(arg))


def _numeric_width_roots(spec: DesignSpec) -> tuple[Optional[tuple[float, float]], float]:
    """Both n with width(n) = target, found on either side of the widest design."""
    target2 = spec.target_width ** 2

    def excess(log_n):
        n = math.exp(log_n)
        return 4.0 * spec.unit_var / n * _squared_multiplier(spec, n) - target2

    grid = np.linspace(math.log(_N_MIN), math.log(_N_MAX), 600)
    values = np.array([excess(t) for t in grid])
    i = int(np.argmax(values))
    lo_t, hi_t = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    best = minimize_scalar(lambda t: -excess(t), bounds=(lo_t, hi_t), method="bounded",
                           options={"xatol": 1e-10})
    t_star = best.x if -best.fun >= values[i] else grid[i]
    peak = excess(t_star)
    max_width = math.sqrt(max(peak + target2, 0.0))
    if peak < 0:
        return None, max_width
    t1 = find_root(excess, Bracket(grid[0], t_star), tol=1e-12) if excess(grid[0]) < 0 else grid[0]
    t2 = find_root(excess, Bracket(t_star, grid[-1]), tol=1e-12) if excess(grid[-1]) < 0 else grid[-1]
    return (math.exp(t1), math.exp(t2)), max_width


def _ceil(n: float) -> int:
    # guard against 143.00000000000003 style round-off
    return max(1, math.ceil(n - 1e-9 * n))


def n_for_width(spec: DesignSpec) -> Optional[tuple[int, int]]:
    """Sample sizes (n1, n2) at which the k support interval has the target width.

    Returns None when no sample size reaches the target width.
    """
    return design(spec).n_width


def design(spec: DesignSpec) -> DesignResult:
    notes = []
    n_exists = n_for_existence(spec)
    if spec.is_jeffreys and spec.k ** 2 - 1 < 1:
        notes.append("every n > 0 satisfies n >= k^2 - 1; reported as 1")
    if spec.target_width is None:
        return DesignResult(n_exists, notes=tuple(notes))

    if spec.is_jeffreys and not spec.exact:
        roots = _jeffreys_closed_form(spec)
        max_width = width_bound(spec)
        notes.append("closed form assumes log(1 + n) / log(n) ~ 1")
    else:
        roots, max_width = _numeric_width_roots(spec)
    if roots is None:
        notes.append(f"target width {spec.target_width:g} exceeds the largest attainable "
                     f"width {max_width:.6g}")
        return DesignResult(n_exists, None, False, max_width, tuple(notes))
    n1, n2 = _ceil(roots[0]), _ceil(roots[1])
    return DesignResult(n_exists, (n1, n2), True, max_width, tuple(notes))
