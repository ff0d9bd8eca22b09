"""Monte Carlo check of support-interval coverage and the universal bound.

Each replication draws its own observation stream from a generator seeded
with ``(seed, replication index)``, so results do not depend on how the
replications are batched. Observations are N(true_theta, unit_var); at a look
after n observations the estimate is their mean and se = sqrt(unit_var / n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .bayes_factors import log_bf_at
from .errors import DomainError, UnsupportedMethodError
from .intervals import support_interval
from .model import IntervalMethod, MinSupportInterval, SummaryData, SupportInterval

MINSI_REJECTION = (
    "coverage guarantees only hold for support intervals with a data-independent prior; "
    "minimum support intervals pick the prior after seeing the data, which breaks the "
    "universal bound"
)


@dataclass(frozen=True)
class FixedN:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"sample size must be >= 1, got {self.n}")

    @property
    def looks(self) -> tuple[int, ...]:
        return (self.n,)


@dataclass(frozen=True)
class OptionalStopping:
    """Look after each n in ``look_schedule``; stop at the first BF01 < k.

    Without an explicit schedule every observation from 1 to ``max_looks`` is a look.
    """

    max_looks: int
    look_schedule: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.max_looks < 1:
            raise DomainError(f"max_looks must be >= 1, got {self.max_looks}")
        if self.look_schedule is not None:
            sched = tuple(int(n) for n in self.look_schedule)
            if not sched or sched[0] < 1 or any(b <= a for a, b in zip(sched, sched[1:])):
                raise DomainError("look schedule must be strictly increasing positive integers")
            object.__setattr__(self, "look_schedule", sched)

    @property
    def looks(self) -> tuple[int, ...]:
        if self.look_schedule is None:
            return tuple(range(1, self.max_looks + 1))
        return self.look_schedule


def geometric_schedule(max_n: int, ratio: float = 1.5) -> tuple[int, ...]:
    """Looks at roughly geometric sample sizes 1, ratio, ratio^2, ... up to max_n."""
    looks = {1, max_n}
    n = 1.0
    while n < max_n:
        n *= ratio
        looks.add(min(max_n, math.ceil(n)))
    return tuple(sorted(looks))


Regime = Union[FixedN, OptionalStopping]


@dataclass(frozen=True)
class SimConfig:
    true_theta: float
    unit_var: float
    method: IntervalMethod
    regime: Regime
    replications: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.method, MinSupportInterval):
            raise UnsupportedMethodError(MINSI_REJECTION)
        if not isinstance(self.method, SupportInterval):
            raise UnsupportedMethodError("coverage simulation needs a support interval method")
        if not 0 < self.method.k <= 1:
            raise DomainError(f"coverage guarantee needs k <= 1, got k = {self.method.k:g}")
        if self.replications < 1:
            raise DomainError("replications must be >= 1")
        if not (self.unit_var > 0 and math.isfinite(self.unit_var)):
            raise DomainError("unit variance must be > 0")
        if self.seed < 0:
            raise DomainError("seed must be a non-negative integer")


@dataclass(frozen=True)
class SimResult:
    coverage_estimate: float
    mc_stderr: float
    stop_fraction: float
    per_look_counts: tuple[int, ...]
    looks: tuple[int, ...]
    replications: int
    k: float
    covered: int = field(repr=False, default=0)

    def coverage_ok(self, slack: float = 3.0) -> bool:
        """Empirical coverage is at least 1 - k up to ``slack`` Monte Carlo standard errors."""
        return self.coverage_estimate >= 1.0 - self.k - slack * self.mc_stderr

    def bound_ok(self, slack: float = 3.0) -> bool:
        """P(BF01 at the true value < k) is at most k up to ``slack`` standard errors."""
        return self.stop_fraction <= self.k + slack * self.mc_stderr

    def to_dict(self) -> dict:
        return {
            "coverage_estimate": self.coverage_estimate,
            "mc_stderr": self.mc_stderr,
            "stop_fraction": self.stop_fraction,
            "per_look_counts": list(self.per_look_counts),
            "looks": list(self.looks),
            "replications": self.replications,
            "k": self.k,
        }


def _observations(config: SimConfig, n_max: int, start: int, stop: int) -> np.ndarray:
    sd = math.sqrt(config.unit_var)
    rows = np.empty((stop - start, n_max))
    for i, rep in enumerate(range(start, stop)):
        rng = np.random.default_rng([config.seed, rep])
        rows[i] = rng.normal(config.true_theta, sd, size=n_max)
    return rows


def simulate_coverage(config: SimConfig, chunk: int = 2048) -> SimResult:
    """Estimate coverage of the support interval at the true parameter value.

    Under optional stopping a replication stops at its first look where
    BF01(estimate; true_theta) < k; coverage is judged at that look, or at
    the last look if it never stops. The interval itself is computed from
    its closed-form multiplier, independently of the stopping rule.
    """
    method = config.method
    looks = np.asarray(config.regime.looks)
    n_max = int(looks[-1])
    log_k = math.log(method.k)
    ses = np.sqrt(config.unit_var / looks)

    stop_counts = np.zeros(len(looks), dtype=np.int64)
    covered = 0
    for start in range(0, config.replications, chunk):
        stop = min(start + chunk, config.replications)
        obs = _observations(config, n_max, start, stop)
        means = np.cumsum(obs, axis=1)[:, looks - 1] / looks
        log_bf = log_bf_at(means, ses, method, config.true_theta)
        below = log_bf < log_k
        stopped = below.any(axis=1)
        first = np.where(stopped, below.argmax(axis=1), len(looks) - 1)
        np.add.at(stop_counts, first[stopped], 1)
        for row, j in enumerate(first):
            data = SummaryData(float(means[row, j]), float(ses[j]))
            if support_interval(data, method).contains(config.true_theta):
                covered += 1

    reps = config.replications
    coverage = covered / reps
    return SimResult(
        coverage_estimate=coverage,
        mc_stderr=math.sqrt(coverage * (1.0 - coverage) / reps),
        stop_fraction=int(stop_counts.sum()) / reps,
        per_look_counts=tuple(int(c) for c in stop_counts),
        looks=tuple(int(n) for n in looks),
        replications=reps,
        k=method.k,
        covered=covered,
    )


def universal_bound_check(config: SimConfig, chunk: int = 2048) -> SimResult:
    """Simulate with the null placed at the true value; see :meth:`SimResult.bound_ok`.

    The returned ``stop_fraction`` estimates P(BF01 < k | H0), which the
    universal bound caps at k for every regime, including optional stopping.
    """
    return simulate_coverage(config, chunk=chunk)


def run_many(configs: Sequence[SimConfig]) -> list[SimResult]:
    return [simulate_coverage(c) for c in configs]
