import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import optimize
from scipy.stats import norm

from supcal.calibration import ci_level_to_min_support, min_support_to_ci_level, transform_interval
from supcal.errors import DomainError, InconsistentIntervalError, MappingUndefinedError
from supcal.intervals import support_interval
from supcal.model import (
    ConfidenceInterval,
    IntervalKind,
    LocalNormalPrior,
    MinFamily,
    MinSupportInterval,
    NormalPrior,
    RealInterval,
    SummaryData,
    SupportInterval,
)

FAMILIES = list(MinFamily)


def lower_level(family):
    """Smallest confidence level for which the family's mapping is defined."""
    return {
        MinFamily.ALL_PRIORS: 1e-6,
        MinFamily.LOCAL_NORMAL: 2 * norm.cdf(1) - 1,
        MinFamily.EPLOGP: 1 - 1 / math.e,
    }[family]


@pytest.mark.parametrize("family, k", [
    (MinFamily.ALL_PRIORS, 0.1465),
    (MinFamily.EPLOGP, 0.4072),
    (MinFamily.LOCAL_NORMAL, 0.4734),
])
def test_95_percent(family, k):
    assert ci_level_to_min_support(0.95, family) == pytest.approx(k, abs=5e-4)


@pytest.mark.parametrize("family, level", [
    (MinFamily.ALL_PRIORS, 0.9681),
    (MinFamily.EPLOGP, 0.9925),
    (MinFamily.LOCAL_NORMAL, 0.9943),
])
def test_k_tenth(family, level):
    assert min_support_to_ci_level(0.1, family) == pytest.approx(level, abs=1e-4)


@pytest.mark.parametrize("family", FAMILIES)
@given(u=st.floats(0.0, 1.0))
def test_level_round_trip(family, u):
    # k = 1 sits where dk/dlevel = 0, so stay clear of it; see test_branch_point
    lo = lower_level(family) + 1e-3
    level = lo + u * (0.999999 - lo)
    k = ci_level_to_min_support(level, family)
    assert min_support_to_ci_level(k, family) == pytest.approx(level, abs=1e-9)


@pytest.mark.parametrize("family", FAMILIES)
@given(k=st.floats(1e-8, 1.0))
def test_k_round_trip(family, k):
    level = min_support_to_ci_level(k, family)
    if level < lower_level(family) or level > 1 - 1e-14:
        return
    assert ci_level_to_min_support(level, family) == pytest.approx(k, rel=1e-7, abs=1e-12)


@pytest.mark.parametrize("family", FAMILIES)
@given(a=st.floats(1e-6, 1.0), b=st.floats(1e-6, 1.0))
def test_level_decreases_in_k(family, a, b):
    if a == b:
        return
    k_lo, k_hi = sorted((a, b))
    left, right = min_support_to_ci_level(k_lo, family), min_support_to_ci_level(k_hi, family)
    assert left >= right
    if k_hi > k_lo * (1 + 1e-6):
        assert left > right


@pytest.mark.parametrize("family", [MinFamily.LOCAL_NORMAL, MinFamily.EPLOGP])
def test_branch_point(family):
    level = lower_level(family)
    assert ci_level_to_min_support(level, family) == pytest.approx(1.0, abs=1e-12)
    # square-root conditioning: a level error of eps moves k by about eps only,
    # but the inverse recovers the level to about sqrt(eps)
    assert min_support_to_ci_level(1.0, family) == pytest.approx(level, abs=1e-7)


@pytest.mark.parametrize("family", FAMILIES)
def test_brent_cross_check(family):
    # invert the forward map numerically with scipy and compare to the closed form
    for level in (0.8, 0.9, 0.95, 0.99, 0.999):
        k = optimize.brentq(lambda k: min_support_to_ci_level(k, family) - level, 1e-12, 1, xtol=1e-15)
        assert ci_level_to_min_support(level, family) == pytest.approx(k, rel=1e-9)


def test_undefined_regions():
    with pytest.raises(MappingUndefinedError):
        ci_level_to_min_support(0.5, MinFamily.LOCAL_NORMAL)
    with pytest.raises(MappingUndefinedError):
        ci_level_to_min_support(0.6, MinFamily.EPLOGP)
    assert ci_level_to_min_support(0.5, MinFamily.ALL_PRIORS) < 1


def test_bad_k():
    with pytest.raises(DomainError):
        min_support_to_ci_level(1.5, MinFamily.ALL_PRIORS)


class TestTransform:
    data = SummaryData(-0.18, 0.0561)

    def test_ci_to_minsi(self):
        ci = support_interval(self.data, ConfidenceInterval(0.95))
        target = MinSupportInterval(0.1, MinFamily.ALL_PRIORS)
        out = transform_interval(ci, ConfidenceInterval(0.95), target, self.data)
        ref = support_interval(self.data, target)
        assert out.lower == pytest.approx(ref.lower, abs=1e-12)
        assert out.upper == pytest.approx(ref.upper, abs=1e-12)

    @given(st.floats(0.5, 0.999), st.floats(0.5, 0.999), st.floats(0.5, 0.999))
    def test_composition(self, a, b, c):
        ms = [ConfidenceInterval(x) for x in (a, b, c)]
        start = support_interval(self.data, ms[0])
        mid = transform_interval(start, ms[0], ms[1], self.data)
        via = transform_interval(mid, ms[1], ms[2], self.data)
        direct = transform_interval(start, ms[0], ms[2], self.data)
        assert via.lower == pytest.approx(direct.lower, abs=1e-12)
        assert via.upper == pytest.approx(direct.upper, abs=1e-12)

    def test_from_point(self):
        point = support_interval(self.data, MinSupportInterval(1, MinFamily.ALL_PRIORS))
        assert point.kind is IntervalKind.POINT
        out = transform_interval(point, MinSupportInterval(1, MinFamily.ALL_PRIORS),
                                 ConfidenceInterval(0.95), self.data)
        assert out.format() == "[-0.29,-0.07]"

    def test_to_nonexistent_target(self):
        ci = support_interval(self.data, ConfidenceInterval(0.95))
        out = transform_interval(ci, ConfidenceInterval(0.95), SupportInterval(10, LocalNormalPrior(0.01)), self.data)
        assert out.kind is IntervalKind.EMPTY and "requires" in out.note

    def test_mismatched_input(self):
        with pytest.raises(InconsistentIntervalError):
            transform_interval(RealInterval.bounded(-0.3, -0.07), ConfidenceInterval(0.95),
                               SupportInterval(10, NormalPrior(0, 2)), self.data)
