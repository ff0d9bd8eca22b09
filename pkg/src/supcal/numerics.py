"""Special functions and root solving.

Everything here is a pure function of floats. The Lambert W branches and the
normal quantile are implemented directly; ``find_root`` wraps scipy's Brent
solver behind a bracket type with explicit failure modes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.optimize import brentq

from .errors import DomainError, NoSignChangeError, NonFiniteError

# 1/e split into a double and its rounding remainder, so that x + 1/e can be
# formed without cancellation next to the branch point.
_INV_E_HI = 0.36787944117144233
_INV_E_LO = -1.2428753672788363e-17
BRANCH_POINT = -_INV_E_HI

_BOUNDARY_TOL = 1e-15
_W_TOL = 1e-13
_W_MAXITER = 50

_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)
_LOG_SQRT2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class Bracket:
    """Closed search interval ``[lo, hi]`` for :func:`find_root`."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError(f"bracket endpoints must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise DomainError(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo


# ---------------------------------------------------------------------------
# Lambert W


def _branch_offset(x: float) -> float:
    """2 * e * (x + 1/e), computed without losing the small difference."""
    return 2.0 * math.e * ((x + _INV_E_HI) + _INV_E_LO)


def _halley(w: float, x: float) -> float:
    for _ in range(_W_MAXITER):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= _W_TOL * (1.0 + abs(w)):
            break
    return w


def _check_w_domain(x: float) -> bool:
    """Validate x >= -1/e; return True when x sits on the branch point."""
    if math.isnan(x):
        raise DomainError("Lambert W argument is nan")
    if x < BRANCH_POINT - _BOUNDARY_TOL:
        raise DomainError(f"Lambert W undefined for x = {x!r} < -1/e")
    return x <= BRANCH_POINT or _branch_offset(x) <= 0.0


def lambert_w0(x: float) -> float:
    """Principal branch W0 of the Lambert W function (values >= -1).

    Arguments within 1e-15 below -1/e are clamped to the branch point.
    """
    x = float(x)
    if _check_w_domain(x):
        return -1.0
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf
    if x < -0.25:
        p = math.sqrt(_branch_offset(x))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
    elif x < math.e:
        w = math.log1p(x)
        w *= 1.0 - w / (2.0 + w) if x > 0 else 1.0
    else:
        l1 = math.log(x)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1
    return _halley(w, x)


def lambert_wm1(x: float) -> float:
    """Lower real branch W_{-1} of the Lambert W function (values <= -1).

    Defined for -1/e <= x < 0; arguments within 1e-15 below -1/e are clamped.
    """
    x = float(x)
    if x >= 0.0 or math.isnan(x):
        raise DomainError(f"W_-1 requires -1/e <= x < 0, got {x!r}")
    if _check_w_domain(x):
        return -1.0
    if x < -0.25:
        p = -math.sqrt(_branch_offset(x))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
    else:
        l1 = math.log(-x)
        l2 = math.log(-l1)
        w = l1 - l2 + l2 / l1
    return _halley(w, x)


def lambert_w0_exp(log_x: float) -> float:
    """W0(exp(log_x)) for arguments whose exponential would overflow."""
    if log_x < 700.0:
        return lambert_w0(math.exp(log_x))
    # w + log(w) = log_x, Newton from the two-term asymptote
    w = log_x - math.log(log_x)
    for _ in range(_W_MAXITER):
        dw = (w + math.log(w) - log_x) / (1.0 + 1.0 / w)
        w -= dw
        if abs(dw) <= _W_TOL * w:
            break
    return w


# ---------------------------------------------------------------------------
# Standard normal


def norm_pdf(z: float) -> float:
    return math.exp(-0.5 * z * z - _LOG_SQRT2PI)


def norm_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / _SQRT2)


def norm_sf(z: float) -> float:
    """Upper tail 1 - Phi(z), accurate far into the tail."""
    return 0.5 * math.erfc(z / _SQRT2)


def log_norm_sf(z: float) -> float:
    """log(1 - Phi(z)) without underflow for large z."""
    if z < 35.0:
        return math.log(norm_sf(z))
    # asymptotic Mills ratio series; truncation error < 1e-14 at z = 35
    z2 = z * z
    series = 1.0 - 1.0 / z2 + 3.0 / z2**2 - 15.0 / z2**3 + 105.0 / z2**4
    return -0.5 * z2 - _LOG_SQRT2PI - math.log(z) + math.log(series)


# Wichura (1988), algorithm AS 241, PPND16.
_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _poly(coefs, x):
    acc = 0.0
    for c in reversed(coefs):
        acc = acc * x + c
    return acc


def _ppnd16(p: float) -> float:
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _poly(_A, r) / _poly(_B, r)
    r = math.sqrt(-math.log(min(p, 1.0 - p)))
    if r <= 5.0:
        r -= 1.6
        x = _poly(_C, r) / _poly(_D, r)
    else:
        r -= 5.0
        x = _poly(_E, r) / _poly(_F, r)
    return -x if q < 0 else x


def norm_quantile(p: float) -> float:
    """Inverse of :func:`norm_cdf` on (0, 1).

    AS 241 rational approximation followed by one Halley correction. The
    correction is applied on the smaller tail so it stays accurate for tiny p.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"normal quantile requires 0 < p < 1, got {p!r}")
    if p > 0.5:
        return -_lower_quantile(1.0 - p)
    return _lower_quantile(p)


def _lower_quantile(p: float) -> float:
    x = _ppnd16(p)
    e = norm_cdf(x) - p
    u = e * _SQRT2PI * math.exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


def norm_isf(q: float) -> float:
    """Upper-tail quantile: z with 1 - Phi(z) = q."""
    q = float(q)
    if not 0.0 < q < 1.0:
        raise DomainError(f"normal quantile requires 0 < q < 1, got {q!r}")
    return -norm_quantile(q)


# ---------------------------------------------------------------------------
# Root finding


def find_root(f: Callable[[float], float], bracket: Bracket, tol: float = 1e-12,
              maxiter: int = 200) -> float:
    """Locate a sign change of ``f`` inside ``bracket``.

    Brent's method (inverse quadratic interpolation with a bisection
    safeguard), so convergence is guaranteed once the endpoints straddle zero.

    Raises
    ------
    NoSignChangeError
        ``f(lo)`` and ``f(hi)`` share a sign.
    NonFiniteError
        ``f`` returned nan or inf anywhere during the search.
    """

    def checked(x):
        y = f(x)
        if not math.isfinite(y):
            raise NonFiniteError(f"f({x!r}) = {y!r} is not finite")
        return y

    flo, fhi = checked(bracket.lo), checked(bracket.hi)
    if flo == 0.0:
        return bracket.lo
    if fhi == 0.0:
        return bracket.hi
    if (flo > 0) == (fhi > 0):
        raise NoSignChangeError(
            f"no sign change on [{bracket.lo}, {bracket.hi}]: f = {flo!r}, {fhi!r}"
        )
    return brentq(checked, bracket.lo, bracket.hi, xtol=tol, rtol=4 * 2.220446049250313e-16,
                  maxiter=maxiter)
