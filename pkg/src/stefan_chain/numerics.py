"""Special functions, root finding, quadrature and difference stencils.

Everything here works on plain Python floats and callables; no state is
kept between calls.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable

from .errors import InvalidParams, MaxIterExceeded, NoSignChange, SubdivisionLimit

__all__ = [
    "Interval",
    "ToleranceSpec",
    "erf",
    "erfc",
    "bisect",
    "integrate",
    "central_diff",
    "default_step",
]

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise InvalidParams(f"interval endpoints must be finite: {self}")
        if not self.lo < self.hi:
            raise InvalidParams(f"interval needs lo < hi: {self}")

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class ToleranceSpec:
    abs_tol: float = 1e-14
    rel_tol: float = 0.0
    max_iter: int = 200

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise InvalidParams("tolerances must be non-negative")
        if self.abs_tol == 0 and self.rel_tol == 0:
            raise InvalidParams("at least one of abs_tol, rel_tol must be positive")
        if self.max_iter <= 0:
            raise InvalidParams("max_iter must be positive")


# ---------------------------------------------------------------------------
# error function


def _erf_series(x: float) -> float:
    # Maclaurin series; terms peak near n=4 for |x|=2 so fsum keeps the
    # cancellation error around 1e-16.
    if x == 0.0:
        return x
    x2 = x * x
    term = x
    terms = [x]
    for n in range(1, 80):
        term *= -x2 / n
        contrib = term / (2 * n + 1)
        terms.append(contrib)
        if abs(contrib) <= 1e-17 * abs(x):
            break
    return _TWO_OVER_SQRT_PI * math.fsum(terms)


def _erfc_cf(x: float) -> float:
    """Complementary error function for x > 2 by a continued fraction.

    Uses erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    evaluated with the modified Lentz algorithm.
    """
    tiny = 1e-300
    f = x
    c = x
    d = 0.0
    for k in range(1, 500):
        a = 0.5 * k
        d = x + a * d
        d = tiny if d == 0.0 else d
        c = x + a / c
        c = tiny if c == 0.0 else c
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-x * x) / (math.sqrt(math.pi) * f)


def erf(x: float) -> float:
    """Gauss error function, accurate to about 1e-15 in absolute terms.

    Saturates to +/-1 for |x| >= 6, where erfc is below half an ulp of 1.
    """
    x = float(x)
    if x != x:
        return x
    ax = abs(x)
    if ax >= 6.0:
        return math.copysign(1.0, x)
    if ax <= 2.0:
        return _erf_series(x)
    return math.copysign(1.0 - _erfc_cf(ax), x)


def erfc(x: float) -> float:
    """Complementary error function ``1 - erf(x)`` without cancellation for x > 2."""
    x = float(x)
    if x > 2.0:
        return 0.0 if x >= 27.0 else _erfc_cf(x)
    return 1.0 - erf(x)


# ---------------------------------------------------------------------------
# roots


def bisect(f: Callable[[float], float], bracket: Interval, tol: ToleranceSpec = ToleranceSpec()) -> float:
    """Find a root of ``f`` inside ``bracket`` by bisection.

    Stops when the bracket is narrower than ``max(abs_tol, rel_tol*|mid|)``,
    when ``f`` hits an exact zero, or when the bracket cannot shrink any
    further in floating point.

    Raises:
        NoSignChange: ``f(lo)*f(hi) >= 0`` (an exact zero at an endpoint is
            returned instead).
        MaxIterExceeded: the tolerance was not met within ``tol.max_iter``.
    """
    lo, hi = bracket.lo, bracket.hi
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if not (flo * fhi < 0.0):
        raise NoSignChange(f"f({lo})={flo!r} and f({hi})={fhi!r} do not bracket a root")
    for _ in range(tol.max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= max(tol.abs_tol, tol.rel_tol * abs(mid)) or not (lo < mid < hi):
            return mid
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0.0) == (flo < 0.0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    raise MaxIterExceeded(f"bisection did not converge in {tol.max_iter} iterations; bracket [{lo}, {hi}]")


# ---------------------------------------------------------------------------
# quadrature

_MAX_DEPTH = 50


def integrate(f: Callable[[float], float], a: float, b: float, tol: ToleranceSpec = ToleranceSpec(abs_tol=1e-12)) -> float:
    """Adaptive Simpson quadrature of ``f`` over ``[a, b]``.

    The absolute error budget ``tol.abs_tol`` is split in half at every
    bisection of the interval; recursion deeper than 50 levels raises
    :class:`SubdivisionLimit`.
    """
    if b < a:
        raise InvalidParams(f"integrate needs a <= b, got a={a}, b={b}")
    if a == b:
        return 0.0
    eps = tol.abs_tol if tol.abs_tol > 0 else tol.rel_tol
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    if tol.abs_tol == 0:
        eps = max(tol.rel_tol * abs(whole), 1e-300)
    return _simpson(f, a, b, fa, fm, fb, whole, eps, 0)


def _simpson(f, a, b, fa, fm, fb, whole, eps, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
    right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
    delta = left + right - whole
    if abs(delta) <= 15.0 * eps or (m - a) <= 4 * _EPS * max(abs(a), abs(b), 1e-300):
        return left + right + delta / 15.0
    if depth >= _MAX_DEPTH:
        raise SubdivisionLimit(f"adaptive Simpson exceeded depth {_MAX_DEPTH} on [{a}, {b}]")
    return (_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1)
            + _simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1))


# ---------------------------------------------------------------------------
# finite differences


def default_step(x: float, order: int) -> float:
    """Step balancing truncation and rounding for a 2nd-order central stencil."""
    if order == 1:
        power = 1.0 / 3.0
    elif order == 2:
        power = 1.0 / 4.0
    else:
        power = 1.0 / 5.0
    return _EPS ** power * max(1.0, abs(x))


def central_diff(f: Callable[[float], float], x: float, order: int = 1, h: float | None = None) -> float:
    """Second-order central difference of derivative ``order`` (1, 2 or 3)."""
    if order not in (1, 2, 3):
        raise InvalidParams(f"order must be 1, 2 or 3, got {order}")
    if h is None:
        h = default_step(x, order)
    if not h > 0:
        raise InvalidParams("step must be positive")
    if order == 1:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    if order == 2:
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) / (2.0 * h ** 3)
