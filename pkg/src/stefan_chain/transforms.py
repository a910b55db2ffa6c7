"""Pointwise transport of a closed-form solution along the chain

    w(z,t)  --Cole-Hopf-->  x(z,t)  --reciprocal-->  Psi(x,t)  --exp map-->  theta(y,t)

with ``x = -(2/sigma) w_z/w``, ``Psi = 1/x_z``, ``y = ln(1+m x)/m`` and
``theta = (1+m x) Psi``.  Inverse maps (``y -> z``, ``x -> z``) are computed
by bisection after checking on a 64-point sample that the map being
inverted is strictly monotone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import LogDomain, NonMonotone, OutOfRange, SingularDenominator, ZeroTemperature
from .numerics import Interval, ToleranceSpec, bisect, integrate
from .similarity import ClosedFormSolution, PointState

__all__ = [
    "ChainSample",
    "ChainJet",
    "BoundaryCurves",
    "cole_hopf",
    "psi_from_w",
    "theta_from_w",
    "chain_sample",
    "chain_jet",
    "boundary_curves",
    "monotone_direction",
    "invert_y",
    "invert_x",
    "reconstruct_w",
    "reconstruct_z",
    "x_from_y",
]

MONOTONE_SAMPLES = 64
SINGULAR_RTOL = 1e-13
INVERT_TOL = ToleranceSpec(abs_tol=1e-300, rel_tol=0.0, max_iter=2000)


class ChainSample(NamedTuple):
    z: float
    t: float
    w: float
    w_z: float
    w_zz: float
    x: float
    psi: float
    y: float
    theta: float


class ChainJet(NamedTuple):
    """Analytic derivatives of the chain quantities at one point.

    ``x_z``, ``x_zz``, ``x_t`` come from differentiating the Cole-Hopf map;
    ``psi_x`` and ``theta_y`` follow by the chain rule through
    ``Psi = 1/x_z`` and ``y_x = 1/(1+m x)``.
    """

    x: float
    x_z: float
    x_zz: float
    x_t: float
    psi: float
    psi_x: float
    y: float
    theta: float
    theta_y: float


@dataclass(frozen=True)
class BoundaryCurves:
    t: float
    s: float
    X0: float
    X1: float
    Y0: float
    Y1: float


def _denominator(state: PointState) -> float:
    return state.w_zz * state.w - state.w_z * state.w_z


def _check_denominator(state: PointState, den: float) -> None:
    if abs(den) < SINGULAR_RTOL * max(1.0, state.w * state.w):
        raise SingularDenominator(
            f"w_zz*w - w_z^2 = {den!r} vanishes at z={state.z}, t={state.t}", z=state.z, t=state.t)


def cole_hopf(state: PointState, sigma: float) -> float:
    """``x = -(2/sigma) w_z / w``."""
    if not state.w > 0:
        raise ZeroTemperature(f"w={state.w!r} at z={state.z}, t={state.t}")
    return -2.0 / sigma * state.w_z / state.w


def psi_from_w(state: PointState, sigma: float) -> float:
    """Reciprocal variable ``Psi = -(sigma/2) w^2 / (w_zz w - w_z^2)``."""
    if not state.w > 0:
        raise ZeroTemperature(f"w={state.w!r} at z={state.z}, t={state.t}")
    den = _denominator(state)
    _check_denominator(state, den)
    return -0.5 * sigma * state.w * state.w / den


def _y_of(state: PointState, sigma: float, m: float) -> float:
    arg = 1.0 - 2.0 * m * state.w_z / (sigma * state.w)
    if not arg > 0:
        raise LogDomain(f"log argument {arg!r} <= 0 at z={state.z}, t={state.t}")
    return math.log(arg) / m


def theta_from_w(state: PointState, sigma: float, m: float) -> tuple[float, float]:
    """``(theta, y)`` straight from the temperature and its derivatives."""
    if not state.w > 0:
        raise ZeroTemperature(f"w={state.w!r} at z={state.z}, t={state.t}")
    den = _denominator(state)
    _check_denominator(state, den)
    w = state.w
    theta = (m * state.w_z * w - 0.5 * sigma * w * w) / den
    return theta, _y_of(state, sigma, m)


def x_from_y(y: float, m: float) -> float:
    return math.expm1(m * y) / m


def chain_sample(sol: ClosedFormSolution, z: float, t: float) -> ChainSample:
    p = sol.params
    st = sol.state(z, t)
    x = cole_hopf(st, p.sigma)
    psi = psi_from_w(st, p.sigma)
    theta, y = theta_from_w(st, p.sigma, p.m)
    return ChainSample(z=z, t=t, w=st.w, w_z=st.w_z, w_zz=st.w_zz, x=x, psi=psi, y=y, theta=theta)


def chain_jet(state: PointState, sigma: float, m: float) -> ChainJet:
    w, wz, wzz, wzzz = state.w, state.w_z, state.w_zz, state.w_zzz
    if not w > 0:
        raise ZeroTemperature(f"w={w!r} at z={state.z}, t={state.t}")
    k = -2.0 / sigma
    x = k * wz / w
    x_z = k * (wzz / w - wz * wz / (w * w))
    x_zz = k * (wzzz / w - 3.0 * wz * wzz / (w * w) + 2.0 * wz ** 3 / w ** 3)
    x_t = k * (state.w_zt / w - wz * state.w_t / (w * w))
    den = _denominator(state)
    _check_denominator(state, den)
    psi = 1.0 / x_z
    psi_x = -x_zz / x_z ** 3
    one_mx = 1.0 + m * x
    if not one_mx > 0:
        raise LogDomain(f"1 + m*x = {one_mx!r} <= 0 at z={state.z}, t={state.t}")
    y = math.log(one_mx) / m
    theta = one_mx * psi
    theta_y = one_mx * (m * psi + one_mx * psi_x)
    return ChainJet(x, x_z, x_zz, x_t, psi, psi_x, y, theta, theta_y)


def boundary_curves(sol: ClosedFormSolution, t: float) -> BoundaryCurves:
    """Images of the fixed face and the free boundary in the ``x`` and ``y`` planes."""
    p = sol.params
    s = sol.s(t)
    face, front = sol.state(0.0, t), sol.state(s, t)
    return BoundaryCurves(t=t, s=s, X0=cole_hopf(face, p.sigma), X1=cole_hopf(front, p.sigma),
                          Y0=_y_of(face, p.sigma, p.m), Y1=_y_of(front, p.sigma, p.m))


# ---------------------------------------------------------------------------
# inversion


def _x_at(sol: ClosedFormSolution, z: float, t: float) -> float:
    return cole_hopf(sol.state(z, t), sol.params.sigma)


@lru_cache(maxsize=4096)
def monotone_direction(sol: ClosedFormSolution, t: float) -> int:
    """+1 if ``z -> x(z,t)`` is strictly increasing on ``[0, s(t)]``, -1 if decreasing.

    ``y`` is an increasing function of ``x``, so the same direction holds for
    ``z -> y``.  The check samples 64 equispaced points.

    Raises:
        NonMonotone: the sampled values are not strictly monotone.
    """
    s = sol.s(t)
    zs = np.linspace(0.0, s, MONOTONE_SAMPLES)
    zs[-1] = s
    xs = np.array([_x_at(sol, float(z), t) for z in zs])
    dx = np.diff(xs)
    if np.all(dx > 0):
        return 1
    if np.all(dx < 0):
        return -1
    k = int(np.argmax(np.sign(dx) != np.sign(dx[0])))
    raise NonMonotone(
        f"x(z, t={t}) is not monotone on [0, s(t)]: slope changes sign near z={zs[k]:.6g}",
        t=t, location=float(zs[k]))


def _invert(sol: ClosedFormSolution, target: float, t: float, value_at, lo_val: float, hi_val: float,
            tol: ToleranceSpec) -> float:
    s = sol.s(t)
    lo, hi = min(lo_val, hi_val), max(lo_val, hi_val)
    if not (lo <= target <= hi):
        raise OutOfRange(f"value {target!r} outside [{lo!r}, {hi!r}] at t={t}")
    monotone_direction(sol, t)
    if target == lo_val:
        return 0.0
    if target == hi_val:
        return s
    return bisect(lambda z: value_at(z) - target, Interval(0.0, s), tol)


def invert_y(sol: ClosedFormSolution, y: float, t: float, tol: ToleranceSpec = INVERT_TOL) -> float:
    """Position ``z`` whose image under the exponential map is ``y``."""
    p = sol.params
    bc = boundary_curves(sol, t)
    return _invert(sol, y, t, lambda z: _y_of(sol.state(z, t), p.sigma, p.m), bc.Y0, bc.Y1, tol)


def invert_x(sol: ClosedFormSolution, x: float, t: float, tol: ToleranceSpec = INVERT_TOL) -> float:
    """Position ``z`` with ``cole_hopf(state(z, t)) == x``."""
    bc = boundary_curves(sol, t)
    return _invert(sol, x, t, lambda z: _x_at(sol, z, t), bc.X0, bc.X1, tol)


def psi_at_x(sol: ClosedFormSolution, x: float, t: float) -> float:
    return psi_from_w(sol.state(invert_x(sol, x, t), t), sol.params.sigma)


def theta_at_y(sol: ClosedFormSolution, y: float, t: float) -> float:
    p = sol.params
    return theta_from_w(sol.state(invert_y(sol, y, t), t), p.sigma, p.m)[0]


# ---------------------------------------------------------------------------
# reconstruction (inverse transforms)


def reconstruct_w(sol: ClosedFormSolution, z: float, t: float, sigma: float | None = None,
                  tol: ToleranceSpec = ToleranceSpec(abs_tol=1e-13)) -> float:
    """``w = w_m(t) exp((sigma/2) * integral of x from z to s(t))``."""
    sigma = sol.params.sigma if sigma is None else sigma
    s = sol.s(t)
    integral = integrate(lambda zz: -2.0 / sigma * _ratio(sol, zz, t), z, s, tol)
    return sol.params.w_m(t) * math.exp(0.5 * sigma * integral)


def _ratio(sol, z, t):
    st = sol.state(z, t)
    if not st.w > 0:
        raise ZeroTemperature(f"w={st.w!r} at z={z}, t={t}")
    return st.w_z / st.w


def reconstruct_z(sol: ClosedFormSolution, x_target: float, t: float,
                  tol: ToleranceSpec = ToleranceSpec(abs_tol=1e-12)) -> float:
    """``z = integral of Psi(xi, t) d xi from X0(t) to x_target``.

    ``Psi(xi, t)`` is evaluated by inverting ``z -> x`` and applying
    :func:`psi_from_w`; a decreasing ``x`` profile gives the same ``z`` with
    the orientation handled by the sign of ``Psi``.
    """
    bc = boundary_curves(sol, t)
    lo, hi = min(bc.X0, bc.X1), max(bc.X0, bc.X1)
    if not (lo <= x_target <= hi):
        raise OutOfRange(f"x={x_target!r} outside [{lo!r}, {hi!r}] at t={t}")
    monotone_direction(sol, t)

    def psi(xi):
        return psi_at_x(sol, xi, t)

    if x_target >= bc.X0:
        return integrate(psi, bc.X0, x_target, tol)
    return -integrate(psi, x_target, bc.X0, tol)
