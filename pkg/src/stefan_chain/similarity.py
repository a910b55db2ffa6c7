"""Closed-form similarity solutions of the one-phase Stefan problem.

The coefficient family is

    L(t) = L0*sqrt(t),  v(t) = 2*v0*sqrt(t),  h(t) = h0/sqrt(t),  w_m(t) = 2*w_m0*sqrt(t)

for which ``w(z, t) = 2*sqrt(t)*T(eta)`` with ``eta = z/(2*sqrt(t))`` and

    T(eta) = a*(exp(-eta^2) + sqrt(pi)*eta*erf(eta)) + b*eta.

The front is ``s(t) = 2*gamma*sqrt(t)``.  ``gamma`` solves a scalar
transcendental equation that depends on the fixed-face condition.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DegenerateRoot, InvalidParams, NoSignChange, OutOfDomain
from .numerics import Interval, ToleranceSpec, bisect, erf

SQRT_PI = math.sqrt(math.pi)

# Root tolerance: run bisection down to the last representable bracket.
ROOT_TOL = ToleranceSpec(abs_tol=1e-16, rel_tol=0.0, max_iter=400)


class BcKind(str, enum.Enum):
    DIRICHLET = "dirichlet"
    ROBIN = "robin"
    NEUMANN = "neumann"


@dataclass(frozen=True)
class SimilarityParams:
    """Physical constants of the square-root coefficient family.

    ``eps`` is not stored: it is 1 for Robin and 0 for Neumann, and unused
    for Dirichlet.
    """

    L0: float = 1.0
    v0: float = 1.0
    w_m0: float = 0.5
    h0: float = 1.0
    bc_kind: BcKind = BcKind.DIRICHLET
    sigma: float = 1.0
    m: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "bc_kind", BcKind(self.bc_kind))
        for name in ("L0", "v0", "w_m0", "h0", "sigma", "m"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParams(f"{name} must be finite")
        if not (self.L0 > 0 and self.v0 > 0 and self.sigma > 0 and self.m > 0):
            raise InvalidParams("L0, v0, sigma and m must be positive")
        if self.w_m0 < 0:
            raise InvalidParams("w_m0 must be non-negative")
        if self.bc_kind is BcKind.DIRICHLET:
            if self.v0 < self.w_m0:
                raise InvalidParams("Dirichlet data needs v0 > w_m0")
        else:
            if not self.h0 > 0:
                raise InvalidParams("Robin/Neumann data needs h0 > 0")
            if self.v0 < self.eps * self.w_m0:
                raise InvalidParams("Robin data needs v0 > w_m0")

    @property
    def eps(self) -> int:
        return 1 if self.bc_kind is BcKind.ROBIN else 0

    def replace(self, **changes) -> "SimilarityParams":
        fields = dict(L0=self.L0, v0=self.v0, w_m0=self.w_m0, h0=self.h0,
                      bc_kind=self.bc_kind, sigma=self.sigma, m=self.m)
        fields.update(changes)
        return SimilarityParams(**fields)

    # coefficient functions of the family
    def L(self, t: float) -> float:
        return self.L0 * math.sqrt(t)

    def v(self, t: float) -> float:
        return 2.0 * self.v0 * math.sqrt(t)

    def h(self, t: float) -> float:
        return self.h0 / math.sqrt(t)

    def w_m(self, t: float) -> float:
        return 2.0 * self.w_m0 * math.sqrt(t)

    def w_m_prime(self, t: float) -> float:
        return self.w_m0 / math.sqrt(t)

    def v_prime(self, t: float) -> float:
        return self.v0 / math.sqrt(t)


class TProfile(NamedTuple):
    T: float
    dT: float
    d2T: float
    d3T: float


class PointState(NamedTuple):
    """Temperature and its derivatives at one point ``(z, t)``."""

    z: float
    t: float
    w: float
    w_z: float
    w_zz: float
    w_t: float
    s: float
    s_prime: float
    w_zzz: float
    w_zt: float


@dataclass(frozen=True)
class ClosedFormSolution:
    params: SimilarityParams
    gamma: float
    coeff_a: float
    coeff_b: float

    def s(self, t: float) -> float:
        return 2.0 * self.gamma * math.sqrt(t)

    def s_prime(self, t: float) -> float:
        return self.gamma / math.sqrt(t)

    def T(self, eta: float, extend: bool = False) -> TProfile:
        return eval_T(self, eta, extend=extend)

    def state(self, z: float, t: float, extend: bool = False) -> PointState:
        return eval_state(self, z, t, extend=extend)

    def w(self, z: float, t: float, extend: bool = False) -> float:
        return eval_state(self, z, t, extend=extend).w


# ---------------------------------------------------------------------------
# the transcendental equations


def gamma_gap(params: SimilarityParams, gamma: float) -> float:
    """``G(gamma) - F(gamma)`` for the kind-appropriate root equation.

    Strictly decreasing in ``gamma`` on the search bracket, so its single
    sign change is the similarity root.
    """
    g2 = gamma * gamma
    if params.bc_kind is BcKind.DIRICHLET:
        return params.v0 * math.exp(-g2) - (params.L0 * g2 + params.w_m0)
    h0 = params.h0
    lhs = (2.0 * params.v0 * h0 - params.L0 * gamma) * math.exp(-g2)
    rhs = (params.w_m0 + params.L0 * g2) * (SQRT_PI * erf(gamma) + 2.0 * h0 * params.eps)
    return lhs - rhs


def _dirichlet_bracket(params: SimilarityParams) -> Interval:
    if params.w_m0 > 0:
        return Interval(0.0, math.sqrt(math.log(params.v0 / params.w_m0)) + 1.0)
    cap = 1.0
    while gamma_gap(params, cap) >= 0:
        cap *= 2.0
        if cap > 1e6:
            raise NoSignChange("could not bracket the Dirichlet root")
    return Interval(0.0, cap)


def solve_gamma(params: SimilarityParams, tol: ToleranceSpec = ROOT_TOL) -> float:
    """Similarity root ``gamma > 0`` for the fixed-face condition in ``params``.

    Raises:
        DegenerateRoot: ``v0 == w_m0`` (Dirichlet) or ``v0 == eps*w_m0``
            (Robin/Neumann); the only root is ``gamma = 0``.
    """
    if params.bc_kind is BcKind.DIRICHLET:
        if params.v0 == params.w_m0:
            raise DegenerateRoot("v0 == w_m0: gamma = 0 and the boundary does not move")
        bracket = _dirichlet_bracket(params)
    else:
        if params.v0 == params.eps * params.w_m0:
            raise DegenerateRoot("v0 == eps*w_m0: gamma = 0 and the boundary does not move")
        bracket = Interval(0.0, 2.0 * params.v0 * params.h0 / params.L0)
    return bisect(lambda g: gamma_gap(params, g), bracket, tol)


def profile_coefficients(params: SimilarityParams, gamma: float) -> tuple[float, float]:
    """Coefficients ``(a, b)`` of ``T`` for a given root."""
    if params.bc_kind is BcKind.DIRICHLET:
        a = params.v0
        b = -params.L0 * gamma - params.v0 * SQRT_PI * erf(gamma)
        return a, b
    h0, eps = params.h0, params.eps
    denom = SQRT_PI * erf(gamma) + 2.0 * h0 * eps
    a = (2.0 * h0 * params.v0 - params.L0 * gamma) / denom
    b = -(2.0 * params.L0 * gamma * h0 * eps + 2.0 * h0 * params.v0 * SQRT_PI * erf(gamma)) / denom
    return a, b


def build_solution(params: SimilarityParams, tol: ToleranceSpec = ROOT_TOL) -> ClosedFormSolution:
    gamma = solve_gamma(params, tol)
    a, b = profile_coefficients(params, gamma)
    return ClosedFormSolution(params=params, gamma=gamma, coeff_a=a, coeff_b=b)


# ---------------------------------------------------------------------------
# evaluation


def eval_T(sol: ClosedFormSolution, eta: float, extend: bool = False) -> TProfile:
    """Profile ``T`` and its first three derivatives at ``eta``.

    ``T''`` uses ``2*a*exp(-eta^2)`` (equal to ``2T - 2*eta*T'`` by the ODE
    but free of cancellation); ``T''' = -2*eta*T''``.  With ``extend`` the
    closed form is evaluated outside ``[0, gamma]`` as well, which finite
    difference stencils near the boundaries need.
    """
    if not extend and not (0.0 <= eta <= sol.gamma):
        raise OutOfDomain(f"eta={eta} outside [0, {sol.gamma}]")
    a, b = sol.coeff_a, sol.coeff_b
    e = math.exp(-eta * eta)
    ef = erf(eta)
    T = a * (e + SQRT_PI * eta * ef) + b * eta
    dT = a * SQRT_PI * ef + b
    d2T = 2.0 * a * e
    d3T = -2.0 * eta * d2T
    return TProfile(T, dT, d2T, d3T)


def eval_state(sol: ClosedFormSolution, z: float, t: float, extend: bool = False) -> PointState:
    """Temperature and derivatives at ``(z, t)`` with ``0 <= z <= s(t)``."""
    if not t > 0:
        raise OutOfDomain(f"t={t} must be positive")
    rt = math.sqrt(t)
    s = 2.0 * sol.gamma * rt
    if not extend and not (0.0 <= z <= s):
        raise OutOfDomain(f"z={z} outside [0, s(t)={s}] at t={t}")
    eta = z / (2.0 * rt)
    # at z == s, eta may differ from gamma by an ulp
    prof = eval_T(sol, min(eta, sol.gamma) if not extend else eta, extend=True)
    T, dT, d2T, d3T = prof
    return PointState(
        z=z,
        t=t,
        w=2.0 * rt * T,
        w_z=dT,
        w_zz=d2T / (2.0 * rt),
        w_t=(T - eta * dT) / rt,
        s=s,
        s_prime=sol.gamma / rt,
        w_zzz=d3T / (4.0 * t),
        w_zt=-eta * d2T / (2.0 * t),
    )
