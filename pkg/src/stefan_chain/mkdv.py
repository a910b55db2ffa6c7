"""Kink solution of the third-order equation

    x_t = x_yyy - (1/2) x_y^3

and its hodograph image, the Casimir equation

    Psi_t = (1/2) [ (Psi^-2)_xxx - (Psi^-2)_x ].

The kink ``x = 2 ln cosh(theta)``, ``theta = (A/2)(y - (A^2/2) t)`` is exact.
Swapping dependent and independent variables (``Psi = 1/x_y`` sampled on a
fixed ``x`` grid) gives a solution of the Casimir equation.  The time part
of the reciprocal map holds only for the time-reversed preimage.
:func:`verify_casimir` checks both by finite differences.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, NonMonotone
from .numerics import ToleranceSpec
from .verification import Residual, ResidualReport

__all__ = [
    "KinkParams",
    "PsiField",
    "kink_field",
    "kink_residual",
    "hodograph_to_psi",
    "verify_casimir",
    "casimir_refinement",
    "verify_mkdv",
    "write_samples_csv",
]

KINK_TOL = 1e-12
ROUND_TRIP_TOL = 1e-10
CASIMIR_TOL = 1e-3
HODOGRAPH_TOL = ToleranceSpec(abs_tol=1e-15, rel_tol=0.0, max_iter=200)


@dataclass(frozen=True)
class KinkParams:
    amp: float = 2.0
    y_min: float = 0.75
    y_max: float = 3.0
    n_y: int = 400
    n_t: int = 40
    t_range: tuple[float, float] = (0.0, 0.25)
    tanh_floor: float = 0.2

    def __post_init__(self):
        object.__setattr__(self, "t_range", (float(self.t_range[0]), float(self.t_range[1])))
        if not self.amp > 0:
            raise InvalidParams("amp must be positive")
        if not self.y_max > self.y_min:
            raise InvalidParams("need y_min < y_max")
        if self.n_y < 5 or self.n_t < 3:
            raise InvalidParams("need n_y >= 5 and n_t >= 3 for the difference stencils")
        if not self.t_range[1] > self.t_range[0]:
            raise InvalidParams("t_range must be increasing")
        if not 0 < self.tanh_floor < 1:
            raise InvalidParams("tanh_floor must lie in (0, 1)")

    @property
    def speed(self) -> float:
        return 0.5 * self.amp ** 2

    def phase(self, y, t):
        return 0.5 * self.amp * (y - self.speed * t)

    def min_phase(self) -> float:
        return self.phase(self.y_min, self.t_range[1])

    def refined(self, times: int = 1) -> "KinkParams":
        """Same domain with both step sizes halved ``times`` times."""
        n_y, n_t = self.n_y, self.n_t
        for _ in range(times):
            n_y, n_t = 2 * n_y - 1, 2 * n_t - 1
        return KinkParams(self.amp, self.y_min, self.y_max, n_y, n_t, self.t_range, self.tanh_floor)


def _logcosh(theta):
    a = np.abs(theta)
    return a + np.log1p(np.exp(-2.0 * a)) - math.log(2.0)


def kink_field(p: KinkParams, y, t):
    """``(x, x_y, x_yyy, x_t)`` of the kink at ``(y, t)``; arrays broadcast."""
    A = p.amp
    th = p.phase(np.asarray(y, dtype=float), np.asarray(t, dtype=float))
    tn = np.tanh(th)
    e = np.exp(-2.0 * np.abs(th))
    sech2 = 4.0 * e / (1.0 + e) ** 2
    x = 2.0 * _logcosh(th)
    x_y = A * tn
    x_yyy = -0.5 * A ** 3 * sech2 * tn
    x_t = -0.5 * A ** 3 * tn
    return x, x_y, x_yyy, x_t


def kink_residual(p: KinkParams, y, t):
    """Pointwise ``x_t - (x_yyy - x_y^3/2)``."""
    _, x_y, x_yyy, x_t = kink_field(p, y, t)
    return x_t - (x_yyy - 0.5 * x_y ** 3)


@dataclass(frozen=True)
class PsiField:
    """``Psi`` sampled on a uniform ``x`` grid at each time, with the preimages ``y(x, t)``."""

    params: KinkParams
    x: np.ndarray
    t: np.ndarray
    y: np.ndarray
    psi: np.ndarray

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])


def _x_of(p: KinkParams, y, t):
    return 2.0 * _logcosh(p.phase(y, t))


def hodograph_to_psi(p: KinkParams, tol: ToleranceSpec = HODOGRAPH_TOL) -> PsiField:
    """Invert ``y -> x`` at every time and sample ``Psi = 1/x_y``.

    The ``x`` grid spans the values reached at every time, so all samples
    are preimages of points inside ``[y_min, y_max]``.

    Raises:
        NonMonotone: the kink centre (``x_y = 0``) lies in the sampled domain.
        InvalidParams: ``tanh`` of the phase drops below ``tanh_floor``.
    """
    th_min = p.min_phase()
    if not th_min > 0:
        raise NonMonotone(f"x_y changes sign: kink centre inside the domain (min phase {th_min:.6g})",
                          t=p.t_range[1], location=p.y_min)
    if math.tanh(th_min) < p.tanh_floor:
        raise InvalidParams(f"tanh(min phase) = {math.tanh(th_min):.6g} below tanh_floor {p.tanh_floor}")
    t = np.linspace(p.t_range[0], p.t_range[1], p.n_t)
    x_lo = float(np.max(_x_of(p, p.y_min, t)))
    x_hi = float(np.min(_x_of(p, p.y_max, t)))
    if not x_hi > x_lo:
        raise InvalidParams("no x range is covered at every time; widen [y_min, y_max]")
    x = np.linspace(x_lo, x_hi, p.n_y)
    tt, xx = np.meshgrid(t, x, indexing="ij")
    lo = np.full(xx.shape, p.y_min)
    hi = np.full(xx.shape, p.y_max)
    for _ in range(tol.max_iter):
        mid = 0.5 * (lo + hi)
        below = _x_of(p, mid, tt) < xx
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.max(hi - lo) <= tol.abs_tol:
            break
    y = 0.5 * (lo + hi)
    _, x_y, _, _ = kink_field(p, y, tt)
    return PsiField(p, x, t, y, 1.0 / x_y)


def _casimir_residual(field: PsiField, reflect: bool) -> np.ndarray:
    hx, ht = field.dx, field.dt
    r = field.psi ** -2
    r_x = (r[:, 3:-1] - r[:, 1:-3]) / (2.0 * hx)
    r_xxx = (r[:, 4:] - 2.0 * r[:, 3:-1] + 2.0 * r[:, 1:-3] - r[:, :-4]) / (2.0 * hx ** 3)
    psi_t = (field.psi[2:, 2:-2] - field.psi[:-2, 2:-2]) / (2.0 * ht)
    rhs = 0.5 * (r_xxx - r_x)[1:-1]
    # time reversal: Phi(x, tau) = Psi(x, -tau) has Phi_tau = -Psi_t
    lhs = -psi_t if reflect else psi_t
    return lhs - rhs


def _flux_residual(field: PsiField, reflect: bool) -> np.ndarray:
    # time part of the reciprocal map: y_t at fixed x equals (1/2)((Psi^-2)_xx - Psi^-2)
    hx, ht = field.dx, field.dt
    r = field.psi ** -2
    r_xx = (r[:, 2:] - 2.0 * r[:, 1:-1] + r[:, :-2]) / hx ** 2
    flux = 0.5 * (r_xx - r[:, 1:-1])[1:-1]
    y_t = (field.y[2:, 1:-1] - field.y[:-2, 1:-1]) / (2.0 * ht)
    lhs = -y_t if reflect else y_t
    return lhs - flux


def verify_casimir(field: PsiField, tol: float = CASIMIR_TOL, reflect: bool = True) -> ResidualReport:
    """Finite-difference residuals of the Casimir equation and of the time part of the reciprocal map.

    The kink's image ``Psi(x, t)`` does not depend on ``t`` (a travelling
    wave in ``y`` is stationary at fixed ``x``), so the Casimir residual is
    blind to the time orientation.  The flux residual is not: only the
    time-reversed preimage ``y(x, -t)`` moves at the rate the map prescribes,
    and without ``reflect`` it is off by ``amp**2``.
    """
    residuals = []
    for rid, fn in (("casimir (fd)", _casimir_residual), ("flux (fd)", _flux_residual)):
        res = np.abs(fn(field, reflect))
        residuals.append(Residual(rid, float(res.max()), float(res.mean()), tol, "fd", int(res.size)))
    grid = {"n_x": int(field.x.size), "n_t": int(field.t.size), "dx": field.dx, "dt": field.dt}
    return ResidualReport("mkdv", grid, residuals, tol, all(r.passed for r in residuals), {"reflect": reflect})


def casimir_refinement(p: KinkParams, levels: int = 3, reflect: bool = True) -> dict[str, tuple[list[float], list[float]]]:
    """Max residuals over ``levels`` grids (both steps halved each time) and observed orders, per residual id."""
    reports = [verify_casimir(hodograph_to_psi(p.refined(k)), reflect=reflect) for k in range(levels)]
    out = {}
    for rid in ("casimir (fd)", "flux (fd)"):
        errs = [rep.residual(rid).max_abs for rep in reports]
        out[rid] = (errs, [math.log2(errs[k] / errs[k + 1]) for k in range(levels - 1)])
    return out


def verify_mkdv(p: KinkParams = KinkParams(), tol: float = CASIMIR_TOL, reflect: bool = True,
                levels: int = 3) -> ResidualReport:
    """Kink identity, round-trip inversion and the Casimir residual with its refinement orders."""
    field = hodograph_to_psi(p)
    tt = np.broadcast_to(field.t[:, None], field.y.shape)
    kink = np.abs(kink_residual(p, field.y, tt))
    back = np.abs(_x_of(p, field.y, tt) - field.x[None, :])
    y_edge = hodograph_to_psi_roundtrip(p)
    study = casimir_refinement(p, levels, reflect)
    fd_report = verify_casimir(field, tol, reflect)
    residuals = [
        Residual("kink identity", float(kink.max()), float(kink.mean()), KINK_TOL, "analytic", int(kink.size)),
        Residual("hodograph x round trip", float(back.max()), float(back.mean()), ROUND_TRIP_TOL, "analytic",
                 int(back.size)),
        Residual("y_min round trip", y_edge, y_edge, ROUND_TRIP_TOL, "analytic", 1),
        *fd_report.residuals,
    ]
    grid = {"n_y": p.n_y, "n_t": p.n_t, "amp": p.amp, "y": [p.y_min, p.y_max], "t": list(p.t_range)}
    notes = {"reflect": reflect}
    for rid, (errs, orders) in study.items():
        key = rid.split()[0]
        notes[f"{key}_levels"], notes[f"{key}_orders"] = errs, orders
    return ResidualReport("mkdv", grid, residuals, tol, all(r.passed for r in residuals), notes)


def hodograph_to_psi_roundtrip(p: KinkParams, tol: ToleranceSpec = HODOGRAPH_TOL) -> float:
    """``|y(x(y_min, t0), t0) - y_min|`` through the same bisection."""
    t0 = p.t_range[0]
    target = float(_x_of(p, p.y_min, t0))
    lo, hi = p.y_min, p.y_max
    for _ in range(tol.max_iter):
        mid = 0.5 * (lo + hi)
        if _x_of(p, mid, t0) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol.abs_tol:
            break
    return abs(0.5 * (lo + hi) - p.y_min)


def write_samples_csv(field: PsiField, path) -> None:
    """Rows ``y, t, x, v, psi`` with ``v = x_y``."""
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["y", "t", "x", "v", "psi"])
        for k, t in enumerate(field.t):
            for i, x in enumerate(field.x):
                psi = field.psi[k, i]
                out.writerow([repr(float(field.y[k, i])), repr(float(t)), repr(float(x)),
                              repr(float(1.0 / psi)), repr(float(psi))])
