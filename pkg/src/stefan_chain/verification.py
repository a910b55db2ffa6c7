"""Residual checks for every equation and boundary condition along the chain.

Each ``verify_*`` function evaluates one problem of the chain on a grid and
returns a :class:`ResidualReport`.  Analytic residuals (closed-form
substitutions) are expected at rounding level; finite-difference residuals
are truncation limited and carry their own, looser tolerance.

Residuals are measured in mixed form ``|lhs - rhs| / max(1, |terms|)`` so a
single tolerance works both at small ``t`` (where the chain quantities grow
like powers of ``1/sqrt(t)``) and at order-one values.

Conditions that hold as time integrals from ``t = 0`` are checked in
differentiated form at each sampled time: their integrands are singular at
``t = 0`` for the square-root family, while the differentiated identities
are regular for ``t > 0``.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from . import transforms as tr
from .numerics import ToleranceSpec, integrate
from .similarity import BcKind, ClosedFormSolution, SimilarityParams, build_solution

__all__ = [
    "ANALYTIC_TOL",
    "FD_TOL",
    "Grid",
    "FdGrid",
    "Residual",
    "ResidualReport",
    "verify_p1",
    "verify_p2",
    "verify_p3",
    "verify_p4",
    "verify_signs",
    "verify_convergence",
    "verify_suites",
    "observed_orders",
    "DEFAULT_H0_LADDER",
]

ANALYTIC_TOL = 1e-8
FD_TOL = 1e-3
BOUNDARY_DT = 1e-4
DEFAULT_H0_LADDER = (10.0, 100.0, 1000.0, 10000.0)
SUITES = ("p1", "p2", "p3", "p4", "signs")


@dataclass(frozen=True)
class Grid:
    """Chebyshev-Lobatto nodes in ``[0, s(t)]`` times geometric times."""

    n_z: int = 32
    n_t: int = 16
    t_min: float = 1e-2
    t_max: float = 4.0

    def times(self) -> np.ndarray:
        return np.geomspace(self.t_min, self.t_max, self.n_t)

    def z_nodes(self, s: float) -> np.ndarray:
        k = np.arange(self.n_z)
        z = 0.5 * s * (1.0 - np.cos(np.pi * k / (self.n_z - 1)))
        z[0], z[-1] = 0.0, s
        return z

    def describe(self) -> dict:
        return {"z": {"kind": "chebyshev", "n": self.n_z, "range": "[0, s(t)]"},
                "t": {"kind": "geometric", "n": self.n_t, "range": [self.t_min, self.t_max]}}


@dataclass(frozen=True)
class FdGrid:
    """Sample points and step for the interior finite-difference PDE checks.

    Points sit at interior fractions ``[margin, 1-margin]`` of the moving band
    so no stencil leaves it.
    """

    step: float = 1e-3
    n_inner: int = 9
    n_t: int = 6
    t_min: float = 0.1
    t_max: float = 4.0
    margin: float = 0.05

    def times(self) -> np.ndarray:
        return np.geomspace(self.t_min, self.t_max, self.n_t)

    def fractions(self) -> np.ndarray:
        return np.linspace(self.margin, 1.0 - self.margin, self.n_inner)

    def describe(self) -> dict:
        return {"step": self.step, "n_inner": self.n_inner, "margin": self.margin,
                "t": {"kind": "geometric", "n": self.n_t, "range": [self.t_min, self.t_max]}}


@dataclass
class Residual:
    id: str
    max_abs: float
    mean_abs: float
    tol: float | None
    kind: str = "analytic"
    count: int = 0

    @property
    def passed(self) -> bool:
        return self.tol is None or (math.isfinite(self.max_abs) and self.max_abs <= self.tol)

    def to_dict(self) -> dict:
        return {"id": self.id, "max_abs": self.max_abs, "mean_abs": self.mean_abs,
                "tol": self.tol, "kind": self.kind, "count": self.count}


@dataclass
class ResidualReport:
    suite: str
    grid: dict
    residuals: list[Residual]
    tolerance: float
    passed: bool
    notes: dict = field(default_factory=dict)

    def residual(self, rid: str) -> Residual:
        for r in self.residuals:
            if r.id == rid:
                return r
        raise KeyError(rid)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "grid": self.grid,
                "residuals": [r.to_dict() for r in self.residuals],
                "tolerance": self.tolerance, "passed": self.passed, "notes": self.notes}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


class _Collector:
    """Accumulates residual samples per condition id."""

    def __init__(self, tol: float | None, fd_tol: float | None = None):
        self.override = tol
        self.tols = {"analytic": ANALYTIC_TOL if tol is None else tol,
                     "fd": (FD_TOL if fd_tol is None else fd_tol) if tol is None else tol}
        self.samples: dict[str, list[float]] = {}
        self.kinds: dict[str, str] = {}

    def add(self, rid: str, value: float, kind: str = "analytic") -> None:
        self.samples.setdefault(rid, []).append(abs(value))
        self.kinds[rid] = kind

    def add_pair(self, rid: str, lhs: float, rhs: float, *terms: float, kind: str = "analytic") -> None:
        scale = max(1.0, abs(lhs), abs(rhs), *(abs(x) for x in terms))
        self.add(rid, (lhs - rhs) / scale, kind)

    def report(self, suite: str, grid: dict, notes: dict | None = None) -> ResidualReport:
        residuals = []
        for rid, vals in self.samples.items():
            arr = np.asarray(vals, dtype=float)
            kind = self.kinds[rid]
            residuals.append(Residual(rid, float(arr.max()), float(arr.mean()), self.tols[kind],
                                      kind, int(arr.size)))
        return ResidualReport(suite=suite, grid=grid, residuals=residuals,
                              tolerance=self.tols["analytic"],
                              passed=all(r.passed for r in residuals), notes=notes or {})


def _ddt(f: Callable[[float], float], t: float, rel_dt: float) -> float:
    """Central time derivative with step ``rel_dt * t`` (similarity scaling)."""
    dt = rel_dt * t
    return (f(t + dt) - f(t - dt)) / (2.0 * dt)


def _with_chain(sol: ClosedFormSolution, sigma: float | None, m: float | None = None) -> ClosedFormSolution:
    changes = {}
    if sigma is not None and sigma != sol.params.sigma:
        changes["sigma"] = sigma
    if m is not None and m != sol.params.m:
        changes["m"] = m
    return replace(sol, params=sol.params.replace(**changes)) if changes else sol


# ---------------------------------------------------------------------------
# (P1): heat equation, Stefan condition, phase-change temperature, fixed face


def verify_p1(sol, grid: Grid = Grid(), tol: float | None = None) -> ResidualReport:
    """Check the Stefan problem itself.

    ``sol`` may be any object with ``params``, ``s(t)``, ``s_prime(t)`` and
    ``state(z, t)`` so perturbed or numerical solutions can be checked too.
    """
    p = sol.params
    c = _Collector(tol)
    for t in grid.times():
        t = float(t)
        s = sol.s(t)
        for z in grid.z_nodes(s):
            st = sol.state(float(z), t)
            c.add_pair("heat equation", st.w_zz, st.w_t)
        top = sol.state(s, t)
        c.add_pair("stefan condition", top.w_z, -p.L(t) * sol.s_prime(t))
        c.add_pair("melt temperature", top.w, p.w_m(t))
        face = sol.state(0.0, t)
        if p.bc_kind is BcKind.DIRICHLET:
            c.add_pair("dirichlet face", face.w, p.v(t))
        else:
            rhs = p.h(t) * (p.eps * face.w - p.v(t))
            c.add_pair("robin face" if p.eps else "neumann face", face.w_z, rhs,
                       p.h(t) * face.w, p.h(t) * p.v(t))
    return c.report("p1", grid.describe(), {"bc": p.bc_kind.value})


# ---------------------------------------------------------------------------
# (P2): Burgers problem for x = -(2/sigma) w_z / w


def _x_ext(sol: ClosedFormSolution, z: float, t: float) -> float:
    st = sol.state(z, t, extend=True)
    return -2.0 / sol.params.sigma * st.w_z / st.w


def burgers_fd_residual(sol: ClosedFormSolution, z: float, t: float, step: float) -> float:
    """Scaled Burgers residual from central differences of ``x`` in ``z`` and ``t``.

    Steps follow the similarity scaling: ``step*sqrt(t)`` in ``z`` and
    ``step*t`` in ``t``.
    """
    sigma = sol.params.sigma
    hz, ht = step * math.sqrt(t), step * t
    x0 = _x_ext(sol, z, t)
    xp, xm = _x_ext(sol, z + hz, t), _x_ext(sol, z - hz, t)
    x_t = (_x_ext(sol, z, t + ht) - _x_ext(sol, z, t - ht)) / (2.0 * ht)
    x_z = (xp - xm) / (2.0 * hz)
    x_zz = (xp - 2.0 * x0 + xm) / (hz * hz)
    scale = max(1.0, abs(x_t), abs(x_zz), abs(sigma * x0 * x_z))
    return (x_t - x_zz + sigma * x0 * x_z) / scale


def verify_p2(sol: ClosedFormSolution, grid: Grid = Grid(), sigma: float | None = None,
              fd_step: float = 1e-2, tol: float | None = None) -> ResidualReport:
    sol = _with_chain(sol, sigma)
    p = sol.params
    sg = p.sigma
    c = _Collector(tol)
    quad_tol = ToleranceSpec(abs_tol=1e-12)
    for t in grid.times():
        t = float(t)
        s = sol.s(t)
        zs = grid.z_nodes(s)
        for i, z in enumerate(zs):
            jet = tr.chain_jet(sol.state(float(z), t), sg, p.m)
            c.add_pair("burgers", jet.x_t, jet.x_zz - sg * jet.x * jet.x_z,
                       jet.x_zz, sg * jet.x * jet.x_z)
            if 0 < i < len(zs) - 1:
                c.add("burgers (fd)", burgers_fd_residual(sol, float(z), t, fd_step), kind="fd")
        top = tr.chain_jet(sol.state(s, t), sg, p.m)
        L, wm = p.L(t), p.w_m(t)
        c.add_pair("front speed", top.x, 2.0 / sg * L / wm * sol.s_prime(t))
        rhs = -2.0 / sg * p.w_m_prime(t) / wm + 0.5 * sg * top.x ** 2 * (1.0 - wm / L)
        c.add_pair("front gradient", top.x_z, rhs, 0.5 * sg * top.x ** 2)
        integral = integrate(lambda zz: tr.cole_hopf(sol.state(zz, t), sg), 0.0, s, quad_tol)
        if p.bc_kind is BcKind.DIRICHLET:
            c.add_pair("x integral", integral, 2.0 / sg * math.log(p.v(t) / wm))
        else:
            x0 = tr.cole_hopf(sol.state(0.0, t), sg)
            h = p.h(t)
            c.add_pair("x integral", h * p.v(t),
                       (h * p.eps + 0.5 * sg * x0) * wm * math.exp(0.5 * sg * integral))
    grid_desc = grid.describe() | {"fd_step": fd_step}
    return c.report("p2", grid_desc, {"sigma": sg})


# ---------------------------------------------------------------------------
# (P3): reciprocal problem for Psi(x, t)


def _face_jets(sol: ClosedFormSolution, t: float) -> tuple[tr.ChainJet, tr.ChainJet]:
    p = sol.params
    return (tr.chain_jet(sol.state(0.0, t), p.sigma, p.m),
            tr.chain_jet(sol.state(sol.s(t), t), p.sigma, p.m))


def _robin_face_log(sol: ClosedFormSolution, face_factor: Callable[[float], float]) -> Callable[[float], float]:
    """d/dt ln(h v) - d/dt ln(face_factor), the Robin/Neumann form of the face integral."""
    p = sol.params

    def rate(t: float) -> float:
        return (_ddt(lambda tt: math.log(p.h(tt) * p.v(tt)), t, BOUNDARY_DT)
                - _ddt(lambda tt: math.log(face_factor(tt)), t, BOUNDARY_DT))

    return rate


def psi_fd_residual(sol: ClosedFormSolution, x: float, t: float, h: float) -> float:
    """Scaled residual of ``Psi_t = (-1/Psi)_xx + sigma`` by central differences."""
    sigma = sol.params.sigma

    def inv_psi(xx, tt):
        return 1.0 / tr.psi_at_x(sol, xx, tt)

    psi_t = (tr.psi_at_x(sol, x, t + h) - tr.psi_at_x(sol, x, t - h)) / (2.0 * h)
    f0 = inv_psi(x, t)
    f_xx = (inv_psi(x + h, t) - 2.0 * f0 + inv_psi(x - h, t)) / (h * h)
    scale = max(1.0, abs(psi_t), abs(f_xx), sigma)
    return (psi_t - (-f_xx + sigma)) / scale


def _band_points(lo_hi: Callable[[float], tuple[float, float]], t: float, h: float,
                 fractions: Iterable[float]) -> list[float]:
    """Interior band points whose stencils stay inside the band at t and t +/- h."""
    lo, hi = lo_hi(t)
    lo_m, hi_m = lo_hi(t - h)
    lo_p, hi_p = lo_hi(t + h)
    pts = []
    for f in fractions:
        u = lo + f * (hi - lo)
        if lo < u - h and u + h < hi and lo_m < u < hi_m and lo_p < u < hi_p:
            pts.append(u)
    return pts


def verify_p3(sol: ClosedFormSolution, grid: Grid = Grid(), sigma: float | None = None,
              fd: FdGrid = FdGrid(), tol: float | None = None) -> ResidualReport:
    """Check the reciprocal problem.

    Boundary conditions are evaluated on ``grid``; the interior equation by
    finite differences on ``fd``, which needs ``x(., t)`` to be strictly
    monotone (otherwise :class:`NonMonotone` propagates).
    """
    sol = _with_chain(sol, sigma)
    p = sol.params
    sg = p.sigma
    c = _Collector(tol)

    def X0(t):
        return tr.boundary_curves(sol, t).X0

    def X1(t):
        return tr.boundary_curves(sol, t).X1

    robin_rate = None
    if p.bc_kind is not BcKind.DIRICHLET:
        robin_rate = _robin_face_log(sol, lambda tt: p.h(tt) * p.eps + 0.5 * sg * X0(tt))

    for t in grid.times():
        t = float(t)
        j0, j1 = _face_jets(sol, t)
        wm, L = p.w_m(t), p.L(t)
        # free-boundary value
        inv = -2.0 / sg * p.w_m_prime(t) / wm + 0.5 * sg * j1.x ** 2 * (1.0 - wm / L)
        c.add_pair("psi at front", j1.psi, 1.0 / inv)
        # differentiated time-integral conditions
        rate1 = sg * j1.x / j1.psi * (wm / (2.0 * L) - 1.0) - j1.psi_x / j1.psi ** 3
        c.add_pair("dX1/dt", _ddt(X1, t, BOUNDARY_DT), rate1, kind="fd")
        rate0 = -j0.psi_x / j0.psi ** 3 - sg * j0.x / j0.psi
        c.add_pair("dX0/dt", _ddt(X0, t, BOUNDARY_DT), rate0, kind="fd")
        face = 0.25 * sg * sg * j0.x ** 2 - 0.5 * sg / j0.psi
        if robin_rate is None:
            c.add_pair("psi face rate", face, p.v_prime(t) / p.v(t))
        else:
            c.add_pair("psi face rate", face, robin_rate(t), kind="fd")

    for t in fd.times():
        t = float(t)

        def band(tt):
            bc = tr.boundary_curves(sol, tt)
            return min(bc.X0, bc.X1), max(bc.X0, bc.X1)

        tr.monotone_direction(sol, t)
        for x in _band_points(band, t, fd.step, fd.fractions()):
            c.add("psi transport (fd)", psi_fd_residual(sol, x, t, fd.step), kind="fd")
    return c.report("p3", grid.describe() | {"fd": fd.describe()}, {"sigma": sg})


# ---------------------------------------------------------------------------
# (P4): exponential-source problem for theta(y, t)


def theta_fd_residual(sol: ClosedFormSolution, y: float, t: float, h: float) -> float:
    """Scaled residual of ``theta_t = -(1/theta)_yy - m (1/theta)_y + sigma exp(m y)``."""
    p = sol.params

    def th(yy, tt):
        return tr.theta_at_y(sol, yy, tt)

    theta_t = (th(y, t + h) - th(y, t - h)) / (2.0 * h)
    fm, f0, fp = 1.0 / th(y - h, t), 1.0 / th(y, t), 1.0 / th(y + h, t)
    f_y = (fp - fm) / (2.0 * h)
    f_yy = (fp - 2.0 * f0 + fm) / (h * h)
    src = p.sigma * math.exp(p.m * y)
    rhs = -f_yy - p.m * f_y + src
    scale = max(1.0, abs(theta_t), abs(f_yy), abs(p.m * f_y), src)
    return (theta_t - rhs) / scale


def verify_p4(sol: ClosedFormSolution, grid: Grid = Grid(), sigma: float | None = None,
              m: float | None = None, fd: FdGrid = FdGrid(), tol: float | None = None,
              include_interior: bool = True) -> ResidualReport:
    """Check the exponential-source problem reached through the full chain."""
    sol = _with_chain(sol, sigma, m)
    p = sol.params
    sg, mm = p.sigma, p.m
    c = _Collector(tol)

    def img(y):
        return math.expm1(mm * y) / mm

    def Y(t):
        return tr.boundary_curves(sol, t)

    robin_rate = None
    if p.bc_kind is not BcKind.DIRICHLET:
        robin_rate = _robin_face_log(sol, lambda tt: p.h(tt) * p.eps + sg * img(Y(tt).Y0) / 2.0)

    for t in grid.times():
        t = float(t)
        j0, j1 = _face_jets(sol, t)
        wm, L = p.w_m(t), p.L(t)
        e0, e1 = math.exp(mm * j0.y), math.exp(mm * j1.y)
        # free-boundary value
        bracket = (-2.0 / sg * p.w_m_prime(t) / wm
                   + sg * (e1 - 1.0) ** 2 / (2.0 * mm * mm) * (1.0 - wm / L))
        c.add_pair("theta at front", j1.theta, e1 / bracket)
        # differentiated time-integral conditions
        i1 = e1 * (sg * (e1 - 1.0) / (mm * j1.theta) * (wm / (2.0 * L) - 1.0)
                   - (j1.theta_y - mm * j1.theta) / j1.theta ** 3)
        c.add_pair("front image rate", _ddt(lambda tt: img(Y(tt).Y1), t, BOUNDARY_DT), i1, kind="fd")
        i0 = -e0 * (sg * (e0 - 1.0) / (mm * j0.theta) + (j0.theta_y - mm * j0.theta) / j0.theta ** 3)
        c.add_pair("face image rate", _ddt(lambda tt: img(Y(tt).Y0), t, BOUNDARY_DT), i0, kind="fd")
        face = sg * sg * (e0 - 1.0) ** 2 / (4.0 * mm * mm) - sg * e0 / (2.0 * j0.theta)
        if robin_rate is None:
            c.add_pair("theta face rate", face, p.v_prime(t) / p.v(t))
        else:
            c.add_pair("theta face rate", face, robin_rate(t), kind="fd")
        # two evaluation paths for theta
        for z in grid.z_nodes(sol.s(t)):
            st = sol.state(float(z), t)
            theta, _ = tr.theta_from_w(st, sg, mm)
            x = tr.cole_hopf(st, sg)
            psi = tr.psi_from_w(st, sg)
            alt = (1.0 + mm * x) * psi
            c.add("theta identity", (theta - alt) / max(abs(theta), abs(alt)))

    if include_interior:
        for t in fd.times():
            t = float(t)

            def band(tt):
                bc = tr.boundary_curves(sol, tt)
                return min(bc.Y0, bc.Y1), max(bc.Y0, bc.Y1)

            tr.monotone_direction(sol, t)
            for y in _band_points(band, t, fd.step, fd.fractions()):
                c.add("theta evolution (fd)", theta_fd_residual(sol, y, t, fd.step), kind="fd")
    return c.report("p4", grid.describe() | {"fd": fd.describe()}, {"sigma": sg, "m": mm})


# ---------------------------------------------------------------------------
# sign properties


def verify_signs(sol: ClosedFormSolution, grid: Grid = Grid(), sigma: float | None = None) -> ResidualReport:
    """Count violations of w > 0, w_z <= 0, x >= 0, X0 >= 0, X1 >= 0."""
    sol = _with_chain(sol, sigma)
    sg = sol.params.sigma
    counts = {"w>0": 0, "w_z<=0": 0, "x>=0": 0, "X0>=0": 0, "X1>=0": 0}
    n = {k: 0 for k in counts}
    extremes = {"min_w": math.inf, "max_w_z": -math.inf, "min_x": math.inf}
    for t in grid.times():
        t = float(t)
        for z in grid.z_nodes(sol.s(t)):
            st = sol.state(float(z), t)
            n["w>0"] += 1
            n["w_z<=0"] += 1
            counts["w>0"] += st.w <= 0
            counts["w_z<=0"] += st.w_z > 0
            extremes["min_w"] = min(extremes["min_w"], st.w)
            extremes["max_w_z"] = max(extremes["max_w_z"], st.w_z)
            if st.w > 0:
                x = tr.cole_hopf(st, sg)
                n["x>=0"] += 1
                counts["x>=0"] += x < 0
                extremes["min_x"] = min(extremes["min_x"], x)
        bc = tr.boundary_curves(sol, t)
        n["X0>=0"] += 1
        n["X1>=0"] += 1
        counts["X0>=0"] += bc.X0 < 0
        counts["X1>=0"] += bc.X1 < 0
    residuals = [Residual(k, float(v), float(v) / max(n[k], 1), 0.0, "count", n[k]) for k, v in counts.items()]
    return ResidualReport("signs", grid.describe(), residuals, 0.0,
                          all(r.passed for r in residuals), extremes)


# ---------------------------------------------------------------------------
# h0 -> infinity convergence of the Robin solution


def verify_convergence(params_base: SimilarityParams, h0_list: Sequence[float] = DEFAULT_H0_LADDER,
                       tol: float = 1e-3, grid: Grid = Grid(n_z=16, n_t=8)) -> ResidualReport:
    """Distance between Robin roots and the Dirichlet root as ``h0`` grows.

    ``passed`` requires the final gap to be within ``tol`` and the gap
    sequence to be strictly decreasing; with a single ``h0`` the
    monotonicity flag is ``None`` (indeterminate) and only the gap counts.
    """
    robin = params_base.replace(bc_kind=BcKind.ROBIN)
    dirichlet = build_solution(params_base.replace(bc_kind=BcKind.DIRICHLET))
    h0s = [float(h) for h in h0_list]
    sols = [build_solution(robin.replace(h0=h)) for h in h0s]
    gaps = [abs(s.gamma - dirichlet.gamma) for s in sols]
    if len(gaps) < 2:
        decreasing = None
    else:
        decreasing = all(b < a for a, b in zip(gaps, gaps[1:]))
    last = sols[-1]
    w_gap = 0.0
    for t in grid.times():
        t = float(t)
        smin = min(last.s(t), dirichlet.s(t))
        for z in grid.z_nodes(smin):
            w_gap = max(w_gap, abs(last.w(float(z), t) - dirichlet.w(float(z), t)))
    residuals = [Residual(f"gamma gap h0={h:g}", g, g, None, "gap", 1) for h, g in zip(h0s, gaps)]
    residuals.append(Residual("final gamma gap", gaps[-1], gaps[-1], tol, "gap", 1))
    residuals.append(Residual(f"max |w^1 - w| h0={h0s[-1]:g}", w_gap, w_gap, None, "gap",
                              grid.n_z * grid.n_t))
    passed = gaps[-1] <= tol and decreasing is not False
    notes = {"h0": h0s, "gamma_robin": [s.gamma for s in sols], "gamma_dirichlet": dirichlet.gamma,
             "gaps": gaps, "strictly_decreasing": decreasing, "w_gap": w_gap}
    return ResidualReport("converge", grid.describe() | {"h0": h0s}, residuals, tol, passed, notes)


# ---------------------------------------------------------------------------
# helpers


def observed_orders(errors: Sequence[float], ratio: float = 2.0) -> list[float]:
    """``log_ratio(e_k / e_{k+1})`` for successive refinement levels."""
    return [math.log(a / b) / math.log(ratio) for a, b in zip(errors, errors[1:])]


def _thread_count() -> int:
    raw = os.environ.get("STEFAN_CHAIN_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def verify_suites(sol: ClosedFormSolution, suites: Iterable[str] = SUITES, grid: Grid = Grid(),
                  fd: FdGrid = FdGrid(), tol: float | None = None) -> list[ResidualReport]:
    """Run several suites, possibly in parallel; reports come back in ``SUITES`` order."""
    runners = {
        "p1": lambda: verify_p1(sol, grid, tol=tol),
        "p2": lambda: verify_p2(sol, grid, tol=tol),
        "p3": lambda: verify_p3(sol, grid, fd=fd, tol=tol),
        "p4": lambda: verify_p4(sol, grid, fd=fd, tol=tol),
        "signs": lambda: verify_signs(sol, grid),
    }
    chosen = [s for s in SUITES if s in set(suites)]
    workers = min(_thread_count(), len(chosen)) or 1
    if workers == 1:
        return [runners[s]() for s in chosen]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {s: pool.submit(runners[s]) for s in chosen}
        return [futures[s].result() for s in chosen]
