"""Front-fixing finite differences for the one-phase Stefan problem.

With ``xi = z/s(t)`` the moving domain ``[0, s(t)]`` becomes ``[0, 1]`` and
the heat equation turns into

    W_t = W_xixi / s^2 + xi * (s'/s) * W_xi,

while the Stefan condition gives ``s' = -W_xi(1, t) / (L(t) s(t))``.  Each
time step solves the diffusion part implicitly (backward Euler, one
tridiagonal system) and couples the front position through Picard
iteration on ``s``.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
from scipy.linalg import solve_banded

from .errors import InvalidParams, NonPositiveBoundary, PicardDiverged, SingularCoefficient
from .similarity import BcKind, ClosedFormSolution, SimilarityParams, build_solution
from .verification import Residual, ResidualReport

__all__ = [
    "Coefficients",
    "FdConfig",
    "FdSolution",
    "fd_solve",
    "fd_compare",
    "write_trajectory_csv",
    "write_field_csv",
]

Scalar = Callable[[float], float]


@dataclass(frozen=True)
class Coefficients:
    """Time-dependent data ``L(t)``, ``v(t)``, ``w_m(t)`` and ``h(t)``."""

    L: Scalar
    v: Scalar
    w_m: Scalar
    h: Scalar | None = None
    eps: int = 1

    @classmethod
    def sqrt_t(cls, params: SimilarityParams) -> "Coefficients":
        return cls(L=params.L, v=params.v, w_m=params.w_m,
                   h=None if params.bc_kind is BcKind.DIRICHLET else params.h, eps=params.eps)


@dataclass(frozen=True)
class FdConfig:
    coeffs: Coefficients
    n_xi: int = 200
    dt: float = 1e-4
    t0: float = 0.25
    t_end: float = 1.0
    bc_kind: BcKind = BcKind.DIRICHLET
    seed: str = "similarity"
    params: SimilarityParams | None = None
    s0: float | None = None
    picard_tol: float = 1e-12
    picard_max: int = 100

    def __post_init__(self):
        object.__setattr__(self, "bc_kind", BcKind(self.bc_kind))
        if self.n_xi < 16:
            raise InvalidParams("n_xi must be at least 16")
        if not (self.t0 > 0 and self.t_end > self.t0):
            raise InvalidParams("need 0 < t0 < t_end")
        if not (0 < self.dt <= self.t_end - self.t0):
            raise InvalidParams("dt must lie in (0, t_end - t0]")
        if self.seed not in ("similarity", "linear"):
            raise InvalidParams(f"unknown seed {self.seed!r}")
        if self.seed == "similarity" and self.params is None:
            raise InvalidParams("a similarity seed needs the square-root family params")
        if self.seed == "linear" and not (self.s0 is not None and self.s0 > 0):
            raise InvalidParams("a linear seed needs s0 > 0")
        if self.bc_kind is not BcKind.DIRICHLET and self.coeffs.h is None:
            raise InvalidParams("Robin/Neumann runs need h(t)")

    @classmethod
    def for_family(cls, params: SimilarityParams, **kwargs) -> "FdConfig":
        return cls(coeffs=Coefficients.sqrt_t(params), bc_kind=params.bc_kind, params=params, **kwargs)

    @classmethod
    def from_dict(cls, doc: dict) -> "FdConfig":
        """Build a config from the JSON layout used by the command line.

        Keys: ``n_xi, dt, t0, t_end, bc, coeffs{family, L0, v0, h0, wm0, eps},
        seed, picard_tol, picard_max`` and ``s0`` for a linear seed.
        """
        co = dict(doc.get("coeffs", {}))
        family = co.pop("family", "sqrt_t")
        if family != "sqrt_t":
            raise InvalidParams(f"unsupported coefficient family {family!r}")
        bc = BcKind(doc.get("bc", "dirichlet"))
        if "eps" in co and bc is not BcKind.DIRICHLET:
            expected = BcKind.ROBIN if int(co["eps"]) == 1 else BcKind.NEUMANN
            if expected is not bc:
                raise InvalidParams(f"bc={bc.value} conflicts with eps={co['eps']}")
        params = SimilarityParams(L0=float(co.get("L0", 1.0)), v0=float(co.get("v0", 1.0)),
                                  w_m0=float(co.get("wm0", 0.5)), h0=float(co.get("h0", 1.0)),
                                  bc_kind=bc)
        kwargs = {k: doc[k] for k in ("n_xi", "dt", "t0", "t_end", "seed", "s0", "picard_tol", "picard_max")
                  if k in doc}
        return cls.for_family(params, **kwargs)

    @classmethod
    def from_json(cls, path: str | Path) -> "FdConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass
class FdSolution:
    xi_grid: np.ndarray
    times: np.ndarray
    w_field: np.ndarray
    s_traj: np.ndarray
    s_prime_traj: np.ndarray
    picard_iters: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))

    def z_grid(self, k: int) -> np.ndarray:
        return self.xi_grid * self.s_traj[k]


def _seed(cfg: FdConfig, xi: np.ndarray) -> tuple[np.ndarray, float, float]:
    t0, co = cfg.t0, cfg.coeffs
    if cfg.seed == "similarity":
        sol = build_solution(cfg.params)
        s0 = sol.s(t0)
        w = np.array([sol.w(float(x) * s0, t0, extend=True) for x in xi])
        return w, s0, sol.s_prime(t0)
    s0 = cfg.s0
    wm = co.w_m(t0)
    if cfg.bc_kind is BcKind.DIRICHLET:
        w0 = co.v(t0)
    else:
        h = co.h(t0)
        w0 = (wm / s0 + h * co.v(t0)) / (1.0 / s0 + h * co.eps)
    w = w0 + (wm - w0) * xi
    return w, s0, -(wm - w0) / (co.L(t0) * s0)


def fd_solve(cfg: FdConfig) -> FdSolution:
    """March the front-fixed problem from ``t0`` to ``t_end``.

    Raises:
        PicardDiverged: the front position did not settle within
            ``picard_max`` iterations in some step.
        NonPositiveBoundary: the front reached ``s <= 0``.
        SingularCoefficient: ``L(t) <= 0`` at some step.
    """
    co = cfg.coeffs
    n = cfg.n_xi
    d = 1.0 / (n - 1)
    xi = np.linspace(0.0, 1.0, n)
    n_steps = int(round((cfg.t_end - cfg.t0) / cfg.dt))
    dt = (cfg.t_end - cfg.t0) / n_steps
    times = cfg.t0 + dt * np.arange(n_steps + 1)
    times[-1] = cfg.t_end

    w, s, sp = _seed(cfg, xi)
    field_ = np.empty((n_steps + 1, n))
    s_traj = np.empty(n_steps + 1)
    sp_traj = np.empty(n_steps + 1)
    iters = np.zeros(n_steps + 1, dtype=int)
    field_[0], s_traj[0], sp_traj[0] = w, s, sp

    robin = cfg.bc_kind is not BcKind.DIRICHLET
    first = 0 if robin else 1
    idx = np.arange(first, n - 1)  # unknown nodes
    xi_u = xi[idx]

    for k in range(1, n_steps + 1):
        t = times[k]
        L = co.L(t)
        if not L > 0:
            raise SingularCoefficient(f"L(t)={L!r} <= 0 at t={t}")
        w_m = co.w_m(t)
        v = co.v(t)
        s_old = s_traj[k - 1]
        s_iter = s_old + dt * sp_traj[k - 1]
        for it in range(1, cfg.picard_max + 1):
            if not s_iter > 0:
                raise NonPositiveBoundary(f"s={s_iter!r} at t={t}")
            sd = (s_iter - s_old) / dt
            r = 1.0 / (s_iter * s_iter * d * d)
            adv = xi_u * sd / (2.0 * d * s_iter)
            lower = -dt * (r - adv)
            diag = np.full(idx.size, 1.0 + 2.0 * dt * r)
            upper = -dt * (r + adv)
            rhs = field_[k - 1, idx].copy()
            if robin:
                h = co.h(t)
                diag[0] += 2.0 * dt * r * d * s_iter * h * co.eps
                upper[0] = -2.0 * dt * r
                rhs[0] += 2.0 * dt * r * d * s_iter * h * v
            else:
                rhs[0] -= lower[0] * v
            rhs[-1] -= upper[-1] * w_m
            ab = np.zeros((3, idx.size))
            ab[0, 1:] = upper[:-1]
            ab[1] = diag
            ab[2, :-1] = lower[1:]
            sol = solve_banded((1, 1), ab, rhs)
            w_new = np.empty(n)
            w_new[idx] = sol
            w_new[-1] = w_m
            if not robin:
                w_new[0] = v
            grad = (3.0 * w_new[-1] - 4.0 * w_new[-2] + w_new[-3]) / (2.0 * d)
            sp_new = -grad / (L * s_iter)
            s_next = s_old + dt * sp_new
            if abs(s_next - s_iter) <= cfg.picard_tol * max(1.0, abs(s_iter)):
                s_iter = s_next
                break
            s_iter = s_next
        else:
            raise PicardDiverged(f"front position did not settle in {cfg.picard_max} iterations at t={t}")
        if not s_iter > 0:
            raise NonPositiveBoundary(f"s={s_iter!r} at t={t}")
        field_[k] = w_new
        s_traj[k] = s_iter
        sp_traj[k] = sp_new
        iters[k] = it
    return FdSolution(xi, times, field_, s_traj, sp_traj, iters)


def _strided(n: int, stride: int) -> list[int]:
    ks = list(range(0, n, stride))
    if ks[-1] != n - 1:
        ks.append(n - 1)
    return ks


def fd_compare(fd: FdSolution, sol: ClosedFormSolution, tol: float = 1e-3, stride: int = 1) -> ResidualReport:
    """Relative errors of the numerical front and temperature against a closed form.

    Every ``stride``-th stored time is compared, and always the last one.

    Temperatures are compared at the numerical node positions
    ``z = xi * s_fd(t)``; the closed form is evaluated there directly (it is
    analytic past ``s(t)`` when the numerical front runs slightly ahead).
    """
    s_err, w_err = [], []
    for k in _strided(fd.times.size, stride):
        t = float(fd.times[k])
        s_ex = sol.s(t)
        s_err.append(abs(fd.s_traj[k] - s_ex) / s_ex)
        zs = fd.z_grid(k)
        w_ex = np.array([sol.w(float(z), t, extend=True) for z in zs])
        w_err.append(float(np.max(np.abs(fd.w_field[k] - w_ex) / np.abs(w_ex))))
    s_err, w_err = np.array(s_err), np.array(w_err)
    residuals = [Residual("s relative error", float(s_err.max()), float(s_err.mean()), tol, "fd", s_err.size),
                 Residual("w relative error", float(w_err.max()), float(w_err.mean()), tol, "fd", w_err.size)]
    grid = {"n_xi": int(fd.xi_grid.size), "n_times": int(fd.times.size),
            "t": [float(fd.times[0]), float(fd.times[-1])], "stride": stride}
    notes = {"s_end_fd": float(fd.s_traj[-1]), "s_end_exact": sol.s(float(fd.times[-1]))}
    return ResidualReport("fd", grid, residuals, tol, all(r.passed for r in residuals), notes)


def write_trajectory_csv(fd: FdSolution, path) -> None:
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["t", "s", "s_prime"])
        for t, s, sp in zip(fd.times, fd.s_traj, fd.s_prime_traj):
            out.writerow([repr(float(t)), repr(float(s)), repr(float(sp))])


def write_field_csv(fd: FdSolution, path, stride: int = 1) -> None:
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["t", "xi", "z", "w"])
        for k in _strided(fd.times.size, stride):
            t = repr(float(fd.times[k]))
            for xi, z, w in zip(fd.xi_grid, fd.z_grid(k), fd.w_field[k]):
                out.writerow([t, repr(float(xi)), repr(float(z)), repr(float(w))])
