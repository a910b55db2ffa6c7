"""An independent numerical check of the closed form.

The moving domain is pinned to [0, 1] with xi = z/s(t); each step is one
implicit tridiagonal solve plus a fixed-point loop on the front position.
Starting from the exact profile at t = 0.25 the scheme should stay within
1e-3 of 2 gamma sqrt(t) up to t = 1.
"""

# %%
from stefan_chain import FdConfig, SimilarityParams, build_solution, fd_compare, fd_solve
from stefan_chain.similarity import BcKind

params = SimilarityParams()
sol = build_solution(params)
fd = fd_solve(FdConfig.for_family(params, n_xi=200, dt=1e-4))
print(f"s(1): fd={fd.s_traj[-1]:.8f} exact={sol.s(1.0):.8f}")
for r in fd_compare(fd, sol, stride=100).residuals:
    print(f"{r.id}: {r.max_abs:.2e}")

# %% first order in time
for dt in (4e-3, 2e-3, 1e-3):
    run = fd_solve(FdConfig.for_family(params, n_xi=400, dt=dt))
    print(f"dt={dt:g}  relative front error {abs(run.s_traj[-1] - sol.s(1.0)) / sol.s(1.0):.3e}")

# %% a convective face approaching the Dirichlet solution numerically
for h0 in (10, 100, 1000, 10000):
    run = fd_solve(FdConfig.for_family(params.replace(bc_kind=BcKind.ROBIN, h0=h0), dt=1e-3))
    gap = fd_compare(run, sol, stride=50).residual("w relative error").max_abs
    print(f"h0={h0:>6}  w gap to Dirichlet {gap:.2e}")
