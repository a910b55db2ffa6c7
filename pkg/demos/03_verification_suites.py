"""Residuals of every equation, boundary condition and integral condition along the chain."""

# %%
from stefan_chain import SimilarityParams, build_solution, verify_convergence, verify_suites
from stefan_chain.similarity import BcKind

sol = build_solution(SimilarityParams(L0=5.0, v0=1.0, w_m0=0.5))
for report in verify_suites(sol):
    print(f"[{report.suite}] passed={report.passed}")
    for r in report.residuals:
        print(f"    {r.id:24s} max={r.max_abs:.2e}  tol={r.tol}")

# %% h0 -> infinity
rep = verify_convergence(SimilarityParams(bc_kind=BcKind.ROBIN))
print("gamma gaps:", ["%.2e" % g for g in rep.notes["gaps"]], "decreasing:", rep.notes["strictly_decreasing"])
