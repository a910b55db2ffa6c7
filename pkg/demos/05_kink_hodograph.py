"""The kink x = 2 ln cosh((A/2)(y - (A^2/2) t)) and its hodograph image.

Swapping x and y turns the kink into a field Psi(x, t) = 1/x_y that solves
the Casimir equation Psi_t = ((Psi^-2)_xxx - (Psi^-2)_x)/2.  The field does
not change in time at fixed x, so only the time part of the reciprocal map
reveals that the time direction must be reversed.
"""

# %%
from stefan_chain.mkdv import KinkParams, casimir_refinement, hodograph_to_psi, verify_casimir

p = KinkParams(amp=2.0)
field = hodograph_to_psi(p)
print(f"x range [{field.x[0]:.4f}, {field.x[-1]:.4f}], Psi in [{field.psi.min():.4f}, {field.psi.max():.4f}]")

# %%
for reflect in (True, False):
    rep = verify_casimir(field, reflect=reflect)
    print(f"reflect={reflect!s:5s}", {r.id: f"{r.max_abs:.2e}" for r in rep.residuals})

# %% second order under refinement
for rid, (errs, orders) in casimir_refinement(p, levels=3).items():
    print(rid, ["%.2e" % e for e in errs], "orders", ["%.2f" % o for o in orders])
