"""Carry a closed-form temperature through the chain

    w  ->  x = -(2/sigma) w_z / w  ->  Psi = 1/x_z  ->  theta = (1 + m x) Psi,  y = ln(1 + m x)/m

and back again by quadrature.
"""

# %%
import numpy as np

from stefan_chain import SimilarityParams, build_solution
from stefan_chain import transforms as tr
from stefan_chain.errors import NonMonotone

sol = build_solution(SimilarityParams(L0=5.0, v0=1.0, w_m0=0.5))
t = 1.0
print("   z        x          psi        y         theta")
for z in np.linspace(0.0, sol.s(t), 7):
    c = tr.chain_sample(sol, float(z), t)
    print(f"{c.z:.4f}  {c.x:.6f}  {c.psi:+.6f}  {c.y:.6f}  {c.theta:+.6f}")

# %% the images of the face and the front
bc = tr.boundary_curves(sol, t)
print(f"X0={bc.X0:.6f} X1={bc.X1:.6f}  Y0={bc.Y0:.6f} Y1={bc.Y1:.6f}")

# %% inverse maps: w from x by quadrature, z from Psi by quadrature
z = 0.4 * sol.s(t)
print("w   closed form", sol.w(z, t), " reconstructed", tr.reconstruct_w(sol, z, t))
print("s   closed form", sol.s(t), " integral of Psi over [X0, X1]", tr.reconstruct_z(sol, bc.X1, t))

# %% with L0 = 1 the map z -> x is not one-to-one, so Psi(x, t) is not a function
canonical = build_solution(SimilarityParams())
try:
    tr.invert_x(canonical, 1.2, t)
except NonMonotone as exc:
    print("L0=1:", exc)
