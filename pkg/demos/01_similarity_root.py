"""Similarity solutions of the one-phase Stefan problem.

With L(t) = L0 sqrt(t), v(t) = 2 v0 sqrt(t) and w_m(t) = 2 w_m0 sqrt(t) the
front moves like s(t) = 2 gamma sqrt(t), and gamma is the root of a single
transcendental equation.  Run with ``python demos/01_similarity_root.py``.
"""

# %% the Dirichlet root
from stefan_chain import SimilarityParams, build_solution, gamma_gap
from stefan_chain.similarity import BcKind

params = SimilarityParams(L0=1.0, v0=1.0, w_m0=0.5)
sol = build_solution(params)
print(f"gamma = {sol.gamma:.15f}   residual = {gamma_gap(params, sol.gamma):.1e}")
print(f"T(eta) = {sol.coeff_a:.6f} [exp(-eta^2) + sqrt(pi) eta erf(eta)] + ({sol.coeff_b:.6f}) eta")

# %% the profile across the melt at t = 1
for k in range(6):
    z = k / 5 * sol.s(1.0)
    st = sol.state(z, 1.0)
    print(f"z={z:.4f}  w={st.w:.6f}  w_z={st.w_z:+.6f}  w_zz - w_t = {st.w_zz - st.w_t:+.1e}")

# %% Robin and Neumann faces
for kind in (BcKind.ROBIN, BcKind.NEUMANN):
    other = build_solution(params.replace(bc_kind=kind, h0=1.0))
    print(f"{kind.value:8s} gamma = {other.gamma:.12f}")

# %% a stiffer heat-transfer coefficient pulls the Robin root onto the Dirichlet one
for h0 in (10, 100, 1e3, 1e4, 1e6):
    g = build_solution(params.replace(bc_kind=BcKind.ROBIN, h0=h0)).gamma
    print(f"h0={h0:>9g}  |gamma_robin - gamma| = {abs(g - sol.gamma):.3e}")
