"""Similarity solutions of the one-phase Stefan problem and their images under
the Cole-Hopf, reciprocal and exponential maps, with residual checks for
every link and an independent front-fixing finite-difference solver."""

from .errors import *  # noqa: F401,F403
from .mkdv import KinkParams, hodograph_to_psi, kink_field, verify_casimir, verify_mkdv
from .numerics import Interval, ToleranceSpec, bisect, central_diff, erf, erfc, integrate
from .similarity import (BcKind, ClosedFormSolution, SimilarityParams, build_solution, eval_state, eval_T,
                         gamma_gap, solve_gamma)
from .stefan_fd import Coefficients, FdConfig, FdSolution, fd_compare, fd_solve
from .transforms import (boundary_curves, chain_sample, cole_hopf, invert_x, invert_y, psi_from_w,
                         reconstruct_w, reconstruct_z, theta_from_w)
from .verification import (FdGrid, Grid, Residual, ResidualReport, verify_convergence, verify_p1, verify_p2,
                           verify_p3, verify_p4, verify_signs, verify_suites)

__version__ = "0.1.0"
