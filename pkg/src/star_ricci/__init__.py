"""*-Ricci tensor of three-dimensional real hypersurfaces in CP2 and CH2.

Computes the Gauss curvature, the *-Ricci operator and the structure Jacobi
operator in the adapted frame (e1, phi e1, xi) and evaluates vanishing,
semi-parallel, pseudo-parallel and xi-parallel conditions as residuals.
"""

from .conditions import (
    ConditionReport,
    NoPseudoParallelFunction,
    ObstructionTrace,
    certify_pseudo_parallel_obstruction,
    certify_semi_parallel_obstruction,
    certify_xi_parallel_obstruction,
    classify_hopf,
    pseudo_parallel_solve,
    semi_parallel_residual,
    vanishing_residual,
    xi_parallel_residual_hopf,
    xi_parallel_residual_nonhopf,
)
from .curvature import CurvatureTensor, riemann, star_ricci, structure_jacobi
from .frame import AmbientSpace, phi_operator, wedge
from .models import HopfModel, NonHopfFrameData, abstract_hopf, catalog_model, compute_nu
from .scan import scan, solve_vanishing_radius

__version__ = "0.1.0"
