"""Set-valued proximity operators of scale and signed-permutation invariant
sparsity penalties: the l0 count, the l1/l2 ratio, and its square."""

from .core import (
    DEFAULT_TOLERANCES,
    UNIFORM_SPHERE,
    ProxSet,
    SignedPermutation,
    Tolerances,
    as_vector,
    denormalize,
    descending_vector,
    effective_tie_tol,
    h1_value,
    h2_value,
    l0_value,
    normalize,
    objective_F,
    objective_G_h1,
    objective_G_h2,
    uniform_value,
)
from .wrd import WStepSolution, wrd_assemble
from .l0 import prox_l0, wstep_l0
from .h2 import (
    H2Spectrum,
    h2_spectrum,
    mu,
    prox_h2,
    prox_h2_uniform,
    wstep_h2,
    wstep_h2_r2,
)
from .h1 import (
    PgdState,
    R2Geometry,
    R2Region,
    L_eval,
    classify_r2,
    curves_intersection_kappa,
    pgd_wstep,
    project_ball_cone,
    prox_h1,
    prox_h1_axis,
    prox_h1_r2,
    prox_h1_uniform,
    r2_geometry,
    sphere_qp_lambda,
    trim_zeros,
    wstep_h1_r2,
)
from .oracle import brute_prox, brute_wstep

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLERANCES",
    "UNIFORM_SPHERE",
    "ProxSet",
    "SignedPermutation",
    "Tolerances",
    "WStepSolution",
    "H2Spectrum",
    "PgdState",
    "R2Geometry",
    "R2Region",
    "as_vector",
    "descending_vector",
    "normalize",
    "denormalize",
    "effective_tie_tol",
    "objective_F",
    "objective_G_h1",
    "objective_G_h2",
    "l0_value",
    "h1_value",
    "h2_value",
    "uniform_value",
    "wrd_assemble",
    "prox_l0",
    "wstep_l0",
    "h2_spectrum",
    "mu",
    "prox_h2",
    "prox_h2_uniform",
    "wstep_h2",
    "wstep_h2_r2",
    "L_eval",
    "r2_geometry",
    "classify_r2",
    "curves_intersection_kappa",
    "pgd_wstep",
    "project_ball_cone",
    "prox_h1",
    "prox_h1_axis",
    "prox_h1_r2",
    "prox_h1_uniform",
    "sphere_qp_lambda",
    "trim_zeros",
    "wstep_h1_r2",
    "brute_prox",
    "brute_wstep",
]
