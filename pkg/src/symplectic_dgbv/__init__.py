"""Exact symplectic dGBV algebras on finite models and their Frobenius structures."""

from .cohomology import (CohomologyBasis, PreconditionError, cohomology_d, cohomology_delta,
                         dd_delta_check, formality_witness, hard_lefschetz_check, mathieu_check)
from .exterior import (Form, SeriesForm, bracket, contraction, d, delta, integral, lstar,
                       pairing, star, wedge)
from .frobenius import (MCSolution, SolverError, d_gamma, frobenius_data, init_gamma1, mc_solve,
                        metric, potential, wdvv_check)
from .model import (Model, ModelError, build_from_file, build_kodaira_thurston,
                    build_sol_times_circle, build_torus, validate)

__all__ = [
    "CohomologyBasis", "Form", "MCSolution", "Model", "ModelError", "PreconditionError",
    "SeriesForm", "SolverError", "bracket", "build_from_file", "build_kodaira_thurston",
    "build_sol_times_circle", "build_torus", "cohomology_d", "cohomology_delta", "contraction",
    "d", "d_gamma", "dd_delta_check", "delta", "formality_witness", "frobenius_data",
    "hard_lefschetz_check", "init_gamma1", "integral", "lstar", "mathieu_check", "mc_solve",
    "metric", "pairing", "potential", "star", "validate", "wdvv_check", "wedge",
]
