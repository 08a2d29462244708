"""Exact computation of minimal faithful upper-triangular matrix representations
of solvable Lie algebras."""

from .algebra import (
    DimensionMismatch, LieAlgebra, NotSolvable, Subspace, bracket, derived_series,
    derived_series_dims, jacobi_check, subspace_bracket,
)
from .gaussian import GQ, GaussianRational
from .polynomials import (
    GroebnerCaps, Ideal, Polynomial, ResourceLimit, groebner, is_trivial, reduce,
    saturate_nonzero, solve_linear_subsystem,
)
from .representation import Representation, SizeMismatch, verify_representation
from .solver import (
    Ansatz, ConstraintSystem, Inconclusive, Infeasible, NotFound, ParametricLaw, Solution,
    SolutionsMayExist, build_ansatz, generate_constraints, infeasibility_certificate,
    lower_bound_k, search_solution, solve_min_rep,
)
from .triangular import (
    TriIndex, derived_ideal_basis_h, derived_series_dims_h, law_h, realize_matrix,
    tri_bracket,
)

__version__ = "0.1.0"
