"""Tactical decompositions and Λ-tensor conditions for subspace designs."""

__version__ = "0.1.0"

from .errors import QtdError
from .field import FieldSpec, build_field, prime_power
from .subspace import Subspace, enumerate_subspaces, gaussian_binomial, rref
from .action import GroupPresentation, SemilinearMap, census, group_order, orbits
from .design import QDesign, QDesignParams, verify_design
from .tactical import Decomposition, TDMatrices, induced_decomposition, td_matrices
from .lambdas import LambdaTensor, lambda_tensor_bruteforce, lambda_tensor_via_lines, lines_decomposition
from .conditions import check_all
from .search import SearchProblem, admissible_lambda, enumerate_candidates, realize_design
from .kernels import BACKEND

__all__ = [
    "__version__", "QtdError", "FieldSpec", "build_field", "prime_power", "Subspace",
    "enumerate_subspaces", "gaussian_binomial", "rref", "GroupPresentation", "SemilinearMap",
    "census", "group_order", "orbits", "QDesign", "QDesignParams", "verify_design",
    "Decomposition", "TDMatrices", "induced_decomposition", "td_matrices", "LambdaTensor",
    "lambda_tensor_bruteforce", "lambda_tensor_via_lines", "lines_decomposition", "check_all",
    "SearchProblem", "admissible_lambda", "enumerate_candidates", "realize_design", "BACKEND",
]
