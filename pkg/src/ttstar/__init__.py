"""Two-function tt*-Toda equations: radial solver, Stokes data, monodromy checks.

The package is organised around four pieces:

* :mod:`ttstar.cases` -- the ten symmetry cases of the two-function
  reduction, with their structure matrices and the admissible region of
  asymptotic data.
* :mod:`ttstar.solver` / :mod:`ttstar.oracle` -- the radial boundary-value
  solver (monotone iteration between sub- and supersolutions, on a uniform
  grid in log radius) and an independent damped-Newton cross-check.
* :mod:`ttstar.stokes` / :mod:`ttstar.enumeration` -- closed-form Stokes
  data as a function of the asymptotic data, and the inverse problem of
  listing all asymptotic data with integral Stokes data.
* :mod:`ttstar.monodromy` -- direct numerical computation of the Stokes
  matrices of the associated linear ODE from a solved profile.
"""

from ttstar.cases import CASE_LABELS, CaseSpec, make_case, region_contains, structure_matrices
from ttstar.solver import (
    PairProfile,
    RadialGrid,
    ScalarProfile,
    SolverConfig,
    fit_log_slope,
    integral_identity,
    solve,
)
from ttstar.oracle import newton_oracle
from ttstar.stokes import StokesData, char_poly, monodromy_eigenvalues, q_matrices, stokes_from_asymptotics
from ttstar.enumeration import IntegralSolution, attach_labels, enumerate_integral, invert_stokes
from ttstar.monodromy import StokesEstimate, compare_with_formula, estimate_stokes

__version__ = "0.1.0"

__all__ = [
    "CASE_LABELS",
    "CaseSpec",
    "IntegralSolution",
    "PairProfile",
    "RadialGrid",
    "ScalarProfile",
    "SolverConfig",
    "StokesData",
    "StokesEstimate",
    "attach_labels",
    "char_poly",
    "compare_with_formula",
    "enumerate_integral",
    "estimate_stokes",
    "fit_log_slope",
    "integral_identity",
    "invert_stokes",
    "make_case",
    "monodromy_eigenvalues",
    "newton_oracle",
    "q_matrices",
    "region_contains",
    "solve",
    "stokes_from_asymptotics",
    "structure_matrices",
]
