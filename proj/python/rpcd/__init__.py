"""Python bindings for the RCD / RPCD rate toolkit.

Matrices are NumPy arrays; structured reports come back as dicts.
"""

import json as _json

from . import _core
from ._core import (  # noqa: F401
    DomainError,
    NumericalError,
    VerificationError,
    apply_sign_flip,
    count_roots,
    family_max_rho,
    lambda_min,
    make_block_pi,
    make_pi,
    nonasymptotic_K0,
    norm_upper_bound,
    norm_upper_bound_pi,
    norm_upper_bound_sampled,
    random_unit_diag,
    rcd_lower_bound,
    rcd_lower_bound_pi,
    rcd_operator_apply,
    rcd_operator_matrix,
    rcd_step,
    restricted_rcd,
    restricted_rpcd,
    rpcd_epoch,
    rpcd_iteration_matrix,
    rpcd_operator_apply,
    rpcd_operator_matrix,
    rpcd_upper_bound,
    spectral_radius,
    worked_example_sequence,
)


def rate_report(n, sigma):
    return _json.loads(_core.rate_report_json(n, sigma))


def verify_appendix_c():
    return _json.loads(_core.verify_appendix_c_json())


def verify_operators(seed=0):
    return _json.loads(_core.verify_operators_json(seed))


def search(n, sigma, seed=1, restarts=10):
    return _json.loads(_core.search_json(n, sigma, seed, restarts))


def run_monte_carlo(a, algorithm, steps, trials=10, init_points=10, seed=0):
    """Trajectory statistics of ||x_k|| / ||x_0|| for the quadratic with Hessian `a`."""
    return _json.loads(_core.run_monte_carlo_json(a, algorithm, steps, trials, init_points, seed))
