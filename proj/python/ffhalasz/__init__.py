"""Mean values of multiplicative functions on F_q[t] and Halasz-type bounds."""

import json

from ._ffhalasz import (
    CensusLimitExceeded,
    KappaViolation,
    ToleranceUnreachable,
    __version__,
    chi_from_sigma,
    chi_from_spec,
    circle_max,
    complex_binomial,
    compute_M,
    factor,
    halasz_bound,
    irreducible_count,
    irreducibles,
    oracle_sigma,
    run_cli,
    sharp_example,
    sigma_from_chi,
    sigma_m_bound,
    sigma_m_bound_delta,
    sigma_m_contour,
    smooth_bound,
)
from . import _ffhalasz


def halasz_report(chi, n, kappa, *, delta=None, q=None, m=None, tol=1e-9):
    """Every applicable bound at degree n, as a dict."""
    return json.loads(_ffhalasz.halasz_report_json(chi, n, kappa, delta, q, m, tol))


def sharp_example_report(n, delta, theta=0.0, *, tol=1e-9):
    return json.loads(_ffhalasz.sharp_example_report_json(n, delta, theta, tol))


__all__ = [name for name in dir() if not name.startswith("_")]
