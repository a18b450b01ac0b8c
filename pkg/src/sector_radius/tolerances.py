"""Numerical tolerances, kept in one place.

All thresholds used by the library live here so they can be audited and,
where meaningful, overridden.  ``SECTOR_RADIUS_TOL`` in the environment
changes the default certification tolerance; an explicit ``tol`` argument
(or ``--tol`` on the command line) wins over the environment.
"""

import os

from .errors import UsageError

# Hermitian / reconstruction checks (relative to matrix scale).
HERMITIAN_RTOL = 1e-12
RECONSTRUCTION_RTOL = 1e-12

# Eigenpair residual requirement for the Hermitian eigensolver.
EIG_RESIDUAL_RTOL = 1e-10

# Positive-semidefiniteness: lambda_min >= -PSD_RTOL * ||T||.  Extremal
# matrices touch the cone boundary exactly, so a strict zero test would flap.
PSD_RTOL = 1e-10

# Rank decisions (commutant computation): singular values below
# RANK_RTOL * sigma_max count as zero.
RANK_RTOL = 1e-9

# Numerical radius maximization.
RADIUS_GRID_POINTS = 1024
RADIUS_REFINE_BRACKETS = 8
RADIUS_THETA_TOL = 1e-12

# Norm-to-radius ratio bound check slack.
RATIO_BOUND_SLACK = 1e-8

# Canonical two-parameter family membership test.
FAMILY_ATOL = 1e-8

# Certification default tolerance.
DEFAULT_CERTIFY_TOL = 1e-7
TOL_ENV_VAR = "SECTOR_RADIUS_TOL"


def default_certify_tol() -> float:
    """Certification tolerance from the environment, or the built-in default."""
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return DEFAULT_CERTIFY_TOL
    try:
        value = float(raw)
    except ValueError as exc:
        raise UsageError(
            f"{TOL_ENV_VAR} must be a positive real, got {raw!r}") from exc
    if value <= 0:
        raise UsageError(f"{TOL_ENV_VAR} must be positive, got {value}")
    return value
