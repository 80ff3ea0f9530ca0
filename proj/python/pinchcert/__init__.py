"""Exact pinching certificates and Calabi-sphere geometry checks.

Rationals cross the boundary as fractions.Fraction; polynomials are lists of
coefficients, lowest degree first.  Reports come back as plain dicts.
"""

from ._pinchcert import (  # noqa: F401
    DegenerateInputError,
    DomainError,
    PreconditionError,
    SignClaimError,
    __version__,
    calabi_value,
    certify,
    certify_sign,
    classify,
    count_roots,
    gap_lower_bound,
    geometry_scan,
    isolate_root,
    left_threshold,
    optimize,
    poly_eval,
    replay,
    replay_report,
    right_threshold,
    smax_threshold,
    spherical_to_shrinker,
    theta1,
    theta2,
)
