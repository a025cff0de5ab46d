"""Exact spherical volumes and singular lengths of torus knot/link cone-manifolds."""
from .exact import GradeError, PiScalar, pi_add, pi_mul, pi_square, rational_new, render, to_float
from .invariants import (
    AngleInterval,
    InvariantReport,
    NotAssertedError,
    admits_spherical,
    asserted_window,
    covering_residual,
    excess,
    existence_interval,
    invariant_report,
    strand_length,
    two_bridge_volume,
    volume,
    volume_derivative,
)
from .torus_link import TorusLinkParams, is_knot, params_new

__version__ = "0.1.0"
