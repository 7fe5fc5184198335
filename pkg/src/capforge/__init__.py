"""Bicovering arcs from nodal cubics, lifted complete caps, and the brute-force
verification engines behind them."""

from . import auxcurve, cubic, errors, field, indep, lift, ntheory, plane, verify
from .cubic import ArcSet, CosetSpec, NodalCubic, check_hypotheses, coset_points, union_arc
from .field import build_extension, build_field
from .lift import LiftedCap, ParityCheckMatrix, check_distance_ge4, export_parity_check, lift_arc
from .plane import SegmentPosition, collinear3, is_arc, is_cap, line_third_points, segment_position
from .verify import (
    VerifyReport,
    verify_bicovering_full,
    verify_bicovering_sampled,
    verify_complete_cap,
)

__version__ = "0.1.0"
