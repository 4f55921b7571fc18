"""Exact root-system arithmetic behind weighted projective moduli of bundles on elliptic curves."""

from __future__ import annotations

from .center import CenterElement, center_group, c_special_roots, orbit_data, pairing_degree
from .errors import (
    CongruenceError,
    ConstructionError,
    ElementDomainError,
    InternalInconsistency,
    PreconditionError,
    RangeError,
    WpsError,
)
from .farey import circular_complete, farey_sequence, is_circularly_symmetric
from .moduli import degree_consistency, wps_profile
from .parabolic import parabolic_profile, special_roots
from .rootsys import RootDatum, SimpleType, build_root_system
from .verify import SweepConfig, run_verification

__all__ = [
    "CenterElement",
    "CongruenceError",
    "ConstructionError",
    "ElementDomainError",
    "InternalInconsistency",
    "PreconditionError",
    "RangeError",
    "RootDatum",
    "SimpleType",
    "SweepConfig",
    "WpsError",
    "build_root_system",
    "c_special_roots",
    "center_group",
    "circular_complete",
    "degree_consistency",
    "farey_sequence",
    "is_circularly_symmetric",
    "orbit_data",
    "pairing_degree",
    "parabolic_profile",
    "run_verification",
    "special_roots",
    "wps_profile",
]
