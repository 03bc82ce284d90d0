"""Exact computations for pulled-back hyper-Kähler twistor families.

Critical configurations of rational self-maps of the sphere modulo Möbius
maps, the explicit polynomial families separating complex structures,
canonical-bundle and Chern bookkeeping, and pointwise checks of the
Kodaira-Spencer identities on H^k.
"""

from .configs import are_equivalent, canonical_fingerprint, find_equivalence, verify_witness
from .errors import InvariantViolation, ValidationError
from .family import (
    FamilyParams,
    PolydiskPoint,
    distinguish,
    family_config,
    family_derivative,
    family_map,
    phi,
)
from .gaussian import GR, GaussianRational
from .poly import HomogeneousForm, Polynomial
from .projective import INF, MobiusMap, ProjPoint, cross_ratio, mobius_from_triples, pt
from .ratmaps import RationalMap, WeightedConfig, critical_divisor, hurwitz_check, precompose, wronskian

__all__ = [
    "GR",
    "GaussianRational",
    "Polynomial",
    "HomogeneousForm",
    "INF",
    "ProjPoint",
    "MobiusMap",
    "pt",
    "cross_ratio",
    "mobius_from_triples",
    "RationalMap",
    "WeightedConfig",
    "wronskian",
    "critical_divisor",
    "hurwitz_check",
    "precompose",
    "find_equivalence",
    "are_equivalent",
    "verify_witness",
    "canonical_fingerprint",
    "FamilyParams",
    "PolydiskPoint",
    "family_derivative",
    "family_map",
    "family_config",
    "phi",
    "distinguish",
    "ValidationError",
    "InvariantViolation",
]

__version__ = "0.1.0"
