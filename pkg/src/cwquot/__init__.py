"""Compact quotients of Cahen-Wallach spaces: decisions, certificates and flavors."""

from .classify import (
    ClassifyResult,
    Flags,
    QuotientCertificate,
    SpaceSpec,
    Verification,
    classify,
    classify_imaginary,
    classify_real,
    compose,
    cwfalsch_certificate,
    default_constellation,
    flags,
    gamma_generators,
    space_from_spec,
    verify_certificate,
)
from .cwgeom import Ambient, CWParams, GroupElement, group_inv, group_mul, normalize
from .goodness import AdmissibilityVerdict, decide_C_admissible, decide_R_admissible, is_good
from .intpoly import IntPolynomial, circle_factor_data, factor_over_rationals, unit_circle_root_count
from .lattices import LatticeBasis, stable_lattice, symplectic_stable_lattice, verify_stable_integral
from .numberfields import f2_membership, is_salem, pell_fundamental_unit, salem4_enumerate
from .paramfield import Number, Symbol
from .report import report
from .special import Block, SpecialConstellation, is_P_admissible
from .subspace import SubspaceMatrix
from .trigcert import LaurentPoly, laurent_from_subspace, trace_condition

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityVerdict",
    "Ambient",
    "Block",
    "CWParams",
    "ClassifyResult",
    "Flags",
    "GroupElement",
    "IntPolynomial",
    "LatticeBasis",
    "LaurentPoly",
    "Number",
    "QuotientCertificate",
    "SpaceSpec",
    "SpecialConstellation",
    "SubspaceMatrix",
    "Symbol",
    "Verification",
    "circle_factor_data",
    "classify",
    "classify_imaginary",
    "classify_real",
    "compose",
    "cwfalsch_certificate",
    "decide_C_admissible",
    "decide_R_admissible",
    "default_constellation",
    "f2_membership",
    "factor_over_rationals",
    "flags",
    "gamma_generators",
    "group_inv",
    "group_mul",
    "is_P_admissible",
    "is_good",
    "is_salem",
    "laurent_from_subspace",
    "normalize",
    "pell_fundamental_unit",
    "report",
    "salem4_enumerate",
    "space_from_spec",
    "stable_lattice",
    "symplectic_stable_lattice",
    "trace_condition",
    "unit_circle_root_count",
    "verify_certificate",
    "verify_stable_integral",
]
