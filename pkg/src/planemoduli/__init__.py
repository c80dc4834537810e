"""Exact computations with smooth plane curves, their automorphisms and descent to the reals."""

from .cyclofield import CycloNum, conjugate, zeta
from .descent import (
    Certificate,
    Signature,
    certify_pseudoreal,
    diagonal_automorphisms,
    find_descent_witness_klein_four,
    is_odd_signature,
    signature_cyclic_homology,
    weil_cocycle_real,
)
from .groupkit import FiniteSubgroup, closure
from .planecurve import BinaryForm, TernaryForm, act, smoothness_check
from .projgeom import ProjPoint, ProjTransform, compose, diag, monomial
from .strata import CurveFamilyInstance

__version__ = "0.1.0"

__all__ = [
    "BinaryForm",
    "Certificate",
    "CurveFamilyInstance",
    "CycloNum",
    "FiniteSubgroup",
    "ProjPoint",
    "ProjTransform",
    "Signature",
    "TernaryForm",
    "act",
    "certify_pseudoreal",
    "closure",
    "compose",
    "conjugate",
    "diag",
    "diagonal_automorphisms",
    "find_descent_witness_klein_four",
    "is_odd_signature",
    "monomial",
    "signature_cyclic_homology",
    "smoothness_check",
    "weil_cocycle_real",
    "zeta",
]
