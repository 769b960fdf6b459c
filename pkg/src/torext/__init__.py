"""torext: annihilators of Tor and Ext over graded quotient rings, with a
degreewise linear-algebra oracle and a scenario-driven verifier."""

from __future__ import annotations

__version__ = "0.1.0"

from .groebner import GroebnerBasis, Limits, ResourceLimitError, buchberger, limits
from .homological import (
    cosyzygy, canonical_dual, ext, is_totally_reflexive, omega, stable_end_ann, syzygy, tor, trace_ideal,
    transpose,
)
from .lab import CertifiedIdeal, CheckResult, Family, IdealReport, close_family, family_ext_ideal, family_tor_ideal
from .modules import FPModule, cyclic_module, free_module, free_resolution, ideal_module, make_module
from .poly import PolyRing, Polynomial, StructuralError
from .ring import Ideal, QuotientRing, canonical_module, define_ring, is_gorenstein, radical_equal, singular_locus

__all__ = [
    "__version__", "GroebnerBasis", "Limits", "ResourceLimitError", "buchberger", "limits",
    "cosyzygy", "canonical_dual", "ext", "is_totally_reflexive", "omega", "stable_end_ann", "syzygy", "tor",
    "trace_ideal", "transpose", "CertifiedIdeal", "CheckResult", "Family", "IdealReport", "close_family",
    "family_ext_ideal", "family_tor_ideal", "FPModule", "cyclic_module", "free_module", "free_resolution",
    "ideal_module", "make_module", "PolyRing", "Polynomial", "StructuralError", "Ideal", "QuotientRing",
    "canonical_module", "define_ring", "is_gorenstein", "radical_equal", "singular_locus",
]
