"""Persistent cohomology, cup-length invariants and persistent cup modules."""

from ._kernels import BACKEND
from .cohomology import Bar, BarcodeWithReps, Cochain, NotACocycleError, persistent_cohomology, restrict_class
from .complex import ComplexError, FilteredComplex, build_vr, from_explicit
from .cup import (
    CupLengthDiagram,
    SupportInterval,
    cup,
    cup_length_diagram,
    cup_length_invariant,
    cup_length_of_image,
    invariant_from_diagram,
    invariant_max,
    invariant_sum,
    support,
)
from .distances import ErosionResult, bottleneck, erosion
from .flags import (
    InternalConsistencyError,
    LCupBarcode,
    cup_from_lcup,
    flag_decompose,
    flag_dim,
    lcup_barcode,
    phi_rank,
)
from .invariants import SignedDiagram, StepInvariant, mobius_invert, mobius_sum

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Bar",
    "BarcodeWithReps",
    "Cochain",
    "ComplexError",
    "CupLengthDiagram",
    "ErosionResult",
    "FilteredComplex",
    "InternalConsistencyError",
    "LCupBarcode",
    "NotACocycleError",
    "SignedDiagram",
    "StepInvariant",
    "SupportInterval",
    "bottleneck",
    "build_vr",
    "cup",
    "cup_from_lcup",
    "cup_length_diagram",
    "cup_length_invariant",
    "cup_length_of_image",
    "erosion",
    "flag_decompose",
    "flag_dim",
    "from_explicit",
    "invariant_from_diagram",
    "invariant_max",
    "invariant_sum",
    "lcup_barcode",
    "mobius_invert",
    "mobius_sum",
    "persistent_cohomology",
    "phi_rank",
    "restrict_class",
    "support",
]
