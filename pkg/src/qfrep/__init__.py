"""qfrep: exact representation arithmetic for positive ternary quadratic
forms and linearly restricted weighted sums of four squares."""

from .constructive import (
    Decomposition,
    LemmaWitness,
    NormalizationFailed,
    Unavailable,
    construct_lemma,
    decompose,
    validate,
    validate_lemma,
)
from .forms import DiagonalQuaternary, TernaryForm, automorphisms, represent_all, represent_count
from .genus import GenusRecord, enumerate_classes, genus_of, is_equivalent, reduce_form, weighted_average
from .local import (
    LocalVerdict,
    SpinorCountBound,
    dickson_exception_member,
    is_eligible,
    is_locally_represented,
    lemma41_target,
    local_density,
    spinor_genus_count_bound,
)
from .restrict import RestrictionSpec, Target
from .scan import ScanProblem, ScanReport, cross_check, find_restricted, scan_range

__version__ = "0.1.0"

__all__ = [
    "Decomposition", "DiagonalQuaternary", "GenusRecord", "LemmaWitness",
    "LocalVerdict", "NormalizationFailed", "RestrictionSpec", "ScanProblem",
    "ScanReport", "SpinorCountBound", "Target", "TernaryForm", "Unavailable",
    "automorphisms", "construct_lemma", "cross_check", "decompose",
    "dickson_exception_member", "enumerate_classes", "find_restricted",
    "genus_of", "is_eligible", "is_equivalent", "is_locally_represented",
    "lemma41_target", "local_density", "reduce_form", "represent_all",
    "represent_count", "scan_range", "spinor_genus_count_bound", "validate",
    "validate_lemma", "weighted_average",
]
