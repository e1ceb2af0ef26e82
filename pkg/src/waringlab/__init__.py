"""Low-rank Waring decompositions of homogeneous polynomials."""

from .binary import BinaryForm, canonical_scheme, generalized_decomposition, rank_scheme, sylvester_analyze
from .catalecticant import border_rank_estimate, catalecticant_ranks, cat_matrix
from .decomposer import (
    GenericCase,
    Instance,
    WDecomposition,
    decompose,
    generate_generic_instance,
    generate_instance,
    uniqueness_probe,
    verify,
)
from .errors import WaringError
from .forms import Form, Line, power_of_linear
from .schemes import PointMult, Scheme0Dim

__all__ = [
    "BinaryForm",
    "Form",
    "GenericCase",
    "Instance",
    "Line",
    "PointMult",
    "Scheme0Dim",
    "WDecomposition",
    "WaringError",
    "border_rank_estimate",
    "canonical_scheme",
    "cat_matrix",
    "catalecticant_ranks",
    "decompose",
    "generalized_decomposition",
    "generate_generic_instance",
    "generate_instance",
    "power_of_linear",
    "rank_scheme",
    "sylvester_analyze",
    "uniqueness_probe",
    "verify",
]
