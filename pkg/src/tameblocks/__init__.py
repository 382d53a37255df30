"""Verification toolkit for the basic algebras of non-local tame 2-blocks and
their predicted universal deformation-ring presentations over truncated Witt
vectors."""

__version__ = "0.1.0"

from .gf import GF
from .witt import WittRing, CyclotomicWitt, WPoly, minpoly_nu, q_poly
from .catalog import family, list_families, decomposition_matrix, cartan
from .errors import (TameBlocksError, UsageError, CompletionError,
                     ConventionError, ConstructionError, SplittingFieldError,
                     PrecisionError, VerificationError)

__all__ = [
    "GF", "WittRing", "CyclotomicWitt", "WPoly", "minpoly_nu", "q_poly",
    "family", "list_families", "decomposition_matrix", "cartan",
    "TameBlocksError", "UsageError", "CompletionError", "ConventionError",
    "ConstructionError", "SplittingFieldError", "PrecisionError",
    "VerificationError",
]
