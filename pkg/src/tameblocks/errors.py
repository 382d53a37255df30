"""Exception types shared across the toolkit."""


class TameBlocksError(Exception):
    """Base class for all toolkit errors."""


class UsageError(TameBlocksError):
    """Bad argument at the API or CLI boundary (unknown family, n below n_min, ...)."""


class CompletionError(TameBlocksError):
    """Rewriting-system completion hit a guard (rule cap, basis cap, degenerate lead)."""


class ConventionError(TameBlocksError):
    """Path-composition convention diagnostic: relations fail to parse or the
    completed algebra dimensions contradict the decomposition-matrix oracle."""


class ConstructionError(TameBlocksError):
    """A prescribed module (uniserial / layered / unique-submodule) does not exist
    or is not unique over the given algebra."""


class SplittingFieldError(TameBlocksError):
    """Endomorphism-ring analysis was inconclusive over the current coefficient
    field; retry with a larger extension degree e."""


class PrecisionError(TameBlocksError):
    """A 2-adic certificate could not be established at the chosen truncation N."""


class VerificationError(TameBlocksError):
    """A checked identity or certificate failed (carries the counterexample text)."""
