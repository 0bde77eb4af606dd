"""Exception taxonomy shared across the toolkit.

Every error that the command line maps to exit code 2 (bad input) derives
from InputError; violations of a checked mathematical property raise
PropertyViolation subclasses and map to exit code 1.
"""

from __future__ import annotations


class RelintError(Exception):
    """Base class for all toolkit errors."""


class InputError(RelintError):
    """Malformed or out-of-contract input."""


class DimensionMismatch(InputError):
    pass


class DeskScaleError(InputError):
    """Instance exceeds the desk-scale limit (ambient dim > 24 or > 200 constraints)."""


class EmptySetError(InputError):
    pass


class NotMemberError(InputError):
    """A point required to lie in a set does not."""


class PreconditionFailed(InputError):
    """A documented precondition failed; carries the violated clause."""

    def __init__(self, clause: str, **details):
        super().__init__(clause)
        self.clause = clause
        self.details = details


class IndeterminateForm(InputError):
    """Extended-value arithmetic hit an undefined expression like inf - inf."""


class PropertyViolation(RelintError):
    """A verified mathematical property failed to hold."""


class QualificationError(PropertyViolation):
    """Duality certificate extraction hit a vertical separating functional."""


class InternalInconsistency(RelintError):
    """Two independent routes to the same fact disagreed; always a bug."""
