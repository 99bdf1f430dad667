"""
Engine exceptions.

Two families are distinguished because the command line maps them to
different exit codes:
    - InputError: malformed or out-of-range input (exit code 2)
    - PreconditionError: a mathematical precondition does not hold (exit code 3)
"""


class GvmError(Exception):
    """Base class for every error raised by the engine."""


class InputError(GvmError):
    """Malformed input: unknown type label, bad rational, bad weight syntax."""


class MissingVariableError(InputError):
    """A λ-assignment does not cover a variable that occurs in a form."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"no value assigned to lambda_{index}")


class PreconditionError(GvmError):
    """A mathematical precondition fails (Θ = Ψ, non-dominant weight, ...)."""


class NotARootError(PreconditionError):
    pass


class NotAWeightError(PreconditionError):
    pass


class HypothesisError(PreconditionError):
    """The dominance hypothesis of the parabolic tensor-product formula fails."""


class ChainStructureError(PreconditionError):
    """An extremal chain violates the structure it is required to have."""
