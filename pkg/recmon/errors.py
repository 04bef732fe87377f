"""
Exception hierarchy for recmon.

Every error carries a human-readable ``detail``, a machine-readable ``code``
and the CLI ``exit_code`` it maps to.
"""
from typing import Optional


class RecmonError(Exception):
    """Base class for all recmon errors."""

    code = "error"
    exit_code = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InputError(RecmonError):
    """The user supplied something malformed or out of scope."""

    code = "input_error"


class ParseError(InputError):
    """Syntax error in a formula, monitor, process or trace."""

    code = "parse_error"

    def __init__(self, kind: str, text: str, detail: str,
                 line: Optional[int] = None, column: Optional[int] = None):
        where = f" at line {line}, column {column}" if column is not None else ""
        super().__init__(f"cannot parse {kind} {text!r}{where}: {detail}")
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


class AlphabetError(InputError):
    """Unknown action, misuse of tau, or a malformed alphabet."""

    code = "alphabet_error"


class FragmentError(InputError):
    """Formula lies outside the fragment an operation needs."""

    code = "fragment_error"


class UnguardedError(InputError):
    """A fixpoint variable occurs outside the scope of a modality."""

    code = "unguarded"


class OpenTermError(InputError):
    """A closed term was required but free variables remain."""

    code = "open_term"


class PreconditionError(InputError):
    """A monitor does not have the shape an operation requires."""

    code = "precondition"


class ReactivityError(PreconditionError):
    code = "not_reactive"


class InconsistentMonitorError(PreconditionError):
    code = "inconsistent"


class CapExceededError(RecmonError):
    """An exploration visited more states than the configured cap."""

    code = "cap_exceeded"
    exit_code = 3


class PipelineStageError(RecmonError):
    """A stage of the extraction pipeline failed."""

    code = "pipeline_stage"

    def __init__(self, stage: str, cause: RecmonError):
        super().__init__(f"stage '{stage}' failed: {cause.detail}")
        self.stage = stage
        self.cause = cause
        self.exit_code = cause.exit_code
