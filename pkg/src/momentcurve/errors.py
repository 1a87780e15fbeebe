"""Exception taxonomy.

Every error message is a single line of the form ``kind: detail`` so that
callers (and the CLI) can report failures without string surgery.
"""


class MomentCurveError(Exception):
    """Base class for all package-specific failures."""


class ParameterError(MomentCurveError, ValueError):
    """A caller-supplied parameter is out of the supported domain."""

    def __init__(self, detail: str):
        super().__init__(f"parameter: {detail}")


class ResourceError(MomentCurveError, RuntimeError):
    """A computation would exceed a configured size or memory budget.

    Raised *before* the budget is blown, never after; partial state is
    discarded so the process stays usable.
    """

    def __init__(self, detail: str):
        super().__init__(f"resource: {detail}")


class NumericError(MomentCurveError, ArithmeticError):
    """A floating-point stage could not reach its accuracy target."""

    def __init__(self, detail: str, achieved: float | None = None):
        super().__init__(f"numeric: {detail}")
        # best estimate computed before giving up, for diagnostics
        self.achieved = achieved


class WeightParseError(ParameterError):
    """A weight token or weight-map entry could not be parsed."""


class WeightFormatError(ParameterError):
    """A weight file violates the on-disk layout rules."""
