"""Exception hierarchy shared by the library and the CLI."""


class RigctlError(Exception):
    """Base class for all errors raised by rigctl."""


class GraphInputError(RigctlError, ValueError):
    """Malformed graph data, invalid vertex index, or an edge not in the graph."""


class CapabilityError(RigctlError):
    """Requested computation exceeds a documented size cap."""


class InconsistencyError(RigctlError):
    """Two independent computations disagree; indicates an implementation bug."""


class PropertyViolation(RigctlError):
    """A property that is a theorem failed on a concrete instance."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}
