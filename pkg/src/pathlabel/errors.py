"""Exception hierarchy shared by every module."""


class PathLabelError(Exception):
    """Base class for all errors raised by this package."""


class GraphParseError(PathLabelError, ValueError):
    """Malformed edge-list or graph6 input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ShapeError(PathLabelError, ValueError):
    """The graph does not have the shape an operation requires (tree, non-path, ...)."""


class ConditionError(PathLabelError, ValueError):
    """A formula's hypothesis fails; ``witness`` names the offending vertex or edge."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class ContractError(PathLabelError, ValueError):
    """An argument violates a data contract (e.g. a covering of the wrong graph)."""


class ConstructionError(PathLabelError, ValueError):
    """An operation on labeled trees was applied where its marks forbid it."""


class ResourceError(PathLabelError, RuntimeError):
    """An exact search would exceed its budget; no approximate answer is given."""
