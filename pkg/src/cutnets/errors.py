"""Exception types shared across the package."""


class CutnetsError(Exception):
    """Base class for all cutnets errors."""


class DimensionMismatch(CutnetsError):
    """Operands disagree on the number of spatial coordinates."""


class DegenerateCut(CutnetsError):
    """The cut's spatial weights are all zero, so it has no direction."""


class StraddlingCluster(CutnetsError):
    """Cluster points sit on both sides of a cut, or exactly on it."""


class EmptyDataset(CutnetsError):
    """An operation that needs at least one point received none."""


class NoPositiveClass(CutnetsError):
    """The dataset contains no points labeled 1."""


class SeparationFailure(CutnetsError):
    """Some background point falls inside an enclosing polytope.

    ``failures`` lists ``(polytope_index, point)`` pairs for every offending
    background point.
    """

    def __init__(self, failures):
        self.failures = tuple((int(i), tuple(map(float, p))) for i, p in failures)
        self.suggestion = (
            "the clusters overlap the background at this margin; retry with a "
            "smaller margin, different cluster ids, or per-point enclosure "
            "(no cluster ids)"
        )
        detail = ", ".join(
            f"polytope {i} contains {p}" for i, p in self.failures[:3]
        )
        if len(self.failures) > 3:
            detail += f", and {len(self.failures) - 3} more"
        super().__init__(f"classes are not separable: {detail}. {self.suggestion}")


class MarginTooSmall(CutnetsError):
    """A training point ended up too close to a cut hyperplane."""


class InputBoundExceeded(CutnetsError):
    """A point's norm exceeds the bound the chain network was sized for."""


class DatasetFormatError(CutnetsError):
    """A dataset file is malformed; ``line`` is the 1-based offending line."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SchemaError(CutnetsError):
    """A network document violates the schema; ``path`` names the field."""

    def __init__(self, path, message="missing or invalid field"):
        self.path = path
        super().__init__(f"{message}: {path}")


class UnsupportedVersion(CutnetsError):
    """The document's format version is not supported."""
