"""Exception hierarchy shared across the package."""


class GraphCubeError(Exception):
    """Base class for all errors raised by this package."""


class LoadError(GraphCubeError):
    """Malformed or inconsistent input files."""


class ParameterError(GraphCubeError, ValueError):
    """Invalid parameter values (generator settings, levels, flags)."""


class UnknownVertexError(GraphCubeError, KeyError):
    """Lookup of a vertex id that is not in the graph."""


class QueryError(GraphCubeError):
    """Query referencing an unknown dimension."""


class NotMaterializedError(GraphCubeError):
    """Requested cuboid was not materialized in the cube."""


class CubeFormatError(GraphCubeError):
    """Malformed cuboid or meta file on disk."""


class VerificationError(GraphCubeError):
    """Internal cross-check failed (e.g. benchmark cube mismatch)."""
