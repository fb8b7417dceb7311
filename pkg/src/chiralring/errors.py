"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A configuration file or parameter set violates the schema or a
    physical invariant.  The message names the offending key path."""


class SolverError(RuntimeError):
    """A numerical solve failed (singularity, non-convergence, ...)."""


class DegenerateNullSpaceError(SolverError):
    """The null space of the operator is not one-dimensional, so the
    steady state is ambiguous."""


class ConvergenceError(SolverError):
    """An iterative solve did not reach the requested tolerance."""


class ResourceLimitError(SolverError):
    """A dense operator would exceed the configured size cap."""
