"""Exception hierarchy shared across the package."""


class ScatteringError(Exception):
    """Base class for all errors raised by this package."""


class PoleAtNonpositiveInteger(ScatteringError, ValueError):
    def __init__(self, z):
        super().__init__(f"gamma function pole at z={z!r}")
        self.z = z


class DomainError(ScatteringError, ValueError):
    """Point outside the domain of a half-line potential."""


class ParameterRangeError(ScatteringError, ValueError):
    """Parameters violate the validity range of a potential family."""

    def __init__(self, family, constraint, params):
        super().__init__(f"{family}: parameters {params} violate {constraint}")
        self.family = family
        self.constraint = constraint
        self.params = params


class BranchError(ScatteringError, ValueError):
    """Wavenumber on a branch point or at the continuum threshold."""


class ClassificationBoundary(ScatteringError, ValueError):
    def __init__(self, v, boundary, detail=""):
        msg = f"degree v={v} sits on the classification boundary {boundary}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.v = v
        self.boundary = boundary


class EmptyRange(ScatteringError, ValueError):
    """No seed of the requested origin exists for this family/degree."""


class ZeroWronskian(ScatteringError, ArithmeticError):
    def __init__(self, x):
        super().__init__(f"Wronskian vanishes (relative scale < 1e-13) near x={x!r}")
        self.x = x


class NotApplicable(ScatteringError, ValueError):
    """An analytic criterion does not apply; fall back to a numeric scan."""


class PoleHit(ScatteringError, ArithmeticError):
    def __init__(self, k):
        super().__init__(f"wavenumber k={k!r} lands on a pole of a deformation factor")
        self.k = k


class UncancelledPole(ScatteringError, AssertionError):
    def __init__(self, k, growth):
        super().__init__(f"nominal pole at k={k!r} is not cancelled (max |amp| = {growth:.3e})")
        self.k = k
        self.growth = growth


class StiffRegion(ScatteringError, RuntimeError):
    """Fixed-step integration cannot resolve the potential."""


class NonFlatAsymptote(ScatteringError, ValueError):
    """Potential is not flat at the requested matching radius."""
