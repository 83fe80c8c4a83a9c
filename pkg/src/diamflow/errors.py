"""Exception types shared across the package."""


class DegenerateConfigurationError(ValueError):
    """Two points coincide, so log(Delta) would be -inf."""


class ProfileError(ValueError):
    """A push profile is malformed or not Lipschitz."""


class NonLipschitzProfileError(ProfileError):
    """A profile is too steep for the quadrature to be trusted."""


class SolverError(RuntimeError):
    """A bisection bracket is invalid or the feasibility predicate misbehaves."""


class TaylorDomainError(ValueError):
    """Some |rho_ij t| >= 1, outside the radius where the log expansion holds."""
