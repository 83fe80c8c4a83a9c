"""Diameter-2 planar configurations with a large product of pairwise distances.

The headline object is the push construction: every diameter of the regular
even n-gon is slid along itself by an amount interpolated linearly in its
angle. Equivalently, the roots of unity flow for time c/n along the radial
field v(z) = (1 - 2|arg z|/pi) z/|z|. Its log(Delta / n^n) tends to
-I pi^2/128 ~ 0.0371, where I is a double integral evaluated in
:mod:`diamflow.quadrature`.
"""
from .constructions import (ConstructionSpec, push_construction, regular_ngon,
                            single_diameter_move)
from .errors import (DegenerateConfigurationError, NonLipschitzProfileError, ProfileError,
                     SolverError, TaylorDomainError)
from .experiments import (ExtrapolationResult, SweepRecord, extrapolate, pommerenke_check,
                          run_sweep, taylor_audit)
from .flow import (RhoMatrix, flow_euler, flow_map, power_sums, remainder_power_sum,
                   rho_matrix, vector_field_at)
from .geometry import (Configuration, diameter, log_discriminant, log_ratio,
                       read_configuration, rescale_to_diameter, write_configuration)
from .kernels import BACKEND
from .profiles import COSINE, LINEAR, Profile
from .quadrature import QuadratureResult, integral_I, integrand, limit_constant
from .solvers import BindingReport, c_max, eps_max, t_max, t_max_estimate

__version__ = "0.1.0"
