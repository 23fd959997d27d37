"""Calogero-Moser-Sutherland type operators in ordinary space and superspace.

Closed-form and recursion-generated eigenfunctions, Grassmann integration,
numerical checks of the measure identities and the physical (dipole)
interpretation of the two-parameter models.
"""
from .errors import (AccuracyError, DegenerateParametersError, DimensionError, DomainError,
                     NoSolutionError, SingularConfigurationError, SupercmsError,
                     UnphysicalConfigurationError, UnsupportedOrderError)
from .jets import Jet, jet_eval
from .special import bessel_j, bessel_y, chi_euler, hankel, spherical_chi, special_value
from .grassmann import GrassmannElement, berezin_integrate, nilpotent_substitute
from .weights import WeightSpec, vandermonde, weight_eval, weight_log_gradient
from .operators import (ModelSpec, ResidualReport, apply_operator, com_momentum, eigen_residual,
                        eigenvalue, exchange_phase, potential)
from .recursion import (QuadratureConfig, alt_solution, normalization_G, phi2_spectral,
                        recurse_ordinary, recurse_super, super_measure_integral)
from .solutions import (ClosedSolution, conjugation_residuals, hciz_phi, phi2, plane_wave,
                        rho11_general, rho11_hyperbola, rho12_hyperbola, rho12_via_L)
from .identities import Polynomial, check_B9, check_commut, check_invariance
from .physics import (DipoleConfig, OspCouplings, UnitaryCouplings, hamiltonian_match,
                      osp_couplings, solve_dipole_angles, table1, tensor_potential,
                      unitary_couplings)

__version__ = "0.1.0"
