"""Information-theoretic analysis of a position-dependent-mass particle
in an infinite potential well.

The deformation parameter ``gamma_a`` bends the kinematics of a particle
whose effective mass falls off as ``m0/(1+gamma*x)^2``; the package
provides the exact eigenstates of the deformed well, their probability
densities in position, wavevector and deformed-coordinate space, the
Shannon/Fisher/disequilibrium measures with their characteristic
lengths, and the Cramer-Rao, Fisher-Shannon and LMC complexities, each
backed by an independent quadrature oracle.
"""

from .complexity import ComplexitySet, complexity_closed, complexity_numeric, rydberg_asymptotics
from .deformed import (
    DeformedWell,
    Space,
    WaveFunction,
    box_length,
    deformed_derivative,
    deformed_fourier,
    eta_of_x,
    mass_at,
    norm_squared,
    plane_wave,
    x_of_eta,
)
from .errors import (
    DomainError,
    InvalidConfig,
    NonConvergence,
    NonFinite,
    NotNormalized,
    PdmWellError,
    SingularPoint,
)
from .measures import (
    BBM_BOUND,
    BBMSum,
    DensityProfile,
    DensityTail,
    MeasureContext,
    MeasureSet,
    amplitude_derivative,
    bbm_sum,
    classical_profile,
    closed_measures,
    density_profile,
    entropy_density,
    f_asymptote,
    f_of_n,
    gaussian_profile,
    numeric_measures,
    unscaled_shannon,
)
from .numerics import Interval, QuadratureResult, differentiate, integrate, p_log_p
from .verify import run_verification
from .well import (
    ClassicalEnsemble,
    EigenState,
    KMoments,
    Moments,
    classical_density,
    classical_moments,
    density_eta,
    density_k,
    density_x,
    eigenfunction_k,
    eigenfunction_x,
    energy_level,
    eta_window,
    k_amplitude,
    k_moments,
    quantum_moments,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BBM_BOUND",
    "BBMSum",
    "ClassicalEnsemble",
    "ComplexitySet",
    "DeformedWell",
    "DensityProfile",
    "DensityTail",
    "DomainError",
    "EigenState",
    "Interval",
    "InvalidConfig",
    "KMoments",
    "MeasureContext",
    "MeasureSet",
    "Moments",
    "NonConvergence",
    "NonFinite",
    "NotNormalized",
    "PdmWellError",
    "QuadratureResult",
    "SingularPoint",
    "Space",
    "WaveFunction",
    "amplitude_derivative",
    "bbm_sum",
    "box_length",
    "classical_density",
    "classical_moments",
    "classical_profile",
    "closed_measures",
    "complexity_closed",
    "complexity_numeric",
    "deformed_derivative",
    "deformed_fourier",
    "density_eta",
    "density_k",
    "density_profile",
    "density_x",
    "differentiate",
    "eigenfunction_k",
    "eigenfunction_x",
    "energy_level",
    "entropy_density",
    "eta_of_x",
    "eta_window",
    "f_asymptote",
    "f_of_n",
    "gaussian_profile",
    "integrate",
    "k_amplitude",
    "k_moments",
    "mass_at",
    "norm_squared",
    "numeric_measures",
    "p_log_p",
    "plane_wave",
    "quantum_moments",
    "run_verification",
    "rydberg_asymptotics",
    "unscaled_shannon",
    "x_of_eta",
]
