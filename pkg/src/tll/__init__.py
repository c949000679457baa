"""Exact finite-time dynamics of a driven one-dimensional quantum liquid.

Per-mode scale-factor (auxiliary oscillator) equations for quadratic
bosonic Hamiltonians with time-dependent couplings, shortcut protocols
that end ramps in finite time without residual excitation, and the
energy observables that quantify how far a given ramp falls short.
"""

from ._backend import BACKEND
from .config import RunConfig, build_gamma_schedule, build_grid, build_schedule, emit, load_config, loads
from .ermakov import (
    ErmakovTrajectory,
    Homogeneous,
    HomogeneousPair,
    build_uv,
    perturbative_gamma,
    perturbative_gamma_dot,
    pinney_combine,
    solve_ermakov_numeric,
    solve_linear_ramp_airy,
    solve_linear_ramp_perturbative,
)
from .errors import (
    ConfigError,
    ConsistencyError,
    DomainError,
    IncompleteGridError,
    InstabilityError,
    LinearDependenceError,
    OverflowRangeError,
    RootNotFoundError,
    SingularityError,
    StiffnessError,
    TLLError,
)
from .model import (
    Dispersion,
    ModeGrid,
    TLLParams,
    bogoliubov_angle,
    bose_occupation,
    dispersion,
    lieb_liniger_k,
    long_range_coupling,
    luttinger_params,
    xxz_coupling,
)
from .observables import (
    EnergyReport,
    adiabatic_energy,
    adiabatic_time_bound,
    e_gs_perturbative,
    energy_report,
    mean_energy,
    mode_energy,
    perturbative_residual_linear,
    perturbative_residual_long_time,
    perturbative_residual_short_time,
    perturbative_validity,
    residual_energy_continuum,
    residual_inverse_poly,
    sg_mean_energy,
    solve_grid,
    sudden_energy,
)
from .protocols import (
    CouplingSchedule,
    GammaSchedule,
    ScheduleFrequency,
    accidental_sta_constant,
    accidental_sta_linear,
    constant_coupling,
    coupling_at,
    inverse_poly_b,
    inverse_poly_ramp,
    lattice_potential_from_gamma,
    linear_ramp,
    poly5_ramp,
    sg_spectrum,
    sine_gordon_gap,
    sta_gamma,
    sta_gamma_arrays,
)
from .specfun import AiryQuad, airy, airy_grid, gamma0

__version__ = "0.1.0"

__all__ = [
    "AiryQuad",
    "BACKEND",
    "ConfigError",
    "ConsistencyError",
    "CouplingSchedule",
    "Dispersion",
    "DomainError",
    "EnergyReport",
    "ErmakovTrajectory",
    "GammaSchedule",
    "Homogeneous",
    "HomogeneousPair",
    "IncompleteGridError",
    "InstabilityError",
    "LinearDependenceError",
    "ModeGrid",
    "OverflowRangeError",
    "RootNotFoundError",
    "RunConfig",
    "ScheduleFrequency",
    "SingularityError",
    "StiffnessError",
    "TLLError",
    "TLLParams",
    "accidental_sta_constant",
    "accidental_sta_linear",
    "adiabatic_energy",
    "adiabatic_time_bound",
    "airy",
    "airy_grid",
    "bogoliubov_angle",
    "bose_occupation",
    "build_gamma_schedule",
    "build_grid",
    "build_schedule",
    "build_uv",
    "constant_coupling",
    "coupling_at",
    "dispersion",
    "e_gs_perturbative",
    "emit",
    "energy_report",
    "gamma0",
    "inverse_poly_b",
    "inverse_poly_ramp",
    "lattice_potential_from_gamma",
    "lieb_liniger_k",
    "linear_ramp",
    "load_config",
    "loads",
    "long_range_coupling",
    "luttinger_params",
    "mean_energy",
    "mode_energy",
    "perturbative_gamma",
    "perturbative_gamma_dot",
    "perturbative_residual_linear",
    "perturbative_residual_long_time",
    "perturbative_residual_short_time",
    "perturbative_validity",
    "pinney_combine",
    "poly5_ramp",
    "residual_energy_continuum",
    "residual_inverse_poly",
    "sg_mean_energy",
    "sg_spectrum",
    "sine_gordon_gap",
    "solve_ermakov_numeric",
    "solve_grid",
    "solve_linear_ramp_airy",
    "solve_linear_ramp_perturbative",
    "sta_gamma",
    "sta_gamma_arrays",
    "sudden_energy",
    "xxz_coupling",
]
