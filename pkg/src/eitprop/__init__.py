"""Weak-probe response and pulse propagation in a pumped Lambda vapor cell."""

from .bloch import (
    DegenerateSteadyStateError,
    PerturbativityWarning,
    RepumpModel,
    build_generator,
    population_scan,
    steady_state,
    weak_probe_chi_numeric,
)
from .config import Config, load_config
from .params import (
    C_LIGHT,
    AtomParams,
    DriveParams,
    FrequencyGrid,
    InvalidParameterError,
    Populations,
    derive_dephasings,
)
from .pulse import GaussianPulse, PropagationResult, delay_and_gain_at, propagate
from .response import (
    MediumResponse,
    centerline_gain,
    chi_analytic,
    dispersion_D,
    group_velocity,
    inverse_group_velocity,
    refractive_index,
    transmission,
    zero_dispersion_roots,
)
from .scans import calibrate_density, delay_advance_vs_dephasing, gain_vs_dephasing

__all__ = [
    "C_LIGHT",
    "AtomParams",
    "Config",
    "DegenerateSteadyStateError",
    "DriveParams",
    "FrequencyGrid",
    "GaussianPulse",
    "InvalidParameterError",
    "MediumResponse",
    "PerturbativityWarning",
    "Populations",
    "PropagationResult",
    "RepumpModel",
    "build_generator",
    "calibrate_density",
    "centerline_gain",
    "chi_analytic",
    "delay_advance_vs_dephasing",
    "delay_and_gain_at",
    "derive_dephasings",
    "dispersion_D",
    "gain_vs_dephasing",
    "group_velocity",
    "inverse_group_velocity",
    "load_config",
    "population_scan",
    "propagate",
    "refractive_index",
    "steady_state",
    "transmission",
    "weak_probe_chi_numeric",
    "zero_dispersion_roots",
]
