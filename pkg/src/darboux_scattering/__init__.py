"""Darboux-deformed exactly solvable 1D potentials with closed-form scattering data and a Numerov oracle."""

from .amplitudes import deform_amplitudes, invariance_check, pole_catalog, probe_pole
from .darboux import Scenario, deformed_potential, wronskian
from .estimator import DeformedScattering
from .exceptions import ScatteringError
from .oracle import numerov_scatter, shoot_bound_states
from .potentials import FAMILIES, make_potential
from .regularity import check_regularity
from .scenario_io import ScenarioFile, load, loads
from .seeds import admissible_ranges, make_seed

__version__ = "0.1.0"

__all__ = [
    "FAMILIES",
    "DeformedScattering",
    "Scenario",
    "ScenarioFile",
    "ScatteringError",
    "admissible_ranges",
    "check_regularity",
    "deform_amplitudes",
    "deformed_potential",
    "invariance_check",
    "load",
    "loads",
    "make_potential",
    "make_seed",
    "numerov_scatter",
    "pole_catalog",
    "probe_pole",
    "shoot_bound_states",
    "wronskian",
]
