"""Heat, work and entropy bookkeeping for driven open two-level systems."""
from .bloch import (AlignmentAngle, BlochState, DrivingField, alignment, cos_alpha,
                    internal_energy, purity, state_eigensystem, von_neumann_entropy)
from .firstlaw import (FirstLawRates, TrajectoryPoint, conventional_rates, entropy_based_rates,
                       entropy_rate, first_law_rates, hamiltonian_based_rates,
                       inverse_temperature, irreversible_entropy_rates)
from .model import (BathRates, InitialState, ModelParams, OhmicBath, SpectralModel,
                    closed_form_derivatives, closed_form_state, fourier_coefficients,
                    interaction_picture_state, internal_energy_model, rates_from_spectra,
                    steady_state, trajectory_point)

__version__ = "0.1.0"

__all__ = [
    "AlignmentAngle", "BathRates", "BlochState", "DrivingField", "FirstLawRates",
    "InitialState", "ModelParams", "OhmicBath", "SpectralModel", "TrajectoryPoint",
    "alignment", "closed_form_derivatives", "closed_form_state", "conventional_rates",
    "cos_alpha", "entropy_based_rates", "entropy_rate", "first_law_rates",
    "fourier_coefficients", "hamiltonian_based_rates", "interaction_picture_state",
    "internal_energy", "internal_energy_model", "inverse_temperature",
    "irreversible_entropy_rates", "purity", "rates_from_spectra", "state_eigensystem",
    "steady_state", "trajectory_point", "von_neumann_entropy",
]
