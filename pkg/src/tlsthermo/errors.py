"""Exception types raised by the package."""


class ValidationError(ValueError):
    """Invalid user input: parameters, scenario files, grids."""


class UnphysicalStateError(ValidationError):
    """Bloch vector outside the unit ball."""


class DegenerateFieldError(ValueError):
    """A formula needs a nonzero Hamiltonian norm but got h = 0."""


class InvalidSpectrumError(ValidationError):
    """Bath correlation spectrum takes negative values."""


class StabilityError(ValidationError):
    """Integrator step violates the stability guard."""


class NoRelaxationError(ValueError):
    """Steady state requested for a model without relaxation."""
