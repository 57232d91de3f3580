"""Deformed-Landau graphene model: spectra, Hall staircase, perturbation elements."""

from ._nalandau import (
    Model,
    SpectrumTable,
    __version__,
    acceptance_checks,
    crossed_level,
    element_scale,
    free_dispersion,
    hall_sigma,
    hall_sigma_finite_t,
    hurwitz_zeta,
    landau_matrix_element,
    level_energy,
    level_logdet,
    log_gamma,
    make_model,
    occupation,
    required_nmax,
    spectrum_table,
    zero_mode_energy,
)

__all__ = [
    "Model",
    "SpectrumTable",
    "__version__",
    "acceptance_checks",
    "crossed_level",
    "element_scale",
    "free_dispersion",
    "hall_sigma",
    "hall_sigma_finite_t",
    "hurwitz_zeta",
    "landau_matrix_element",
    "level_energy",
    "level_logdet",
    "log_gamma",
    "make_model",
    "occupation",
    "required_nmax",
    "spectrum_table",
    "zero_mode_energy",
]
