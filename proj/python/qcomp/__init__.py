"""Quantitative complementarity relations for few-qubit states."""

from ._core import (
    concurrence,
    distinguishability,
    fringe_scan,
    max_v12,
    nmr_readout,
    predictability,
    preset_state,
    pseudo_pure_prep,
    run_pulse_sequence,
    single_particle_character,
    tangle_profile,
    theta_grid,
    two_particle_visibility,
    verify,
    visibility,
)

__all__ = [
    "concurrence",
    "distinguishability",
    "fringe_scan",
    "max_v12",
    "nmr_readout",
    "predictability",
    "preset_state",
    "pseudo_pure_prep",
    "run_pulse_sequence",
    "single_particle_character",
    "tangle_profile",
    "theta_grid",
    "two_particle_visibility",
    "verify",
    "visibility",
]
