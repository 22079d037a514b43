"""Deterministic coherence-optics simulator for phase-controlled
Mach-Zehnder interferometers."""

from .interferometer import (
    IntensityPair,
    PhaseConfig,
    coupled_mzi_intensities,
    fringe_visibility,
    g2_analytic,
    single_mzi_fields,
    single_mzi_intensities,
)
from .optics import (
    FieldState,
    TransferMatrix,
    apply,
    compose,
    intensity,
    is_unitary,
    make_beam_splitter,
    make_phase_pair,
    total_intensity,
)
from .pulses import (
    AomDrive,
    DegenerateCorrelationError,
    PulseTrain,
    TimeSeries,
    aom_phase,
    build_pulse_train,
    g2_estimate,
    simulate_timeseries,
    time_average,
)

__all__ = [
    "AomDrive", "DegenerateCorrelationError", "FieldState", "IntensityPair",
    "PhaseConfig", "PulseTrain", "TimeSeries", "TransferMatrix",
    "aom_phase", "apply", "build_pulse_train", "compose",
    "coupled_mzi_intensities", "fringe_visibility", "g2_analytic",
    "g2_estimate", "intensity", "is_unitary", "make_beam_splitter",
    "make_phase_pair", "simulate_timeseries", "single_mzi_fields",
    "single_mzi_intensities", "time_average", "total_intensity",
]
