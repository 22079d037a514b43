"""Closed-form MZI physics: coupled-MZI intensities, the phase-controlled
single MZI (matrix chain and closed forms), the analytic g2, and fringe
visibility."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .optics import (
    FieldState,
    apply,
    compose,
    make_beam_splitter,
    make_phase_pair,
)


@dataclass(frozen=True)
class PhaseConfig:
    """Phase settings for one interferometer evaluation.

    zeta is the PZT-scanned common phase on the upper arm; phi_p / phi_q are
    the controller phases on the upper / lower arm.  phi and psi are the
    basis phases of the coupled two-MZI system and are unused by the single
    MZI.  The controlled difference delta_phi is always derived, never
    stored.
    """

    zeta: float = 0.0
    phi_p: float = 0.0
    phi_q: float = 0.0
    phi: float = 0.0
    psi: float = 0.0

    @property
    def delta_phi(self) -> float:
        return self.phi_p - self.phi_q


@dataclass(frozen=True)
class IntensityPair:
    upper: float  # I_C or I_A
    lower: float  # I_D or I_B
    total: float  # I_0


def coupled_mzi_intensities(phi: float, psi: float, i0: float) -> IntensityPair:
    """Output intensities of the coupled (dummy-augmented) MZI.

    I_C = i0 (1 + sin phi sin psi) / 2,  I_D = i0 (1 - sin phi sin psi) / 2.
    For psi in {0, pi} both outputs are i0/2 regardless of phi; for
    psi = +-pi/2 the phi-fringe has full visibility.
    """
    if i0 <= 0:
        raise ValueError("i0 must be positive")
    s = math.sin(phi) * math.sin(psi)
    return IntensityPair(i0 * (1.0 + s) / 2.0, i0 * (1.0 - s) / 2.0, i0)


def single_mzi_fields(cfg: PhaseConfig, e0: FieldState) -> FieldState:
    """Propagate the input through BS -> (phi_p, phi_q) -> (zeta, 0) -> BS.

    The source feeds port A only; any port-B amplitude is rejected.
    """
    if e0.port_b != 0:
        raise ValueError("input field must have all amplitude in port A")
    chain = compose(
        make_beam_splitter(),
        make_phase_pair(cfg.phi_p, cfg.phi_q),
        make_phase_pair(cfg.zeta, 0.0),
        make_beam_splitter(),
    )
    return apply(chain, e0)


def single_mzi_intensities(zeta: float, delta_phi: float, i0: float) -> IntensityPair:
    """Closed-form output intensities of the phase-controlled single MZI.

    I_A = (i0/2)(1 - cos(zeta + delta_phi)), I_B = (i0/2)(1 + cos(...)).
    """
    if i0 <= 0:
        raise ValueError("i0 must be positive")
    c = math.cos(zeta + delta_phi)
    return IntensityPair(i0 * (1.0 - c) / 2.0, i0 * (1.0 + c) / 2.0, i0)


def g2_analytic(zeta: float, delta_phi: float = 0.0) -> float:
    """Analytic second-order correlation sin^2(zeta + delta_phi)."""
    return math.sin(zeta + delta_phi) ** 2


def fringe_visibility(samples: Sequence[IntensityPair]) -> float:
    """(max - min)/(max + min) of the upper-port intensity over a sweep.

    The caller is responsible for sweeping at least a full fringe period
    (2*pi in zeta); with fewer samples the value underestimates the true
    visibility.
    """
    if len(samples) < 2:
        raise ValueError("visibility needs at least 2 samples")
    values = [s.upper for s in samples]
    hi, lo = max(values), min(values)
    if hi + lo == 0:
        return 0.0
    return (hi - lo) / (hi + lo)
