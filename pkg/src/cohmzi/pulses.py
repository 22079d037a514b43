"""RF drive model: AOM phase from (delta, T), AFG pulse trains, deterministic
time-series generation with alternating delta_phi, time averages, and the
g2 estimator.

The AOM is phase-only here: the +-first-order shifted beams are represented
solely by their accumulated phases +-2*pi*delta*T per rf pulse.  Optical
beating at the shifted frequencies is not simulated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class DegenerateCorrelationError(ValueError):
    """Raised when a mean port intensity vanishes and g2 is undefined."""


@dataclass(frozen=True)
class AomDrive:
    delta_hz: float       # rf frequency
    duration_s: float     # rf pulse duration T
    sign: int = +1        # first-order diffraction direction

    def __post_init__(self):
        if not (math.isfinite(self.delta_hz) and self.delta_hz >= 0):
            raise ValueError("delta_hz must be finite and >= 0")
        if not (math.isfinite(self.duration_s) and self.duration_s > 0):
            raise ValueError("duration_s must be finite and positive")
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class PulseTrain:
    period_s: float
    duty: float           # ON fraction at the start of each period
    n_periods: int
    dphi_on: float        # delta_phi while the rf is ON; 0 while OFF

    def __post_init__(self):
        if self.period_s <= 0:
            raise ValueError("period_s must be positive")
        if not 0.0 < self.duty <= 1.0:
            raise ValueError("duty must be in (0, 1]")
        if self.n_periods < 1:
            raise ValueError("n_periods must be >= 1")
        if not math.isfinite(self.dphi_on):
            raise ValueError("dphi_on must be finite")


@dataclass(frozen=True)
class TimeSeries:
    times: np.ndarray   # strictly increasing, seconds
    i_a: np.ndarray
    i_b: np.ndarray
    dphi: np.ndarray    # delta_phi in effect at each sample
    i0: float
    zeta: float


def aom_phase(drive: AomDrive) -> float:
    """Accumulated optical phase sign * 2*pi*delta*T of one rf pulse."""
    return drive.sign * 2.0 * math.pi * drive.delta_hz * drive.duration_s


def build_pulse_train(period_s: float, duty: float, n_periods: int,
                      dphi_on: float) -> PulseTrain:
    return PulseTrain(period_s, duty, n_periods, dphi_on)


def simulate_timeseries(train: PulseTrain, zeta: float, i0: float,
                        samples_per_period: int,
                        jitter_std: float = 0.0,
                        seed: int | None = None) -> TimeSeries:
    """Uniformly sampled intensities over the pulse train.

    Samples sit at window-interior midpoints (no boundary double-counting);
    with an even samples_per_period and duty 0.5 the ON and OFF windows get
    equal sample counts.  jitter_std > 0 adds seedable Gaussian noise to
    zeta per sample; off by default.
    """
    if samples_per_period < 2:
        raise ValueError("samples_per_period must be >= 2")
    if i0 <= 0:
        raise ValueError("i0 must be positive")
    frac = (np.arange(samples_per_period) + 0.5) / samples_per_period
    frac_all = np.tile(frac, train.n_periods)
    periods = np.repeat(np.arange(train.n_periods), samples_per_period)
    times = (periods + frac_all) * train.period_s
    dphi = np.where(frac_all < train.duty, train.dphi_on, 0.0)

    zeta_eff = np.full_like(times, zeta)
    if jitter_std > 0.0:
        rng = np.random.default_rng(seed)
        zeta_eff = zeta_eff + rng.normal(0.0, jitter_std, size=times.shape)

    c = np.cos(zeta_eff + dphi)
    i_a = i0 * (1.0 - c) / 2.0
    i_b = i0 * (1.0 + c) / 2.0
    return TimeSeries(times, i_a, i_b, dphi, i0, zeta)


def time_average(series: TimeSeries) -> tuple[float, float]:
    """Uniform-weight means (<I_A>, <I_B>) of the series."""
    if len(series.times) == 0:
        raise ValueError("empty time series")
    return float(np.mean(series.i_a)), float(np.mean(series.i_b))


def g2_estimate(series: TimeSeries) -> float:
    """<I_A I_B> / (<I_A><I_B>) over the series."""
    mean_a, mean_b = time_average(series)
    if mean_a == 0.0 or mean_b == 0.0:
        raise DegenerateCorrelationError(
            "mean intensity vanishes in one port; g2 denominator is zero")
    return float(np.mean(series.i_a * series.i_b)) / (mean_a * mean_b)
