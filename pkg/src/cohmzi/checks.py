"""Built-in invariant suite behind the `check` subcommand.

Each check returns (name, passed, detail).  The beam splitter can be
overridden to verify the suite actually detects violations.
"""

from __future__ import annotations

import math

import numpy as np

from . import optics
from .interferometer import (
    coupled_mzi_intensities,
    g2_analytic,
    single_mzi_fields,
    single_mzi_intensities,
    PhaseConfig,
)
from .optics import FieldState, apply, compose, intensity, is_unitary, make_phase_pair

_SEED = 20210304
_N_RANDOM = 1000


def run_checks(beam_splitter=None):
    """Run every invariant; returns a list of (name, passed, detail)."""
    bs = optics.make_beam_splitter() if beam_splitter is None else beam_splitter
    rng = np.random.default_rng(_SEED)
    results = []

    def record(name, passed, detail=""):
        results.append((name, bool(passed), detail))

    # unitarity of constructed elements and random chains
    worst = np.max(np.abs(bs.conj().T @ bs - optics.IDENTITY))
    for _ in range(100):
        zeta, pp, qq = rng.uniform(-2 * math.pi, 2 * math.pi, size=3)
        m = compose(bs, make_phase_pair(pp, qq), make_phase_pair(zeta, 0.0), bs)
        worst = max(worst, np.max(np.abs(m.conj().T @ m - optics.IDENTITY)))
    record("unitarity", worst <= 1e-12, f"max |M^H M - I| = {worst:.3e}")

    # energy conservation under random unitaries
    worst = 0.0
    for _ in range(100):
        zeta, pp, qq = rng.uniform(-2 * math.pi, 2 * math.pi, size=3)
        m = compose(bs, make_phase_pair(pp, qq), make_phase_pair(zeta, 0.0), bs)
        amps = rng.normal(size=4)
        f = FieldState(complex(amps[0], amps[1]), complex(amps[2], amps[3]))
        before = optics.total_intensity(f)
        after = optics.total_intensity(apply(m, f))
        if before > 0:
            worst = max(worst, abs(after - before) / before)
    record("energy-conservation", worst <= 1e-12, f"max rel drift = {worst:.3e}")

    # matrix chain vs closed-form intensities
    worst = 0.0
    for _ in range(_N_RANDOM):
        zeta, pp, qq = rng.uniform(-2 * math.pi, 2 * math.pi, size=3)
        if beam_splitter is None:
            out = single_mzi_fields(PhaseConfig(zeta=zeta, phi_p=pp, phi_q=qq),
                                    FieldState(1.0, 0.0))
        else:
            m = compose(bs, make_phase_pair(pp, qq), make_phase_pair(zeta, 0.0), bs)
            out = apply(m, FieldState(1.0, 0.0))
        closed = single_mzi_intensities(zeta, pp - qq, 1.0)
        worst = max(worst,
                    abs(intensity(out, "A") - closed.upper),
                    abs(intensity(out, "B") - closed.lower))
    record("oracle-equivalence", worst <= 1e-9, f"max abs deviation = {worst:.3e}")

    # swap symmetry I_A(zeta, pi) == I_B(zeta, 0)
    worst = 0.0
    for zeta in rng.uniform(-2 * math.pi, 2 * math.pi, size=200):
        swapped = single_mzi_intensities(zeta, math.pi, 1.0)
        base = single_mzi_intensities(zeta, 0.0, 1.0)
        worst = max(worst, abs(swapped.upper - base.lower))
    record("swap-symmetry", worst <= 1e-12, f"max deviation = {worst:.3e}")

    # g2 pi-periodicity in delta_phi
    worst = 0.0
    for zeta, dphi in rng.uniform(-2 * math.pi, 2 * math.pi, size=(200, 2)):
        worst = max(worst, abs(g2_analytic(zeta, dphi) - g2_analytic(zeta, dphi + math.pi)))
    record("g2-pi-periodicity", worst <= 1e-12, f"max deviation = {worst:.3e}")

    # coupled-MZI randomness for psi in {0, pi}
    worst = 0.0
    for phi in rng.uniform(-2 * math.pi, 2 * math.pi, size=100):
        for psi in (0.0, math.pi):
            pair = coupled_mzi_intensities(phi, psi, 1.0)
            worst = max(worst, abs(pair.upper - 0.5), abs(pair.lower - 0.5))
    record("coupled-randomness", worst <= 1e-12, f"max deviation from I0/2 = {worst:.3e}")

    return results
