"""Two-port transfer-matrix algebra: beam splitters, phase pairs, chains.

Matrices are plain 2x2 complex numpy arrays.  Convention: the beam splitter
is the symmetric (1/sqrt(2))[[1, i],[i, 1]] with the pi/2 phase on
reflection; all angles are radians, unwrapped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# 2x2 complex, row-major
TransferMatrix = np.ndarray

IDENTITY: TransferMatrix = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class FieldState:
    """Complex amplitudes on the two ports plus the optical carrier.

    The carrier frequency is metadata only; no time-dependent beating is
    computed at this layer.
    """

    port_a: complex
    port_b: complex
    carrier_hz: float = 0.0


def make_beam_splitter() -> TransferMatrix:
    """50:50 splitter (1/sqrt(2))[[1, i],[i, 1]]."""
    return np.array([[1.0, 1.0j], [1.0j, 1.0]], dtype=complex) / math.sqrt(2.0)


def make_phase_pair(phi_upper: float, phi_lower: float) -> TransferMatrix:
    """diag(e^{i phi_upper}, e^{i phi_lower}); a single-arm shift uses 0 on the other arm."""
    if not (math.isfinite(phi_upper) and math.isfinite(phi_lower)):
        raise ValueError("phase values must be finite")
    return np.diag([np.exp(1j * phi_upper), np.exp(1j * phi_lower)])


def compose(*elements: TransferMatrix) -> TransferMatrix:
    """Chain elements listed in propagation order (source to detector).

    The FIRST argument is applied to the field first, i.e. it is multiplied
    right-most numerically: compose(A, B) == B @ A.
    """
    if not elements:
        raise ValueError("compose() requires at least one matrix")
    total = np.asarray(elements[0], dtype=complex)
    for m in elements[1:]:
        total = np.asarray(m, dtype=complex) @ total
    return total


def apply(m: TransferMatrix, f: FieldState) -> FieldState:
    """Matrix-vector product on (port_a, port_b); carrier passes through."""
    va, vb = np.asarray(m, dtype=complex) @ np.array([f.port_a, f.port_b])
    return FieldState(complex(va), complex(vb), f.carrier_hz)


def is_unitary(m: TransferMatrix, tol: float) -> bool:
    """True iff max entrywise |M^dagger M - I| <= tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = np.asarray(m, dtype=complex)
    return bool(np.max(np.abs(m.conj().T @ m - IDENTITY)) <= tol)


def intensity(f: FieldState, port: str) -> float:
    """Squared modulus of the amplitude on port 'A' or 'B'."""
    if port == "A":
        return abs(f.port_a) ** 2
    if port == "B":
        return abs(f.port_b) ** 2
    raise ValueError(f"unknown port {port!r}, expected 'A' or 'B'")


def total_intensity(f: FieldState) -> float:
    return abs(f.port_a) ** 2 + abs(f.port_b) ** 2
