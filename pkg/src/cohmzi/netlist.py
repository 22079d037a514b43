"""Line-oriented circuit netlist: parse, serialize, and lower to a transfer
matrix.

Grammar (one statement per line, `#` comments and blank lines ignored,
canonical extension `.mzi`):

    source intensity=<num> freq=<num>
    bs
    phase arm=<upper|lower> value=<num>
    aom arm=<upper|lower> delta=<num> duration=<num> sign=<+1|-1>

Numbers accept plain reals with exponents (``80e6``, ``3.125e-9``) and
pi-expressions (``pi``, ``2*pi``, ``pi/2``, ``-pi/4``, ``4pi``).  Keywords
are case-sensitive ASCII.  Mirrors are not elements: they add a common
phase to both arms, which cancels in every intensity.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .optics import FieldState, TransferMatrix, compose, make_phase_pair, make_beam_splitter
from .pulses import AomDrive, aom_phase


class NetlistError(ValueError):
    """Structured parse/validation failure with position information.

    ``kind`` is one of: unknown-element, missing-param, duplicate-param,
    bad-number, bad-param, missing-source, empty-circuit.
    """

    def __init__(self, kind: str, message: str, line: int, col: int = 1):
        self.kind = kind
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


@dataclass(frozen=True)
class SourceSpec:
    intensity: float
    carrier_hz: float


@dataclass(frozen=True)
class ElementSpec:
    kind: str                      # bs | phase | aom
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CircuitSpec:
    source: SourceSpec
    elements: tuple    # ElementSpec, source-to-detector order


_SCALAR_RE = re.compile(
    r"^(?P<sign>-)?"
    r"(?:(?P<coef>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)\*?)?"
    r"pi"
    r"(?:/(?P<div>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?))?$"
)


def parse_scalar(text: str) -> float:
    """Parse a plain real or a pi-expression; raises ValueError otherwise.

    Shared numeric sublanguage of the netlist grammar and the CLI range
    syntax.
    """
    s = text.strip()
    m = _SCALAR_RE.match(s)
    if m:
        value = math.pi
        if m.group("coef"):
            value *= float(m.group("coef"))
        if m.group("div"):
            div = float(m.group("div"))
            if div == 0.0:
                raise ValueError(f"division by zero in {text!r}")
            value /= div
        return -value if m.group("sign") else value
    try:
        value = float(s)
    except ValueError:
        raise ValueError(f"malformed number {text!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"non-finite number {text!r}")
    return value


_ELEMENT_PARAMS = {
    "bs": frozenset(),
    "phase": frozenset({"arm", "value"}),
    "aom": frozenset({"arm", "delta", "duration", "sign"}),
}


def _col_of(line: str, token: str) -> int:
    idx = line.find(token)
    return idx + 1 if idx >= 0 else 1


def _parse_kv(tokens, line_text, lineno, allowed):
    params = {}
    for tok in tokens:
        if "=" not in tok:
            raise NetlistError("bad-param", f"expected key=value, got {tok!r}",
                               lineno, _col_of(line_text, tok))
        key, _, raw = tok.partition("=")
        if key not in allowed:
            raise NetlistError("bad-param", f"unknown parameter {key!r}",
                               lineno, _col_of(line_text, tok))
        if key in params:
            raise NetlistError("duplicate-param", f"duplicate parameter {key!r}",
                               lineno, _col_of(line_text, tok))
        params[key] = (raw, _col_of(line_text, raw))
    return params


def _require(params, keys, lineno):
    for key in keys:
        if key not in params:
            raise NetlistError("missing-param", f"missing parameter {key!r}", lineno)


def _scalar(params, key, lineno):
    raw, col = params[key]
    try:
        return parse_scalar(raw)
    except ValueError as exc:
        raise NetlistError("bad-number", f"{key}: {exc}", lineno, col) from None


def _arm(params, lineno):
    raw, col = params["arm"]
    if raw not in ("upper", "lower"):
        raise NetlistError("bad-param", f"arm must be upper or lower, got {raw!r}",
                           lineno, col)
    return raw


def parse(text: str) -> CircuitSpec:
    """Parse netlist text into a CircuitSpec, preserving file order."""
    source = None
    elements = []
    for lineno, line_text in enumerate(text.splitlines(), start=1):
        stripped = line_text.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        head = tokens[0]

        if source is None:
            if head != "source":
                raise NetlistError("missing-source",
                                   f"first statement must be 'source', got {head!r}",
                                   lineno, _col_of(line_text, head))
            params = _parse_kv(tokens[1:], line_text, lineno, {"intensity", "freq"})
            _require(params, ("intensity", "freq"), lineno)
            intensity = _scalar(params, "intensity", lineno)
            freq = _scalar(params, "freq", lineno)
            if intensity <= 0:
                raise NetlistError("bad-param", "intensity must be positive",
                                   lineno, params["intensity"][1])
            if freq <= 0:
                raise NetlistError("bad-param", "freq must be positive",
                                   lineno, params["freq"][1])
            source = SourceSpec(intensity, freq)
            continue

        if head == "source":
            raise NetlistError("bad-param", "duplicate source line",
                               lineno, _col_of(line_text, head))
        if head not in _ELEMENT_PARAMS:
            raise NetlistError("unknown-element", f"unknown element {head!r}",
                               lineno, _col_of(line_text, head))

        params = _parse_kv(tokens[1:], line_text, lineno, _ELEMENT_PARAMS[head])
        if head == "bs":
            elements.append(ElementSpec("bs"))
        elif head == "phase":
            _require(params, ("arm", "value"), lineno)
            elements.append(ElementSpec("phase", {
                "arm": _arm(params, lineno),
                "value": _scalar(params, "value", lineno),
            }))
        else:  # aom
            _require(params, ("arm", "delta", "duration", "sign"), lineno)
            sign = _scalar(params, "sign", lineno)
            if sign not in (1.0, -1.0):
                raise NetlistError("bad-param", "sign must be +1 or -1",
                                   lineno, params["sign"][1])
            delta = _scalar(params, "delta", lineno)
            duration = _scalar(params, "duration", lineno)
            if delta < 0:
                raise NetlistError("bad-param", "delta must be >= 0",
                                   lineno, params["delta"][1])
            if duration <= 0:
                raise NetlistError("bad-param", "duration must be positive",
                                   lineno, params["duration"][1])
            elements.append(ElementSpec("aom", {
                "arm": _arm(params, lineno),
                "delta_hz": delta,
                "duration_s": duration,
                "sign": int(sign),
            }))

    if source is None:
        raise NetlistError("missing-source", "no source line", max(1, text.count("\n") + 1))
    if not elements:
        raise NetlistError("empty-circuit", "circuit has no elements",
                           max(1, text.count("\n") + 1))
    return CircuitSpec(source, tuple(elements))


def serialize(spec: CircuitSpec) -> str:
    """Render a CircuitSpec back to netlist text; parse(serialize(s)) == s."""
    lines = [f"source intensity={spec.source.intensity!r} freq={spec.source.carrier_hz!r}"]
    for el in spec.elements:
        if el.kind == "bs":
            lines.append("bs")
        elif el.kind == "phase":
            lines.append(f"phase arm={el.params['arm']} value={el.params['value']!r}")
        else:
            lines.append(
                f"aom arm={el.params['arm']} delta={el.params['delta_hz']!r} "
                f"duration={el.params['duration_s']!r} sign={el.params['sign']:+d}")
    return "\n".join(lines) + "\n"


def _element_phases(el: ElementSpec) -> tuple[float, float]:
    """(upper, lower) phase contribution of a phase or aom element."""
    if el.kind == "phase":
        value = el.params["value"]
    else:
        value = aom_phase(AomDrive(el.params["delta_hz"], el.params["duration_s"],
                                   el.params["sign"]))
    if el.params["arm"] == "upper":
        return value, 0.0
    return 0.0, value


def lower(spec: CircuitSpec, fold: bool = True) -> tuple[TransferMatrix, FieldState]:
    """Compose the element chain into one matrix plus the input field.

    With fold=True adjacent single-arm phase/aom elements are merged into
    one diagonal matrix before composing; the result is identical either
    way within roundoff.
    """
    matrices = []
    pending = None  # accumulated (upper, lower) diagonal phases
    for el in spec.elements:
        if el.kind == "bs":
            if pending is not None:
                matrices.append(make_phase_pair(*pending))
                pending = None
            matrices.append(make_beam_splitter())
        else:
            up, lo = _element_phases(el)
            if fold and pending is not None:
                pending = (pending[0] + up, pending[1] + lo)
            else:
                if pending is not None:
                    matrices.append(make_phase_pair(*pending))
                pending = (up, lo)
    if pending is not None:
        matrices.append(make_phase_pair(*pending))
    total = compose(*matrices)
    e0 = FieldState(math.sqrt(spec.source.intensity), 0.0, spec.source.carrier_hz)
    return total, e0
