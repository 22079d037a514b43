"""Command-line surface: `sweep` (zeta-grid records to CSV/JSON), `eval`
(netlist evaluation), and `check` (built-in invariant suite).

Exit codes: 0 success, 1 property failure, 2 usage/parse error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .checks import run_checks
from .interferometer import g2_analytic, single_mzi_intensities
from .netlist import CircuitSpec, ElementSpec, NetlistError, lower, parse, parse_scalar
from .optics import apply, intensity
from .pulses import (
    DegenerateCorrelationError,
    build_pulse_train,
    g2_estimate,
    simulate_timeseries,
    time_average,
)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_USAGE = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepRecord:
    zeta: float
    i_a: float
    i_b: float
    g2: float


@dataclass(frozen=True)
class RunConfig:
    zeta_start: float
    zeta_end: float
    steps: int
    i0: float
    delta_phi: float
    pulse: dict | None          # period, duty, n, spp when in pulse mode
    dphi_on: float
    out_format: str             # csv | json
    out_path: str | None
    seed: int | None
    jitter_std: float


def _fmt(x: float) -> str:
    return format(x, ".17g")


def parse_zeta_range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"range must be start:end, got {text!r}")
    try:
        start, end = parse_scalar(parts[0]), parse_scalar(parts[1])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if end <= start:
        raise UsageError("zeta range end must exceed start")
    return start, end


def _parse_pulse(text: str) -> dict:
    fields = {}
    for item in text.split(","):
        key, sep, raw = item.partition("=")
        if not sep or key not in ("period", "duty", "n", "spp"):
            raise UsageError(f"bad pulse field {item!r} (expected period=,duty=,n=,spp=)")
        try:
            fields[key] = parse_scalar(raw)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    missing = {"period", "duty", "n", "spp"} - fields.keys()
    if missing:
        raise UsageError(f"pulse spec missing {sorted(missing)}")
    fields["n"] = int(fields["n"])
    fields["spp"] = int(fields["spp"])
    return fields


def _load_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, raw = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            values[key.strip()] = raw.strip()
    return values


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Merge CLI flags over config-file values over defaults."""
    file_values = _load_config_file(args.config) if args.config else {}

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        return file_values.get(key, default)

    zeta_text = pick(args.zeta, "zeta", "0:2pi")
    steps = int(pick(args.steps, "steps", 201))
    i0 = parse_scalar(str(pick(args.i0, "i0", 1.0)))
    dphi = parse_scalar(str(pick(args.dphi, "dphi", 0.0)))
    pulse_text = pick(args.pulse, "pulse", None)
    dphi_on = parse_scalar(str(pick(args.dphi_on, "dphi-on", math.pi)))
    out_format = pick(args.format, "format", "csv")
    out_path = pick(args.out, "out", None)
    seed = pick(args.seed, "seed", os.environ.get("COHMZI_SEED"))
    jitter_std = float(pick(args.jitter_std, "jitter-std", 0.0))

    zeta_start, zeta_end = parse_zeta_range(str(zeta_text))
    if steps < 2:
        raise UsageError("steps must be >= 2")
    if i0 <= 0:
        raise UsageError("i0 must be positive")
    if out_format not in ("csv", "json"):
        raise UsageError(f"unknown format {out_format!r}")
    pulse = _parse_pulse(str(pulse_text)) if pulse_text is not None else None
    return RunConfig(zeta_start, zeta_end, steps, i0, dphi, pulse, dphi_on,
                     out_format, out_path,
                     int(seed) if seed is not None else None, jitter_std)


def compute_sweep(config: RunConfig) -> list[SweepRecord]:
    """One record per grid point, endpoints inclusive, emitted in grid order."""
    grid = np.linspace(config.zeta_start, config.zeta_end, config.steps)
    records = []
    for index, zeta in enumerate(grid):
        zeta = float(zeta)
        if config.pulse is None:
            pair = single_mzi_intensities(zeta, config.delta_phi, config.i0)
            record = SweepRecord(zeta, pair.upper, pair.lower,
                                 g2_analytic(zeta, config.delta_phi))
        else:
            train = build_pulse_train(config.pulse["period"], config.pulse["duty"],
                                      config.pulse["n"], config.dphi_on)
            seed = config.seed + index if config.seed is not None else None
            series = simulate_timeseries(train, zeta, config.i0, config.pulse["spp"],
                                         jitter_std=config.jitter_std, seed=seed)
            mean_a, mean_b = time_average(series)
            record = SweepRecord(zeta, mean_a, mean_b, g2_estimate(series))
        records.append(record)
    return records


def render_records(records: list[SweepRecord], out_format: str) -> str:
    if out_format == "csv":
        lines = ["zeta,i_a,i_b,g2"]
        lines += [f"{_fmt(r.zeta)},{_fmt(r.i_a)},{_fmt(r.i_b)},{_fmt(r.g2)}"
                  for r in records]
        return "\n".join(lines) + "\n"
    payload = [{"zeta": r.zeta, "i_a": r.i_a, "i_b": r.i_b, "g2": r.g2}
               for r in records]
    return json.dumps({"records": payload}, indent=2) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_sweep(args: argparse.Namespace) -> int:
    config = build_run_config(args)
    records = compute_sweep(config)
    _emit(render_records(records, config.out_format), config.out_path)
    return EXIT_OK


def _insert_zeta_override(spec: CircuitSpec, zeta: float) -> CircuitSpec:
    """Place an upper-arm phase (the PZT) just before the final splitter."""
    elements = list(spec.elements)
    pzt = ElementSpec("phase", {"arm": "upper", "value": zeta})
    for i in range(len(elements) - 1, -1, -1):
        if elements[i].kind == "bs":
            elements.insert(i, pzt)
            break
    else:
        elements.append(pzt)
    return CircuitSpec(spec.source, tuple(elements))


def cmd_eval(args: argparse.Namespace) -> int:
    with open(args.netlist, encoding="utf-8") as fh:
        text = fh.read()
    spec = parse(text)
    if args.zeta is not None:
        spec = _insert_zeta_override(spec, parse_scalar(args.zeta))
    matrix, e0 = lower(spec)
    out = apply(matrix, e0)
    result = {
        "i_a": intensity(out, "A"),
        "i_b": intensity(out, "B"),
        "phase_a": math.atan2(out.port_a.imag, out.port_a.real),
        "phase_b": math.atan2(out.port_b.imag, out.port_b.real),
        "carrier_hz": out.carrier_hz,
    }
    _emit(json.dumps(result, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    results = run_checks()
    all_ok = True
    for name, passed, detail in results:
        status = "pass" if passed else "FAIL"
        print(f"{status}  {name}: {detail}")
        all_ok = all_ok and passed
    return EXIT_OK if all_ok else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cohmzi",
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="sweep zeta and emit (zeta, i_a, i_b, g2) records")
    sweep.add_argument("--zeta", help="zeta range start:end, pi allowed (default 0:2pi)")
    sweep.add_argument("--steps", type=int, help="grid points, endpoints inclusive")
    sweep.add_argument("--i0", help="input intensity (default 1)")
    sweep.add_argument("--dphi", help="static delta_phi in radians (default 0)")
    sweep.add_argument("--pulse", help="pulse mode: period=<s>,duty=<f>,n=<count>,spp=<count>")
    sweep.add_argument("--dphi-on", dest="dphi_on", help="delta_phi during ON windows (default pi)")
    sweep.add_argument("--format", choices=("csv", "json"))
    sweep.add_argument("--out", help="write to file instead of stdout")
    sweep.add_argument("--seed", type=int, help="jitter seed (fallback: COHMZI_SEED)")
    sweep.add_argument("--jitter-std", dest="jitter_std", type=float,
                       help="gaussian zeta jitter std in radians (default 0, off)")
    sweep.add_argument("--config", help="optional key = value config file; flags win")
    sweep.set_defaults(func=cmd_sweep)

    ev = sub.add_parser("eval", help="evaluate a .mzi netlist file")
    ev.add_argument("netlist", help="netlist path")
    ev.add_argument("--zeta", help="PZT phase inserted before the final splitter")
    ev.add_argument("--out", help="write JSON to file instead of stdout")
    ev.set_defaults(func=cmd_eval)

    check = sub.add_parser("check", help="run the built-in invariant suite")
    check.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except DegenerateCorrelationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except (UsageError, NetlistError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
