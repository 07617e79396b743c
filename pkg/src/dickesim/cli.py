"""Command-line interface over JSON configuration files.

Verbs: ``simulate | synthesize | classify | pyramid | fidelity``.
Exit codes: 0 success, 2 configuration error, 3 computation error,
4 internal concordance violation.  All angles are radians unless
``--degrees`` is given, which converts on input only.  Complex numbers in
configuration and result files are explicit ``[re, im]`` pairs; computed
floats are printed with 15 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .cascade import (
    PolarizerConfig,
    build_pyramid,
    dicke_coefficients,
    pyramid_edges,
    pyramid_text,
)
from .core import LinearAngle, Polarizer, SymmetricState, fidelity
from .entanglement import classify_from_config, entanglement_report
from .errors import (
    ClassDisagreementError,
    ConfigError,
    DickesimError,
    TooLargeError,
    WrongArityError,
    ZeroTargetError,
)
from .synthesis import synthesize
from .window import DEFAULT_WAVELENGTH, DetectionGeometry, estimate_fidelity

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3
EXIT_DISAGREE = 4

PYRAMID_SIZE_LIMIT = 6


# ---------------------------------------------------------------------------
# configuration parsing
# ---------------------------------------------------------------------------

def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    return cfg


def _parse_complex(value, what: str) -> complex:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(x, (int, float)) for x in value)):
        raise ConfigError(f"{what} must be a [re, im] pair, got {value!r}")
    return complex(value[0], value[1])


def _angle(value, what: str, degrees: bool) -> float:
    if not isinstance(value, (int, float)):
        raise ConfigError(f"{what} must be a number, got {value!r}")
    return float(np.deg2rad(value)) if degrees else float(value)


def _system_size(cfg: dict) -> int:
    n = cfg.get("n")
    if not isinstance(n, int) or n < 1:
        raise ConfigError(f"'n' must be a positive integer, got {n!r}")
    return n


def _parse_polarizers(cfg: dict, degrees: bool) -> PolarizerConfig:
    n = _system_size(cfg)
    entries = cfg.get("polarizers")
    if not isinstance(entries, list) or len(entries) != n:
        raise ConfigError(f"'polarizers' must be a list of length n={n}")
    pols = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise ConfigError(f"polarizer {i} must be an object")
        if "theta" in entry:
            pols.append(LinearAngle(_angle(entry["theta"], f"polarizer {i} theta",
                                           degrees)).to_polarizer())
        elif "alpha" in entry and "beta" in entry:
            alpha = _parse_complex(entry["alpha"], f"polarizer {i} alpha")
            beta = _parse_complex(entry["beta"], f"polarizer {i} beta")
            try:
                pols.append(Polarizer(alpha, beta))
            except ValueError as exc:
                raise ConfigError(f"polarizer {i}: {exc}") from exc
        else:
            raise ConfigError(
                f"polarizer {i} needs either 'theta' or 'alpha'+'beta'")
    return PolarizerConfig(tuple(pols))


def _parse_target(cfg: dict) -> SymmetricState:
    n = _system_size(cfg)
    entries = cfg.get("target")
    if not isinstance(entries, list) or len(entries) != n + 1:
        raise ConfigError(f"'target' must be a list of n+1={n + 1} [re, im] pairs")
    raw = np.array([_parse_complex(v, f"target[{k}]") for k, v in enumerate(entries)])
    if not raw.any():
        raise ZeroTargetError("target coefficients are all zero")
    return SymmetricState.from_raw(n, raw)


def _parse_geometry(cfg: dict, degrees: bool) -> DetectionGeometry:
    n = _system_size(cfg)
    geo = cfg.get("geometry")
    if not isinstance(geo, dict):
        raise ConfigError("'geometry' section is required for this command")
    known = {"spacing", "emitter_positions", "transverse_sigma", "wavelength",
             "detector_directions", "window_halfangle"}
    unknown = set(geo) - known
    if unknown:
        raise ConfigError(f"unknown geometry keys: {sorted(unknown)}")

    window = _angle(geo.get("window_halfangle", 0.0), "window_halfangle", degrees)
    try:
        sigma = float(geo.get("transverse_sigma", 0.0))
        wavelength = float(geo.get("wavelength", DEFAULT_WAVELENGTH))

        if "emitter_positions" in geo:
            positions = np.asarray(geo["emitter_positions"], dtype=float)
            if positions.shape != (n, 3):
                raise ConfigError(f"emitter_positions must be {n} [x,y,z] triples")
        else:
            spacing = float(geo.get("spacing", 5e-6))
            xs = (np.arange(n) - (n - 1) / 2.0) * spacing
            positions = np.column_stack([xs, np.zeros(n), np.zeros(n)])

        if "detector_directions" in geo:
            directions = np.asarray(geo["detector_directions"], dtype=float)
            if directions.shape != (n, 3):
                raise ConfigError(f"detector_directions must be {n} [x,y,z] triples")
        else:
            ring = 2.0 * np.pi * np.arange(n) / n
            directions = np.column_stack([np.zeros(n), np.cos(ring), np.sin(ring)])

        return DetectionGeometry(positions, sigma, wavelength, directions, window)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid geometry: {exc}") from exc


# ---------------------------------------------------------------------------
# record emission
# ---------------------------------------------------------------------------

def _round15(obj):
    """Round every float to 15 significant digits, recursively."""
    if isinstance(obj, float):
        return float(f"{obj:.15g}")
    if isinstance(obj, dict):
        return {k: _round15(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round15(v) for v in obj]
    return obj


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _base_record(command: str, cfg: dict, args) -> dict:
    return {
        "tool": "dickesim",
        "version": __version__,
        "command": command,
        "input": {"config": cfg, "flags": {"degrees": bool(args.degrees)}},
    }


def _finish(record: dict, args) -> int:
    echo = record.pop("input")
    rounded = _round15(record)
    rounded["input"] = echo
    _write_text(json.dumps(rounded, indent=2) + "\n", args.out)
    return EXIT_OK


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _report_dict(report) -> dict:
    return {
        "tangle": report.tangle,
        "entropies": list(report.entropies),
        "pair_concurrences": {f"{i}-{j}": c
                              for (i, j), c in report.pair_concurrences.items()},
        "class": report.inferred_class,
    }


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------

def _cmd_simulate(args) -> int:
    cfg = _load_config(args.config)
    config = _parse_polarizers(cfg, args.degrees)
    state = dicke_coefficients(config).canonicalized()
    record = _base_record("simulate", cfg, args)
    record["system_size"] = len(config)
    record["dicke_coefficients"] = [_pair(c) for c in state.coeffs]
    if len(config) == 3:
        record["entanglement"] = _report_dict(entanglement_report(state))
    return _finish(record, args)


def _cmd_synthesize(args) -> int:
    cfg = _load_config(args.config)
    target = _parse_target(cfg)
    config = synthesize(target)
    achieved = dicke_coefficients(config)
    record = _base_record("synthesize", cfg, args)
    record["system_size"] = target.n
    record["polarizers"] = [{"alpha": _pair(p.alpha), "beta": _pair(p.beta)}
                            for p in config]
    record["achieved_coefficients"] = [_pair(c)
                                       for c in achieved.canonicalized().coeffs]
    record["verification"] = {"round_trip_fidelity": fidelity(achieved, target)}
    return _finish(record, args)


def _cmd_classify(args) -> int:
    cfg = _load_config(args.config)
    config = _parse_polarizers(cfg, args.degrees)
    if len(config) != 3:
        raise WrongArityError(f"classify needs n=3, got n={len(config)}")
    prediction = classify_from_config(config)
    state = dicke_coefficients(config)
    report = entanglement_report(state)
    record = _base_record("classify", cfg, args)
    record["distinct_orientations"] = prediction.distinct_orientations
    record["config_class"] = prediction.predicted_class
    record["state_class"] = report.inferred_class
    record["tangle"] = report.tangle
    record["entropies"] = list(report.entropies)
    record["agreement"] = prediction.predicted_class == report.inferred_class
    status = _finish(record, args)
    if not record["agreement"]:
        raise ClassDisagreementError(
            f"config predicts {prediction.predicted_class}, "
            f"state measures {report.inferred_class}")
    return status


def _cmd_pyramid(args) -> int:
    cfg = _load_config(args.config)
    config = _parse_polarizers(cfg, args.degrees)
    if len(config) > PYRAMID_SIZE_LIMIT:
        raise TooLargeError(
            f"pyramid output limited to n <= {PYRAMID_SIZE_LIMIT}, got {len(config)}")
    levels = build_pyramid(config)
    text = pyramid_text(levels)
    csv_lines = ["level,parent_ket,child_ket,amp_re,amp_im"]
    for level, parent, child, amp in pyramid_edges(config, levels):
        csv_lines.append(f"{level},{parent},{child},{amp.real:.15g},{amp.imag:.15g}")
    edges_csv = "\n".join(csv_lines)
    if args.out is None:
        sys.stdout.write(text + "\n\n" + edges_csv + "\n")
        return EXIT_OK
    record = _base_record("pyramid", cfg, args)
    record["system_size"] = len(config)
    record["pyramid_text"] = text
    record["pyramid_edges_csv"] = edges_csv
    return _finish(record, args)


def _resolve_sampling(cfg: dict, args) -> tuple[int, int]:
    samples = args.samples if args.samples is not None else cfg.get("samples")
    if samples is None:
        raise ConfigError("'samples' must be given in the config or via --samples")
    if not isinstance(samples, int) or samples < 1:
        raise ConfigError(f"samples must be a positive integer, got {samples!r}")
    seed = args.seed if args.seed is not None else cfg.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError(f"seed must be an integer, got {seed!r}")
    return samples, seed


def _estimate_dict(est) -> dict:
    return {
        "mean_fidelity": est.mean_fidelity,
        "standard_error": est.standard_error,
        "sample_count": est.sample_count,
        "excluded_count": est.excluded_count,
    }


def _parse_sweep(spec: str, degrees: bool) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--sweep expects START:STOP:COUNT, got {spec!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"cannot parse sweep {spec!r}: {exc}") from exc
    if count < 2 or start < 0 or stop < start:
        raise ConfigError(f"sweep needs 0 <= START <= STOP and COUNT >= 2, got {spec!r}")
    values = np.linspace(start, stop, count)
    return np.deg2rad(values) if degrees else values


def _cmd_fidelity(args) -> int:
    cfg = _load_config(args.config)
    config = _parse_polarizers(cfg, args.degrees)
    geometry = _parse_geometry(cfg, args.degrees)
    target = _parse_target(cfg) if "target" in cfg else None
    samples, seed = _resolve_sampling(cfg, args)

    if args.sweep is not None:
        lines = ["window_halfangle,mean_fidelity,standard_error,"
                 "sample_count,excluded_count"]
        for window in _parse_sweep(args.sweep, args.degrees):
            geo = DetectionGeometry(geometry.emitter_positions,
                                    geometry.transverse_sigma,
                                    geometry.wavelength,
                                    geometry.detector_directions,
                                    float(window))
            est = estimate_fidelity(config, geo, target=target,
                                    samples=samples, seed=seed)
            lines.append(f"{window:.15g},{est.mean_fidelity:.15g},"
                         f"{est.standard_error:.15g},{est.sample_count},"
                         f"{est.excluded_count}")
        _write_text("\n".join(lines) + "\n", args.out)
        return EXIT_OK

    est = estimate_fidelity(config, geometry, target=target,
                            samples=samples, seed=seed)
    record = _base_record("fidelity", cfg, args)
    record["system_size"] = len(config)
    record["fidelity_estimate"] = _estimate_dict(est)
    record["parameters"] = {
        "samples": samples,
        "seed": seed,
        "wavelength": geometry.wavelength,
        "transverse_sigma": geometry.transverse_sigma,
        "window_halfangle": geometry.window_halfangle,
        "emitter_positions": geometry.emitter_positions.tolist(),
        "detector_directions": geometry.detector_directions.tolist(),
    }
    return _finish(record, args)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dickesim",
        description="Simulate, design and classify heralded symmetric "
                    "multi-qubit states from polarized photodetection.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="path to JSON config")
        p.add_argument("--out", default=None, help="write output here instead of stdout")
        p.add_argument("--degrees", action="store_true",
                       help="interpret input angles as degrees")

    p = sub.add_parser("simulate", help="forward-map a polarizer configuration")
    common(p)
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("synthesize", help="design polarizers for a target state")
    common(p)
    p.set_defaults(handler=_cmd_synthesize)

    p = sub.add_parser("classify", help="orientation-count vs state classification (n=3)")
    common(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("pyramid", help="dump the cascade's intermediate states")
    common(p)
    p.set_defaults(handler=_cmd_pyramid)

    p = sub.add_parser("fidelity", help="Monte-Carlo detection-window fidelity")
    common(p)
    p.add_argument("--samples", type=int, default=None,
                   help="override the sample count from the config")
    p.add_argument("--seed", type=int, default=None,
                   help="override the random seed from the config")
    p.add_argument("--sweep", default=None, metavar="START:STOP:COUNT",
                   help="emit a CSV over window halfangles instead of a record")
    p.set_defaults(handler=_cmd_fidelity)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ConfigError, WrongArityError, TooLargeError) as exc:
        print(f"dickesim: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ClassDisagreementError as exc:
        print(f"dickesim: concordance violation: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except DickesimError as exc:
        print(f"dickesim: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
