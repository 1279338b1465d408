"""Command line interface: fit/predict, simulate, and verify.

All commands are driven by a JSON config file; a few common I/O settings
can be overridden with flags.  Angles cross the boundary in radians unless
``--degrees`` (or ``"degrees": true`` in the ``io`` block) is set, in which
case every user-facing angle (CSV columns, ``tau``, prediction points) is
in degrees.  Numbers are written with 17 significant digits so values
round-trip exactly through text.

Exit status is 0 on success and 1 on any error; ``verify`` also exits 1
when a check fails.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .circle import TWO_PI, CardinalBasis
from .covariance import IntrinsicCovariance, SpectralModel, spline_covariance
from .errors import CircKrigError
from .kriging import Dataset, fit_universal
from .simulate import simulate_brownian_bridge, simulate_irf
from .verification import run_verification

__all__ = ["main"]

_SPLINE_KERNELS = {"spline-m1": 1, "spline-m2": 2}


class _CommandError(Exception):
    """User-facing configuration or input error."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except json.JSONDecodeError as exc:
        raise _CommandError(f"config {path} is not valid JSON: {exc}")
    if not isinstance(cfg, dict):
        raise _CommandError(f"config {path} must be a JSON object")
    return cfg


def _read_series_csv(path: str, degrees: bool) -> tuple[np.ndarray,
                                                        np.ndarray]:
    """Read (angle, value) rows; extra columns are ignored."""
    angles = []
    values = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise _CommandError(f"{path}: file is empty")
        missing = {"angle", "value"} - set(reader.fieldnames)
        if missing:
            raise _CommandError(
                f"{path}: missing column(s) {sorted(missing)}; "
                f"found {reader.fieldnames}"
            )
        for lineno, row in enumerate(reader, start=2):
            for col, dest in (("angle", angles), ("value", values)):
                raw = row.get(col)
                if raw is None or raw.strip() == "":
                    raise _CommandError(
                        f"{path}: line {lineno}: missing {col}")
                try:
                    val = float(raw)
                except ValueError:
                    raise _CommandError(
                        f"{path}: line {lineno}: cannot parse {col} "
                        f"value {raw!r}")
                if not np.isfinite(val):
                    raise _CommandError(
                        f"{path}: line {lineno}: {col} is not finite")
                dest.append(val)
    if not angles:
        raise _CommandError(f"{path}: no data rows")
    ang = np.asarray(angles)
    if degrees:
        ang = np.radians(ang)
    return ang, np.asarray(values)


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _echo_config(output: str, resolved: dict) -> str:
    echo_path = str(output) + ".config.json"
    with open(echo_path, "w", encoding="utf-8") as fh:
        json.dump(resolved, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return echo_path


def _angles_out(angles: np.ndarray, degrees: bool) -> np.ndarray:
    return np.degrees(angles) if degrees else angles


def _build_covariance(model_cfg: dict) -> IntrinsicCovariance:
    kernel = model_cfg.get("kernel")
    spectrum = model_cfg.get("spectrum")
    if (kernel is None) == (spectrum is None):
        raise _CommandError(
            "model block needs exactly one of 'kernel' or 'spectrum'")
    if kernel is not None:
        if kernel in _SPLINE_KERNELS:
            return spline_covariance(_SPLINE_KERNELS[kernel])
        raise _CommandError(
            f"unknown kernel {kernel!r} for fitting; pick from "
            f"{sorted(_SPLINE_KERNELS)} or give a spectrum")
    return IntrinsicCovariance(SpectralModel.from_config(spectrum))


def cmd_fit(args) -> int:
    cfg = _load_config(args.config)
    model_cfg = cfg.get("model")
    if not isinstance(model_cfg, dict):
        raise _CommandError("config needs a 'model' block")
    io_cfg = cfg.get("io", {})
    degrees = bool(args.degrees or io_cfg.get("degrees", False))
    data_path = args.data or io_cfg.get("data")
    output = args.output or io_cfg.get("output")
    if not data_path or not output:
        raise _CommandError("fit needs a data path and an output path "
                            "(flags or the io block)")

    covariance = _build_covariance(model_cfg)
    nugget = float(cfg.get("nugget", 0.0))
    basis_name = cfg.get("basis", "trig")
    tau = cfg.get("tau", "equispaced")
    if basis_name == "cardinal":
        if tau == "equispaced":
            basis = CardinalBasis(covariance.kappa)
        else:
            nodes = np.asarray(tau, dtype=float)
            if degrees:
                nodes = np.radians(nodes)
            basis = CardinalBasis(covariance.kappa, nodes)
    elif basis_name == "trig":
        if tau != "equispaced":
            raise _CommandError(
                "custom tau nodes require the 'cardinal' basis")
        basis = "trig"
    else:
        raise _CommandError(f"unknown basis {basis_name!r}")

    angles, values = _read_series_csv(data_path, degrees)
    model = fit_universal(Dataset(angles, values), covariance, nugget, basis)

    points_cfg = io_cfg.get("prediction_points")
    if points_cfg is not None:
        pred_pts = np.asarray(points_cfg, dtype=float)
        if degrees:
            pred_pts = np.radians(pred_pts)
    else:
        grid_size = int(io_cfg.get("grid_size", 256))
        pred_pts = TWO_PI * np.arange(grid_size) / grid_size
    vals, variances = model.predict_with_variance(pred_pts)
    vals = np.atleast_1d(vals)
    variances = np.atleast_1d(variances)

    shown = _angles_out(pred_pts, degrees)
    rows = ((_fmt(a), _fmt(v), _fmt(s2))
            for a, v, s2 in zip(shown, vals, variances))
    _write_csv(output, ["angle", "prediction", "kriging_variance"], rows)

    resolved = {
        "command": "fit",
        "model": ({"kernel": model_cfg["kernel"]} if "kernel" in model_cfg
                  else {"spectrum": covariance.model.to_config()}),
        "nugget": nugget,
        "basis": basis_name,
        "tau": tau,
        "io": {
            "data": str(data_path),
            "output": str(output),
            "degrees": degrees,
            **({"prediction_points": list(map(float, points_cfg))}
               if points_cfg is not None
               else {"grid_size": int(io_cfg.get("grid_size", 256))}),
        },
    }
    echo = _echo_config(output, resolved)
    print(f"fit: {model.data.n} observations, {pred_pts.size} predictions "
          f"-> {output} (config echo {echo})")
    return 0


def cmd_simulate(args) -> int:
    cfg = _load_config(args.config)
    model_cfg = cfg.get("model")
    if not isinstance(model_cfg, dict):
        raise _CommandError("config needs a 'model' block")
    sim_cfg = cfg.get("simulate", {})
    io_cfg = cfg.get("io", {})
    degrees = bool(args.degrees or io_cfg.get("degrees", False))
    output = args.output or io_cfg.get("output")
    if not output:
        raise _CommandError("simulate needs an output path")
    n_real = int(sim_cfg.get("n_realizations", 1))
    grid_size = int(sim_cfg.get("grid_size", 512))
    seed = int(sim_cfg.get("seed", 0))
    low_order = sim_cfg.get("low_order")

    kernel = model_cfg.get("kernel")
    if kernel == "brownian-bridge":
        if low_order is not None:
            raise _CommandError(
                "low_order only applies to spectral models")
        reals = simulate_brownian_bridge(grid_size, n_real, seed)
        model_echo = {"kernel": kernel}
    else:
        if kernel in _SPLINE_KERNELS:
            # Named kernels truncate at the finest frequency the grid
            # resolves.
            model = SpectralModel.power_law(
                1, 2.0, 2.0 * _SPLINE_KERNELS[kernel],
                n_max=(grid_size - 1) // 2)
        elif kernel is None and "spectrum" in model_cfg:
            model = SpectralModel.from_config(model_cfg["spectrum"])
        else:
            raise _CommandError(
                f"unknown kernel {kernel!r} for simulation; pick from "
                f"{sorted(_SPLINE_KERNELS) + ['brownian-bridge']} or give "
                "a spectrum")
        reals = simulate_irf(model, n_real, grid_size, seed,
                             low_order=low_order)
        model_echo = ({"kernel": kernel} if kernel is not None
                      else {"spectrum": model.to_config()})

    def rows():
        for r in reals:
            shown = _angles_out(r.grid, degrees)
            for a, v in zip(shown, r.values):
                yield _fmt(a), _fmt(v), str(r.index)

    _write_csv(output, ["angle", "value", "realization"], rows())
    resolved = {
        "command": "simulate",
        "model": model_echo,
        "simulate": {"n_realizations": n_real, "grid_size": grid_size,
                     "seed": seed, "low_order": low_order},
        "io": {"output": str(output), "degrees": degrees},
    }
    echo = _echo_config(output, resolved)
    print(f"simulate: {n_real} realizations on a {grid_size}-point grid "
          f"-> {output} (config echo {echo})")
    return 0


def cmd_verify(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    verify_cfg = cfg.get("verify", {})
    io_cfg = cfg.get("io", {})
    output = args.output or io_cfg.get("output", "verify_report.json")

    report = run_verification(verify_cfg)
    for result in report.results:
        print(result.line())
    report.to_json(output)
    resolved = {"command": "verify", "verify": verify_cfg,
                "io": {"output": str(output)}}
    _echo_config(output, resolved)
    status = "PASS" if report.passed else "FAIL"
    print(f"verify: {status} ({len(report.results)} checks) -> {output}")
    return 0 if report.passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circkrig",
        description="Kriging, simulation, and verification for intrinsic "
                    "random functions on the circle.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit a kriging model and predict")
    p_fit.add_argument("--config", required=True, help="JSON config path")
    p_fit.add_argument("--data", help="override io.data (CSV angle,value)")
    p_fit.add_argument("--output", help="override io.output (CSV)")
    p_fit.add_argument("--degrees", action="store_true",
                       help="angles in degrees on input and output")
    p_fit.set_defaults(func=cmd_fit)

    p_sim = sub.add_parser("simulate", help="simulate realizations")
    p_sim.add_argument("--config", required=True, help="JSON config path")
    p_sim.add_argument("--output", help="override io.output (CSV)")
    p_sim.add_argument("--degrees", action="store_true",
                       help="angles in degrees on output")
    p_sim.set_defaults(func=cmd_simulate)

    p_ver = sub.add_parser("verify", help="run the verification suites")
    p_ver.add_argument("--config", help="JSON config path (optional)")
    p_ver.add_argument("--output", help="override io.output (JSON report)")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (_CommandError, CircKrigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
