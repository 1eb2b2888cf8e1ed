"""Command-line front end.

Subcommands:

    ground        single-point solve, JSON report
    sweep         coupling sweep, one table row per g
    wavefunction  position-space components on a grid
    potentials    adiabatic potential curves
    crossover     P_n(g) tables per Omega with threshold crossings

Common flags: --omega --Omega --g | --g-over-gc --pairs --seed --out
--format, plus an optional key=value config file (--config) whose entries
fill in any flag not given explicitly.  Exit codes: 0 success, 2 usage
error, 3 numeric or convergence failure.  Tables use 17 significant
digits so repeated runs with the same seed are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import ansatz as _ansatz
from . import ed as _ed
from . import observables as _obs
from . import optimizer as _opt
from .errors import (
    ConvergenceError,
    NumericError,
    ParameterError,
    Rabi2Error,
    TruncationError,
)
from .model import ModelParams, derive

_ENGINES = ("vm", "ed", "both")


# ---------------------------------------------------------------- helpers


def _fmt(value):
    """One CSV cell: blank for missing, 17 significant digits for floats."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_text(out, text):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as handle:
            handle.write(text)


def _csv_text(columns, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row.get(name)) for name in columns])
    return buf.getvalue()


def _json_text(obj):
    return json.dumps(obj, indent=2) + "\n"


def _read_config(path):
    """Plain key=value lines; '#' comments and blank lines are ignored."""
    entries = {}
    try:
        with open(path, "r") as handle:
            for lineno, raw in enumerate(handle, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ParameterError(
                        f"{path}:{lineno}: expected key=value, got {line!r}"
                    )
                key, value = line.split("=", 1)
                entries[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise ParameterError(f"cannot read config file {path}: {exc}") from exc
    return entries


def _as_float(text):
    try:
        return float(text)
    except ValueError as exc:
        raise ParameterError(f"expected a number, got {text!r}") from exc


def _as_int(text):
    try:
        return int(text)
    except ValueError as exc:
        raise ParameterError(f"expected an integer, got {text!r}") from exc


def _as_bool(text):
    lowered = text.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ParameterError(f"expected a boolean, got {text!r}")


def _as_str(text):
    return text


def _as_floats(text):
    return [_as_float(part) for part in text.replace(",", " ").split()]


def _resolve(args, schema):
    """Flag wins, then config-file entry, then built-in default."""
    cfg = _read_config(args.config) if args.config else {}
    out = {}
    for name, (default, conv) in schema.items():
        value = getattr(args, name)
        if value is None and name in cfg:
            value = conv(cfg[name])
        out[name] = default if value is None else value
    return out


def _resolve_g(omega, Omega, g, g_over_gc):
    if g is not None and g_over_gc is not None:
        raise ParameterError("give either --g or --g-over-gc, not both")
    if g_over_gc is not None:
        g_c = derive(ModelParams(omega, Omega, 0.0)).g_c
        if g_c == 0.0:
            raise ParameterError("--g-over-gc is undefined for Omega = 0 (g_c = 0)")
        return float(g_over_gc) * g_c
    return 0.0 if g is None else float(g)


def _resolve_range(omega, Omega, g_range, gc_range):
    if g_range is not None and gc_range is not None:
        raise ParameterError("give either --g-range or --g-over-gc-range, not both")
    chosen, relative = (g_range, False) if g_range is not None else (gc_range, True)
    if chosen is None:
        raise ParameterError("provide --g-range or --g-over-gc-range (start stop count)")
    if len(chosen) != 3:
        raise ParameterError("a range takes exactly three values: start stop count")
    start, stop, count_f = float(chosen[0]), float(chosen[1]), float(chosen[2])
    if count_f != int(count_f):
        raise ParameterError(f"range count must be an integer, got {count_f}")
    count = int(count_f)
    if count < 2:
        raise ParameterError(f"range count must be >= 2, got {count}")
    if not (0.0 <= start <= stop):
        raise ParameterError(f"need 0 <= start <= stop, got start={start}, stop={stop}")
    values = np.linspace(start, stop, count)
    if relative:
        g_c = derive(ModelParams(omega, Omega, 0.0)).g_c
        if g_c == 0.0:
            raise ParameterError("--g-over-gc-range is undefined for Omega = 0 (g_c = 0)")
        values = values * g_c
    return [float(v) for v in values]


def _grid(x_range, points, g_prime):
    if x_range is None:
        half = max(4.0, 2.0 * g_prime + 3.0)
        x_range = (-half, half)
    lo, hi = float(x_range[0]), float(x_range[1])
    if not lo < hi:
        raise ParameterError(f"need x_min < x_max, got {lo}, {hi}")
    points = int(points)
    if points < 2:
        raise ParameterError(f"points must be >= 2, got {points}")
    x = np.linspace(lo, hi, points)
    if (hi - lo) / (points - 1) > 0.25:
        print(
            "warning: grid spacing above 0.25 may undersample the packets",
            file=sys.stderr,
        )
    return x


# ---------------------------------------------------------------- sweep core


def _sweep_task(task):
    """One sweep row; runs in a worker process when --workers > 1."""
    omega, Omega, g, n_pairs, engine, seed, n_starts, max_iters, ed_tol = task
    params = ModelParams(omega=omega, Omega=Omega, g=g)
    g_c = derive(params).g_c
    row = {
        "omega": omega,
        "Omega": Omega,
        "g": g,
        "g_over_gc": g / g_c if g_c > 0.0 else None,
        "status": "ok",
    }
    vm = ed = None
    try:
        if engine in ("vm", "both"):
            config = _opt.OptimConfig(
                n_pairs=n_pairs, n_starts=n_starts, seed=seed, max_iters=max_iters
            )
            result = _opt.minimize(params, config)
            vm = _obs.from_ansatz(result.ansatz, params).to_dict()
        if engine in ("ed", "both"):
            ground = _ed.converged_ground(params, tol=ed_tol)
            ed = _obs.from_fock(ground, params).to_dict()
    except Rabi2Error as exc:
        row["status"] = f"error: {type(exc).__name__}: {exc}"
    if engine in ("vm", "both"):
        for name in _obs.FIELD_NAMES:
            row[f"vm_{name}"] = vm[name] if vm else None
    if engine in ("ed", "both"):
        for name in _obs.FIELD_NAMES:
            row[f"ed_{name}"] = ed[name] if ed else None
    if engine == "both":
        for name in _obs.FIELD_NAMES:
            row[f"err_{name}"] = vm[name] - ed[name] if vm and ed else None
    return row


def sweep_columns(engine):
    """Stable column order for sweep tables."""
    cols = ["omega", "Omega", "g", "g_over_gc"]
    if engine in ("vm", "both"):
        cols += [f"vm_{name}" for name in _obs.FIELD_NAMES]
    if engine in ("ed", "both"):
        cols += [f"ed_{name}" for name in _obs.FIELD_NAMES]
    if engine == "both":
        cols += [f"err_{name}" for name in _obs.FIELD_NAMES]
    return cols + ["status"]


def run_sweep(
    omega,
    Omega,
    g_values,
    n_pairs=2,
    engine="both",
    seed=0,
    n_starts=4,
    max_iters=2000,
    ed_tol=1e-10,
    workers=1,
):
    """Evaluate one row per g; returns the rows sweep/CSV would emit.

    Row i uses seed + i so rows are independent of the grid around them;
    results are identical for any worker count.
    """
    if engine not in _ENGINES:
        raise ParameterError(f"engine must be one of {_ENGINES}, got {engine!r}")
    tasks = [
        (omega, Omega, float(g), n_pairs, engine, seed + i, n_starts, max_iters, ed_tol)
        for i, g in enumerate(g_values)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_task, tasks))
    return [_sweep_task(t) for t in tasks]


# ---------------------------------------------------------------- subcommands

_MODEL_SCHEMA = {
    "omega": (1.0, _as_float),
    "Omega": (1.0, _as_float),
}
_VM_SCHEMA = {
    "pairs": (2, _as_int),
    "seed": (0, _as_int),
    "starts": (4, _as_int),
    "max_iters": (2000, _as_int),
}
_OUT_SCHEMA = {
    "out": (None, _as_str),
}


def _engine_conv(text):
    if text not in _ENGINES:
        raise ParameterError(f"engine must be one of {_ENGINES}, got {text!r}")
    return text


def _format_conv(text):
    if text not in ("csv", "json"):
        raise ParameterError(f"format must be csv or json, got {text!r}")
    return text


def cmd_ground(args):
    schema = dict(_MODEL_SCHEMA)
    schema.update(
        g=(None, _as_float),
        g_over_gc=(None, _as_float),
        compare=(False, _as_bool),
        ed_tol=(1e-10, _as_float),
        format=("json", _format_conv),
        **_VM_SCHEMA,
        **_OUT_SCHEMA,
    )
    opt = _resolve(args, schema)
    if opt["format"] != "json":
        raise ParameterError("ground emits a JSON report; use --format json")
    g = _resolve_g(opt["omega"], opt["Omega"], opt["g"], opt["g_over_gc"])
    params = ModelParams(omega=opt["omega"], Omega=opt["Omega"], g=g)
    scales = derive(params)
    config = _opt.OptimConfig(
        n_pairs=opt["pairs"],
        n_starts=opt["starts"],
        seed=opt["seed"],
        max_iters=opt["max_iters"],
    )
    result = _opt.minimize(params, config)
    vm_obs = _obs.from_ansatz(result.ansatz, params)
    doc = {
        "model": {"omega": params.omega, "Omega": params.Omega, "g": params.g},
        "g_over_gc": params.g / scales.g_c if scales.g_c > 0.0 else None,
        "n_pairs": opt["pairs"],
        "seed": opt["seed"],
        "vm": {
            "energy": result.energy,
            "converged": result.converged,
            "iterations": result.iterations,
            "start_index": result.start_index,
            "observables": vm_obs.to_dict(),
            "ansatz": _ansatz.as_document(result.ansatz, params),
        },
    }
    if opt["compare"]:
        ground = _ed.converged_ground(params, tol=opt["ed_tol"])
        ed_obs = _obs.from_fock(ground, params)
        vm_dict, ed_dict = vm_obs.to_dict(), ed_obs.to_dict()
        doc["ed"] = {
            "n_max": ground.n_max,
            "energy": ground.energy,
            "observables": ed_dict,
        }
        doc["error"] = {name: vm_dict[name] - ed_dict[name] for name in _obs.FIELD_NAMES}
    _write_text(opt["out"], _json_text(doc))
    return 0


def cmd_sweep(args):
    schema = dict(_MODEL_SCHEMA)
    schema.update(
        g_range=(None, _as_floats),
        g_over_gc_range=(None, _as_floats),
        engine=("both", _engine_conv),
        ed_tol=(1e-10, _as_float),
        workers=(1, _as_int),
        format=("csv", _format_conv),
        **_VM_SCHEMA,
        **_OUT_SCHEMA,
    )
    opt = _resolve(args, schema)
    g_values = _resolve_range(
        opt["omega"], opt["Omega"], opt["g_range"], opt["g_over_gc_range"]
    )
    if opt["workers"] < 1:
        raise ParameterError(f"workers must be >= 1, got {opt['workers']}")
    rows = run_sweep(
        opt["omega"],
        opt["Omega"],
        g_values,
        n_pairs=opt["pairs"],
        engine=opt["engine"],
        seed=opt["seed"],
        n_starts=opt["starts"],
        max_iters=opt["max_iters"],
        ed_tol=opt["ed_tol"],
        workers=opt["workers"],
    )
    columns = sweep_columns(opt["engine"])
    if opt["format"] == "csv":
        text = _csv_text(columns, rows)
    else:
        text = _json_text([{name: row.get(name) for name in columns} for row in rows])
    _write_text(opt["out"], text)
    return 0 if all(row["status"] == "ok" for row in rows) else 3


def cmd_wavefunction(args):
    schema = dict(_MODEL_SCHEMA)
    schema.update(
        g=(None, _as_float),
        g_over_gc=(None, _as_float),
        engine=("ed", _engine_conv),
        ed_tol=(1e-10, _as_float),
        x_range=(None, _as_floats),
        points=(401, _as_int),
        format=("csv", _format_conv),
        **_VM_SCHEMA,
        **_OUT_SCHEMA,
    )
    opt = _resolve(args, schema)
    if opt["engine"] == "both":
        raise ParameterError("wavefunction takes --engine vm or ed")
    g = _resolve_g(opt["omega"], opt["Omega"], opt["g"], opt["g_over_gc"])
    params = ModelParams(omega=opt["omega"], Omega=opt["Omega"], g=g)
    x = _grid(opt["x_range"], opt["points"], derive(params).g_prime)
    if opt["engine"] == "ed":
        ground = _ed.converged_ground(params, tol=opt["ed_tol"])
        comps = _ed.position_components(ground, x)
    else:
        config = _opt.OptimConfig(
            n_pairs=opt["pairs"],
            n_starts=opt["starts"],
            seed=opt["seed"],
            max_iters=opt["max_iters"],
        )
        result = _opt.minimize(params, config)
        comps = np.vstack(
            [_ansatz.component(result.ansatz, i, x) for i in (1, 2, 3, 4)]
        )
    names = ("psi1", "psi2", "psi3", "psi4")
    if opt["format"] == "csv":
        rows = [
            {"x": x[j], **{name: comps[i, j] for i, name in enumerate(names)}}
            for j in range(len(x))
        ]
        text = _csv_text(["x"] + list(names), rows)
    else:
        doc = {"x": [float(v) for v in x]}
        doc.update({name: [float(v) for v in comps[i]] for i, name in enumerate(names)})
        text = _json_text(doc)
    _write_text(opt["out"], text)
    return 0


def cmd_potentials(args):
    schema = dict(_MODEL_SCHEMA)
    schema.update(
        g=(None, _as_float),
        g_over_gc=(None, _as_float),
        x_range=(None, _as_floats),
        points=(401, _as_int),
        format=("csv", _format_conv),
        **_OUT_SCHEMA,
    )
    opt = _resolve(args, schema)
    g = _resolve_g(opt["omega"], opt["Omega"], opt["g"], opt["g_over_gc"])
    params = ModelParams(omega=opt["omega"], Omega=opt["Omega"], g=g)
    x = _grid(opt["x_range"], opt["points"], derive(params).g_prime)
    curves = _obs.potential_curves(params, x)
    names = ("V_up_up", "V_up_down", "V_down_up", "V_down_down")
    if opt["format"] == "csv":
        rows = [
            {"x": x[j], **{name: curves[i][j] for i, name in enumerate(names)}}
            for j in range(len(x))
        ]
        text = _csv_text(["x"] + list(names), rows)
    else:
        doc = {"x": [float(v) for v in x]}
        doc.update({name: [float(v) for v in curves[i]] for i, name in enumerate(names)})
        text = _json_text(doc)
    _write_text(opt["out"], text)
    return 0


def cmd_crossover(args):
    schema = dict(_MODEL_SCHEMA)
    del schema["Omega"]
    schema.update(
        Omegas=([0.1, 1.0, 2.0, 10.0], _as_floats),
        g_range=([0.0, 3.0, 61], _as_floats),
        threshold=(0.1, _as_float),
        ed_tol=(1e-10, _as_float),
        format=("csv", _format_conv),
        **_OUT_SCHEMA,
    )
    opt = _resolve(args, schema)
    g_values = _resolve_range(opt["omega"], 1.0, opt["g_range"], None)
    blocks = []
    for Omega in opt["Omegas"]:
        rows = []
        p3 = []
        for g in g_values:
            params = ModelParams(omega=opt["omega"], Omega=Omega, g=g)
            ground = _ed.converged_ground(params, tol=opt["ed_tol"])
            obs = _obs.from_fock(ground, params)
            p3.append(obs.probs[2])
            rows.append(
                {
                    "g": g,
                    "P1": obs.probs[0],
                    "P2": obs.probs[1],
                    "P3": obs.probs[2],
                    "P4": obs.probs[3],
                }
            )
        crossing = _obs.crossover_point(g_values, p3, threshold=opt["threshold"])
        blocks.append({"Omega": Omega, "crossover_g": crossing, "rows": rows})
    if opt["format"] == "csv":
        columns = ["omega", "Omega", "g", "P1", "P2", "P3", "P4", "crossover_g"]
        flat = []
        for block in blocks:
            for row in block["rows"]:
                flat.append(
                    {
                        "omega": opt["omega"],
                        "Omega": block["Omega"],
                        "crossover_g": block["crossover_g"],
                        **row,
                    }
                )
        text = _csv_text(columns, flat)
    else:
        text = _json_text(
            {"omega": opt["omega"], "threshold": opt["threshold"], "blocks": blocks}
        )
    _write_text(opt["out"], text)
    return 0


# ---------------------------------------------------------------- parser


def _add_common(p, with_g=True, vm=True):
    p.add_argument("--omega", type=float, default=None, help="cavity frequency")
    p.add_argument("--Omega", type=float, default=None, help="qubit splitting")
    if with_g:
        p.add_argument("--g", type=float, default=None, help="coupling strength")
        p.add_argument(
            "--g-over-gc", type=float, default=None, help="coupling in units of g_c"
        )
    if vm:
        p.add_argument("--pairs", type=int, default=None, help="packet pairs N")
        p.add_argument("--seed", type=int, default=None, help="optimizer seed")
        p.add_argument("--starts", type=int, default=None, help="optimizer starts")
        p.add_argument("--max-iters", type=int, default=None, help="iteration budget")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--config", default=None, help="key=value config file")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="rabi2",
        description="Ground states of the two-qubit quantum Rabi model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ground", help="single-point solve (JSON report)")
    _add_common(p)
    p.add_argument("--compare", action="store_true", default=None,
                   help="also run the exact-diagonalization engine")
    p.add_argument("--ed-tol", type=float, default=None, help="ED energy tolerance")
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("sweep", help="coupling sweep table")
    _add_common(p, with_g=False)
    p.add_argument("--g-range", nargs=3, type=float, default=None,
                   metavar=("START", "STOP", "COUNT"))
    p.add_argument("--g-over-gc-range", nargs=3, type=float, default=None,
                   metavar=("START", "STOP", "COUNT"))
    p.add_argument("--engine", choices=_ENGINES, default=None)
    p.add_argument("--ed-tol", type=float, default=None, help="ED energy tolerance")
    p.add_argument("--workers", type=int, default=None, help="parallel row workers")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("wavefunction", help="position-space components")
    _add_common(p)
    p.add_argument("--engine", choices=("vm", "ed"), default=None)
    p.add_argument("--ed-tol", type=float, default=None, help="ED energy tolerance")
    p.add_argument("--x-range", nargs=2, type=float, default=None,
                   metavar=("MIN", "MAX"))
    p.add_argument("--points", type=int, default=None, help="grid points")
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("potentials", help="adiabatic potential curves")
    _add_common(p, vm=False)
    p.add_argument("--x-range", nargs=2, type=float, default=None,
                   metavar=("MIN", "MAX"))
    p.add_argument("--points", type=int, default=None, help="grid points")
    p.set_defaults(func=cmd_potentials)

    p = sub.add_parser("crossover", help="P_n(g) tables with threshold crossings")
    p.add_argument("--omega", type=float, default=None, help="cavity frequency")
    p.add_argument("--Omegas", nargs="+", type=float, default=None,
                   help="qubit splittings, one table block each")
    p.add_argument("--g-range", nargs=3, type=float, default=None,
                   metavar=("START", "STOP", "COUNT"))
    p.add_argument("--threshold", type=float, default=None,
                   help="P3 crossing threshold")
    p.add_argument("--ed-tol", type=float, default=None, help="ED energy tolerance")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--config", default=None, help="key=value config file")
    p.set_defaults(func=cmd_crossover)

    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Rabi2Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry():
    raise SystemExit(main())
