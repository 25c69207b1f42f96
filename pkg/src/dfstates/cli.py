"""Command-line front end.

Subcommands: state, moment, witness, qgrid, figure, selftest.  All numeric
options may also come from a plain key=value config file via --config;
explicit flags win over the file.  Exit codes: 0 success, 2 usage error,
3 convergence failure, 4 I/O error (selftest reports failure with 1).
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConvergenceError, DfstatesError
from .husimi import default_ranges, q_grid, q_min_scan, render_qgrid, save_qgrid
from .moments import DEFAULT_CONTROL, SeriesControl
from .presets import PRESET_IDS, figure_preset
from .selftest import run_selftest
from .states import Family, StateSpec, build_state, photon_number_distribution, save_amplitudes
from .sweep import SweepConfig, emit, render, run_sweep
from .witnesses import WITNESS_NAMES

_USAGE_EXIT = 2
_CONVERGENCE_EXIT = 3
_IO_EXIT = 4

_DEFAULT_ORDER = {
    "MandelQ": "0",
    "AgarwalTara": "0",
    "Antibunching": "2",
    "HOSPS": "2",
    "HongMandel": "2",
    "Klyshko": "0",
}


class UsageError(Exception):
    pass


def _parse_range(text: str, label: str) -> tuple[float, float, int]:
    """'x' -> (x, x, 1); 'a:b:steps' -> (a, b, steps)."""
    parts = str(text).split(":")
    try:
        if len(parts) == 1:
            v = float(parts[0])
            return (v, v, 1)
        if len(parts) == 3:
            return (float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise UsageError(f"bad {label} value {text!r}: {exc}") from None
    raise UsageError(f"{label} expects 'x' or 'a:b:steps', got {text!r}")


def _parse_int_list(text: str, label: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in str(text).split(","))
    except ValueError as exc:
        raise UsageError(f"bad {label} value {text!r}: {exc}") from None


def _parse_grid(text: str) -> tuple[float, float, int, float, float, int]:
    halves = str(text).split(",")
    if len(halves) != 2:
        raise UsageError(f"--grid expects 're0:re1:n,im0:im1:m', got {text!r}")
    re = _parse_range(halves[0], "grid re")
    im = _parse_range(halves[1], "grid im")
    return re + im


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _resolve(args: argparse.Namespace, key: str, default=None):
    """Flag if given, else config-file value, else default."""
    value = getattr(args, key, None)
    if value is not None:
        return value
    cfg = getattr(args, "_config_values", {})
    if key in cfg:
        return cfg[key]
    return default


def _series_control(args) -> SeriesControl:
    rel_tol = _resolve(args, "rel_tol", DEFAULT_CONTROL.rel_tol)
    max_terms = _resolve(args, "max_terms", DEFAULT_CONTROL.max_terms)
    try:
        return SeriesControl(rel_tol=float(rel_tol), max_terms=int(max_terms))
    except (ValueError, DfstatesError) as exc:
        raise UsageError(str(exc)) from None


def _single_state_spec(args, require_alpha: bool = True) -> StateSpec:
    family = _resolve(args, "family", "padfs")
    photons = _parse_int_list(_resolve(args, "photons", "1"), "--photons")
    fock = _parse_int_list(_resolve(args, "n", "0"), "--n")
    amag_raw = _resolve(args, "alpha_mag")
    if amag_raw is None:
        if require_alpha:
            raise UsageError("--alpha-mag is required for this subcommand")
        amag_raw = "0"
    amag = _parse_range(amag_raw, "--alpha-mag")
    phase = _parse_range(_resolve(args, "alpha_phase", "0"), "--alpha-phase")
    if len(photons) != 1 or len(fock) != 1 or amag[2] != 1 or phase[2] != 1:
        raise UsageError("this subcommand takes a single state, not parameter lists")
    try:
        return StateSpec(Family(family), photons[0], fock[0], amag[0], phase[0])
    except (ValueError, DfstatesError) as exc:
        raise UsageError(str(exc)) from None


def _sweep_config(args, kind: str) -> SweepConfig:
    family = _resolve(args, "family", "padfs")
    photons = _parse_int_list(_resolve(args, "photons", "1"), "--photons")
    fock = _parse_int_list(_resolve(args, "n", "0"), "--n")
    amag = _parse_range(_resolve(args, "alpha_mag", "0:5:101"), "--alpha-mag")
    phase_text = str(_resolve(args, "alpha_phase", "0"))
    phase_rng = _parse_range(phase_text, "--alpha-phase")
    phase = phase_rng[0] if phase_rng[2] == 1 else phase_rng
    default_order = _DEFAULT_ORDER.get(kind, "0")
    order = _parse_int_list(_resolve(args, "order", default_order), "--order")
    q = int(_resolve(args, "q", 0))
    r = int(_resolve(args, "r", 0))
    try:
        return SweepConfig(
            witness=kind,
            family=Family(family),
            photons_list=photons,
            fock_list=fock,
            alpha_mag=amag,
            alpha_phase=phase,
            order=order,
            q=q,
            r=r,
            fmt=_resolve(args, "format", "csv"),
        )
    except (ValueError, DfstatesError) as exc:
        raise UsageError(str(exc)) from None


def _write_table(table, args) -> None:
    fmt = _resolve(args, "format", "csv")
    out = _resolve(args, "out")
    if out is None:
        sys.stdout.write(render(table, fmt))
    else:
        emit(table, fmt, out)
        print(f"wrote {len(table.rows)} rows to {out}")


def _cmd_state(args) -> int:
    spec = _single_state_spec(args)
    ctrl = _series_control(args)  # validates flags even though build is direct
    del ctrl
    state = build_state(spec)
    out = _resolve(args, "out")
    if out is not None:
        save_amplitudes(state, out)
        print(f"wrote {state.dim} amplitudes to {out}")
        return 0
    probs = photon_number_distribution(state)
    print(f"family={spec.family.value} photons={spec.photons} n={spec.fock_n} "
          f"alpha_mag={spec.alpha_mag} alpha_phase={spec.alpha_phase}")
    print(f"dim={state.dim} tail_bound={state.tail_bound:.3e}")
    top = sorted(range(state.dim), key=lambda k: -probs[k])[:8]
    for k in sorted(top):
        if probs[k] > 1e-12:
            print(f"  p({k}) = {probs[k]:.12f}")
    print("use --out PATH for the full amplitude CSV")
    return 0


def _cmd_moment(args) -> int:
    config = _sweep_config(args, "moment")
    table = run_sweep(config, _series_control(args))
    _write_table(table, args)
    return 0


def _cmd_witness(args) -> int:
    name = _resolve(args, "witness")
    if name is None:
        raise UsageError(f"--witness is required; choose from {', '.join(WITNESS_NAMES)}")
    if name not in WITNESS_NAMES:
        raise UsageError(f"unknown witness {name!r}; choose from {', '.join(WITNESS_NAMES)}")
    config = _sweep_config(args, name)
    table = run_sweep(config, _series_control(args))
    _write_table(table, args)
    return 0


def _cmd_qgrid(args) -> int:
    spec = _single_state_spec(args)
    ctrl = _series_control(args)
    grid_raw = _resolve(args, "grid")
    if grid_raw is None:
        re_range, im_range = default_ranges(spec)
    else:
        g = _parse_grid(grid_raw)
        re_range, im_range = (g[0], g[1], int(g[2])), (g[3], g[4], int(g[5]))
    try:
        grid = q_grid(spec, re_range, im_range, ctrl)
    except (ValueError, DfstatesError) as exc:
        if isinstance(exc, ConvergenceError):
            raise
        raise UsageError(str(exc)) from None
    fmt = _resolve(args, "format", "csv")
    out = _resolve(args, "out")
    if out is None:
        sys.stdout.write(render_qgrid(grid, fmt, spec))
    else:
        save_qgrid(grid, out, fmt, spec)
        beta_min, qmin = q_min_scan(grid)
        print(f"wrote {grid.values.size} grid points to {out}")
        print(f"q_min = {qmin:.6e} at beta = {beta_min.real:+.4f}{beta_min.imag:+.4f}j")
    return 0


def _cmd_figure(args) -> int:
    preset_id = args.preset
    if preset_id not in PRESET_IDS:
        raise UsageError(f"unknown preset {preset_id!r}; known ids: {', '.join(PRESET_IDS)}")
    fmt = _resolve(args, "format", "csv")
    table = figure_preset(preset_id, _series_control(args))
    out = _resolve(args, "out", f"{preset_id}.{fmt}")
    emit(table, fmt, out)
    print(f"wrote {len(table.rows)} rows to {out}")
    return 0


def _cmd_selftest(args) -> int:
    ok, report = run_selftest(_series_control(args))
    print(report)
    return 0 if ok else 1


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=["padfs", "psdfs"])
    parser.add_argument("--photons", help="added/subtracted photon count (comma list in sweeps)")
    parser.add_argument("--n", help="starting Fock level (comma list in sweeps)")
    parser.add_argument("--alpha-mag", dest="alpha_mag", help="|alpha|: 'x' or 'a:b:steps'")
    parser.add_argument("--alpha-phase", dest="alpha_phase", help="phase: 'x' or 'a:b:steps'")
    parser.add_argument("--order", help="witness order l (comma list)")
    parser.add_argument("--out", help="output path (default: stdout for tables)")
    parser.add_argument("--format", choices=["csv", "json"])
    parser.add_argument("--rel-tol", dest="rel_tol", type=float, help="series relative tolerance")
    parser.add_argument("--max-terms", dest="max_terms", type=int, help="series term cap")
    parser.add_argument("--config", help="key=value file supplying any of the above")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfstates",
        description="Displaced Fock states with photon addition/subtraction: "
                    "states, moments, nonclassicality witnesses, Husimi Q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_state = sub.add_parser("state", help="build one state; print summary or save amplitudes")
    _add_common(p_state)
    p_state.set_defaults(func=_cmd_state)

    p_moment = sub.add_parser("moment", help="normally ordered moment <adag^q a^r> sweep")
    _add_common(p_moment)
    p_moment.add_argument("--q", type=int, help="creation-operator power")
    p_moment.add_argument("--r", type=int, help="annihilation-operator power")
    p_moment.set_defaults(func=_cmd_moment)

    p_wit = sub.add_parser("witness", help="nonclassicality witness sweep")
    _add_common(p_wit)
    p_wit.add_argument("--witness", choices=list(WITNESS_NAMES))
    p_wit.set_defaults(func=_cmd_witness)

    p_qgrid = sub.add_parser("qgrid", help="Husimi Q over a rectangular grid")
    _add_common(p_qgrid)
    p_qgrid.add_argument("--grid", help="'re0:re1:n,im0:im1:m' (default: auto around alpha)")
    p_qgrid.set_defaults(func=_cmd_qgrid)

    p_fig = sub.add_parser("figure", help="run a named figure preset")
    p_fig.add_argument("preset", help=f"one of: {', '.join(PRESET_IDS)}")
    _add_common(p_fig)
    p_fig.set_defaults(func=_cmd_figure)

    p_self = sub.add_parser("selftest", help="replay closed forms against the oracles")
    _add_common(p_self)
    p_self.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "config", None) is not None:
            args._config_values = _load_config(args.config)
        else:
            args._config_values = {}
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_EXIT
    except ConvergenceError as exc:
        print(f"error: series did not converge: {exc}", file=sys.stderr)
        return _CONVERGENCE_EXIT
    except OSError as exc:
        path = getattr(exc, "filename", None)
        where = f" ({path})" if path else ""
        print(f"error: I/O failure{where}: {exc}", file=sys.stderr)
        return _IO_EXIT


def entrypoint() -> None:
    sys.exit(main())
