"""Parameter sweeps over witnesses, moments, and Q grids, with deterministic
CSV/JSON emission.

Row order is fixed by nested iteration (order, photons, fock, |alpha|,
phase) regardless of how many workers evaluate the points, so identical
inputs always produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import DegenerateStateError, DomainError
from .husimi import default_ranges, q_grid
from .moments import DEFAULT_CONTROL, SeriesControl, moment_closed_form
from .states import Family, StateSpec
from .witnesses import (
    WITNESS_NAMES,
    agarwal_tara_A3,
    antibunching_d,
    higher_order_sub_poissonian,
    hong_mandel_S,
    klyshko_B,
    mandel_q,
)

_KINDS = WITNESS_NAMES + ("moment", "qgrid")

WITNESS_COLUMNS = (
    "witness", "order", "family", "photons", "n",
    "alpha_mag", "alpha_phase", "value", "nonclassical", "status",
)
MOMENT_COLUMNS = WITNESS_COLUMNS + ("value_im",)
QGRID_COLUMNS = ("re", "im", "q")


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: a witness (or 'moment' or 'qgrid'), a state family, and the
    parameter lists to cross."""

    witness: str
    family: Family
    photons_list: tuple[int, ...]
    fock_list: tuple[int, ...]
    alpha_mag: tuple[float, float, int]
    alpha_phase: float | tuple[float, float, int] = 0.0
    order: tuple[int, ...] = (0,)
    q: int = 0
    r: int = 0
    grid: tuple[float, float, int, float, float, int] | None = None
    output_path: str | None = None
    fmt: str = "csv"

    def __post_init__(self):
        if self.witness not in _KINDS:
            raise DomainError(f"unknown sweep kind {self.witness!r}; expected one of {_KINDS}")
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "photons_list", tuple(int(x) for x in self.photons_list))
        object.__setattr__(self, "fock_list", tuple(int(x) for x in self.fock_list))
        object.__setattr__(self, "order", tuple(int(x) for x in self.order))
        if not self.photons_list or not self.fock_list or not self.order:
            raise DomainError("photons_list, fock_list, and order must be non-empty")
        _check_range(self.alpha_mag, "alpha_mag")
        if isinstance(self.alpha_phase, tuple):
            _check_range(self.alpha_phase, "alpha_phase")
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.fmt!r}")


def _check_range(rng, label):
    lo, hi, steps = rng
    if int(steps) < 1:
        raise DomainError(f"{label} steps must be >= 1, got {steps}")
    if int(steps) > 1 and not (hi > lo):
        raise DomainError(f"{label} range must be increasing when steps > 1, got {rng}")


def _range_values(rng) -> list[float]:
    if not isinstance(rng, tuple):
        return [float(rng)]
    lo, hi, steps = float(rng[0]), float(rng[1]), int(rng[2])
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


@dataclass
class Table:
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    meta: dict = field(default_factory=dict)


def _eval_point(kind, spec, order, q, r, ctrl):
    """(value, value_im, nonclassical, status) for one sweep point."""
    try:
        if kind == "moment":
            mv = moment_closed_form(spec, q, r, ctrl)
            return mv.value.real, mv.value.imag, None, "ok"
        if kind == "MandelQ":
            res = mandel_q(spec, ctrl)
        elif kind == "Antibunching":
            res = antibunching_d(spec, order, ctrl)
        elif kind == "HOSPS":
            res = higher_order_sub_poissonian(spec, order, ctrl)
        elif kind == "HongMandel":
            res = hong_mandel_S(spec, order, ctrl)
        elif kind == "AgarwalTara":
            res = agarwal_tara_A3(spec, ctrl)
        else:
            res = klyshko_B(spec, order, ctrl)
        return res.value, None, res.nonclassical, "ok"
    except DegenerateStateError:
        return None, None, None, "degenerate"


def run_sweep(
    config: SweepConfig,
    ctrl: SeriesControl = DEFAULT_CONTROL,
    workers: int = 1,
) -> Table:
    """Evaluate the sweep; row order is independent of workers."""
    if config.witness == "qgrid":
        return _run_qgrid(config, ctrl)
    phases = _range_values(config.alpha_phase)
    mags = _range_values(config.alpha_mag)
    kind = config.witness
    points = []
    for order in config.order:
        for photons in config.photons_list:
            for fock in config.fock_list:
                for amag in mags:
                    for phase in phases:
                        points.append((order, photons, fock, amag, phase))

    def run_one(pt):
        order, photons, fock, amag, phase = pt
        try:
            spec = StateSpec(config.family, photons, fock, amag, phase)
        except DegenerateStateError:
            return None, None, None, "degenerate"
        return _eval_point(kind, spec, order, config.q, config.r, ctrl)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_one, points))
    else:
        outcomes = [run_one(pt) for pt in points]

    is_moment = kind == "moment"
    table = Table(columns=MOMENT_COLUMNS if is_moment else WITNESS_COLUMNS)
    table.meta = _sweep_meta(config, ctrl)
    for pt, (value, value_im, noncl, status) in zip(points, outcomes):
        order, photons, fock, amag, phase = pt
        row = [kind, order, config.family.value, photons, fock, amag, phase,
               value, noncl, status]
        if is_moment:
            row.append(value_im)
        table.rows.append(tuple(row))
    return table


def _run_qgrid(config: SweepConfig, ctrl: SeriesControl) -> Table:
    if (
        len(config.photons_list) != 1
        or len(config.fock_list) != 1
        or len(_range_values(config.alpha_mag)) != 1
        or len(_range_values(config.alpha_phase)) != 1
    ):
        raise DomainError("qgrid sweeps take a single state, not parameter lists")
    spec = StateSpec(
        config.family,
        config.photons_list[0],
        config.fock_list[0],
        _range_values(config.alpha_mag)[0],
        _range_values(config.alpha_phase)[0],
    )
    if config.grid is not None:
        g = config.grid
        re_range = (float(g[0]), float(g[1]), int(g[2]))
        im_range = (float(g[3]), float(g[4]), int(g[5]))
    else:
        re_range, im_range = default_ranges(spec)
    grid = q_grid(spec, re_range, im_range, ctrl)
    re, im = grid.axes()
    table = Table(columns=QGRID_COLUMNS)
    table.meta = _sweep_meta(config, ctrl)
    table.meta["re_range"] = list(grid.re_range)
    table.meta["im_range"] = list(grid.im_range)
    for i in range(re.shape[0]):
        for j in range(im.shape[0]):
            table.rows.append((float(re[i]), float(im[j]), float(grid.values[i, j])))
    return table


def _sweep_meta(config: SweepConfig, ctrl: SeriesControl) -> dict:
    meta = {
        "library_version": __version__,
        "series_control": {
            "rel_tol": ctrl.rel_tol,
            "max_terms": ctrl.max_terms,
            "consecutive_small": ctrl.consecutive_small,
        },
        "kind": config.witness,
        "family": config.family.value,
        "photons_list": list(config.photons_list),
        "fock_list": list(config.fock_list),
        "alpha_mag": list(config.alpha_mag),
        "alpha_phase": (
            list(config.alpha_phase)
            if isinstance(config.alpha_phase, tuple)
            else config.alpha_phase
        ),
        "order": list(config.order),
    }
    if config.witness == "moment":
        meta["q"] = config.q
        meta["r"] = config.r
    return meta


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def render(table: Table, fmt: str) -> str:
    """Serialize the table; identical inputs yield identical text."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "metadata": dict(table.meta),
            "rows": [
                {col: (None if v is None else v) for col, v in zip(table.columns, row)}
                for row in table.rows
            ],
        }
        return json.dumps(doc, indent=2) + "\n"
    raise DomainError(f"unknown output format {fmt!r}")


def emit(table: Table, fmt: str, path: str) -> None:
    """Write the table to path; byte-identical files for identical inputs."""
    text = render(table, fmt)
    with open(path, "w", newline="") as fh:
        fh.write(text)
