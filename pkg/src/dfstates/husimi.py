"""Husimi Q function on points and grids of the coherent-amplitude plane.

Q(beta) = |<beta|psi>|^2 / pi for the normalized state.  The closed-form
route sums the same series that the moment machinery uses for the squared
norm; q_value_overlap recomputes the bracket brute-force from a FockVector
and is the independent check.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import backends
from .errors import ConsistencyError, ConvergenceError, DegenerateStateError, DomainError
from .moments import DEFAULT_CONTROL, SeriesControl, _raw_sum
from .states import Family, FockVector, StateSpec, build_state

_Q_CEILING_SLACK = 1e-12


@dataclass(frozen=True)
class QGrid:
    """Q values over a rectangular beta grid.

    values[i, j] is Q at beta = re_i + 1j * im_j, with both axes evenly
    spaced over their declared (min, max, count) ranges.  mass_tol is the
    tolerance the Riemann normalization check is declared to hold within on
    this grid.
    """

    re_range: tuple[float, float, int]
    im_range: tuple[float, float, int]
    values: np.ndarray
    mass_tol: float = 1e-3

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        expected = (self.re_range[2], self.im_range[2])
        if vals.shape != expected:
            raise DomainError(f"values shape {vals.shape} does not match ranges {expected}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        re = np.linspace(self.re_range[0], self.re_range[1], self.re_range[2])
        im = np.linspace(self.im_range[0], self.im_range[1], self.im_range[2])
        return re, im

    def riemann_mass(self) -> float:
        """Cell area times the sum of values; near 1 when the grid covers
        the state's support."""
        re, im = self.axes()
        d_re = (self.re_range[1] - self.re_range[0]) / (self.re_range[2] - 1)
        d_im = (self.im_range[1] - self.im_range[0]) / (self.im_range[2] - 1)
        return float(np.sum(self.values) * d_re * d_im)


def _series_length(spec: StateSpec, bmag: float, ctrl: SeriesControl) -> int:
    nterms = backends.husimi_terms(spec.alpha_mag, bmag, spec.fock_n, spec.photons)
    if nterms > ctrl.max_terms:
        raise ConvergenceError(
            f"coherent-overlap series needs {nterms} terms, beyond the "
            f"configured cap {ctrl.max_terms}"
        )
    return nterms


def _norm_sq(spec: StateSpec, ctrl: SeriesControl) -> float:
    s00, _, ok = _raw_sum(spec, 0, 0, ctrl)
    if not ok:
        raise ConvergenceError(f"normalization series for {spec} did not settle")
    if s00.real < 1e-60:
        raise DegenerateStateError(f"state {spec} has vanishing norm")
    return s00.real


def q_value(spec: StateSpec, beta: complex, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Closed-form Q(beta)."""
    beta = complex(beta)
    bmag = abs(beta)
    nterms = _series_length(spec, bmag, ctrl)
    amp = backends.husimi_amp(
        spec.family is Family.PSDFS,
        spec.fock_n,
        spec.photons,
        spec.alpha_mag,
        spec.alpha_phase,
        bmag,
        math.atan2(beta.imag, beta.real),
        nterms,
    )
    g = abs(amp)
    return g * g / (math.pi * _norm_sq(spec, ctrl))


def q_value_overlap(spec: StateSpec, beta: complex, state: FockVector | None = None) -> float:
    """Brute-force Q(beta) = |<beta|psi>|^2 / pi from an amplitude vector."""
    if state is None:
        state = build_state(spec)
    beta = complex(beta)
    bmag = abs(beta)
    c = state.amplitudes
    if bmag == 0.0:
        ov = c[0]
    else:
        k = np.arange(state.dim)
        logw = k * math.log(bmag) - 0.5 * gammaln(k + 1) - 0.5 * bmag * bmag
        ang = -k * math.atan2(beta.imag, beta.real)
        ov = np.sum(c * np.exp(logw) * np.exp(1j * ang))
    return float(abs(ov) ** 2 / math.pi)


def default_ranges(spec: StateSpec) -> tuple[tuple[float, float, int], tuple[float, float, int]]:
    """121x121 box out to |alpha| + 4, covering the support to ~4 widths."""
    half = spec.alpha_mag + 4.0
    return (-half, half, 121), (-half, half, 121)


def q_grid(
    spec: StateSpec,
    re_range: tuple[float, float, int] | None = None,
    im_range: tuple[float, float, int] | None = None,
    ctrl: SeriesControl = DEFAULT_CONTROL,
) -> QGrid:
    """Q over a rectangular grid, closed-form series at every point."""
    if re_range is None or im_range is None:
        d_re, d_im = default_ranges(spec)
        re_range = re_range or d_re
        im_range = im_range or d_im
    for rng in (re_range, im_range):
        if int(rng[2]) < 2:
            raise DomainError(f"grid needs at least 2 points per axis, got {rng[2]}")
        if not (rng[1] > rng[0]):
            raise DomainError(f"grid range must be increasing, got {rng[:2]}")
    re_range = (float(re_range[0]), float(re_range[1]), int(re_range[2]))
    im_range = (float(im_range[0]), float(im_range[1]), int(im_range[2]))
    re = np.linspace(re_range[0], re_range[1], re_range[2])
    im = np.linspace(im_range[0], im_range[1], im_range[2])
    bmax = math.hypot(
        max(abs(re_range[0]), abs(re_range[1])),
        max(abs(im_range[0]), abs(im_range[1])),
    )
    nterms = _series_length(spec, bmax, ctrl)
    amps = backends.husimi_grid(
        spec.family is Family.PSDFS,
        spec.fock_n,
        spec.photons,
        spec.alpha_mag,
        spec.alpha_phase,
        re,
        im,
        nterms,
    )
    values = (amps.real ** 2 + amps.imag ** 2) / (math.pi * _norm_sq(spec, ctrl))
    ceiling = 1.0 / math.pi + _Q_CEILING_SLACK
    worst = float(values.max())
    if worst > ceiling or float(values.min()) < 0.0:
        raise ConsistencyError(
            f"Q grid violates positivity/boundedness (max {worst:.6e})"
        )
    return QGrid(re_range, im_range, values)


def q_min_scan(grid: QGrid) -> tuple[complex, float]:
    """Grid point of minimum Q; ties broken by smallest |beta|, then phase."""
    re, im = grid.axes()
    vals = grid.values
    qmin = float(vals.min())
    ii, jj = np.nonzero(vals == qmin)
    best = None
    for i, j in zip(ii, jj):
        beta = complex(re[i], im[j])
        key = (abs(beta), math.atan2(beta.imag, beta.real))
        if best is None or key < best[0]:
            best = (key, beta)
    return best[1], qmin


def render_qgrid(grid: QGrid, fmt: str = "csv", spec: StateSpec | None = None) -> str:
    """CSV columns re, im, q in row-major order; JSON adds grid metadata."""
    re, im = grid.axes()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["re", "im", "q"])
        for i in range(re.shape[0]):
            for j in range(im.shape[0]):
                writer.writerow([repr(float(re[i])), repr(float(im[j])),
                                 repr(float(grid.values[i, j]))])
        return buf.getvalue()
    if fmt == "json":
        meta = {
            "re_range": list(grid.re_range),
            "im_range": list(grid.im_range),
            "mass_tol": grid.mass_tol,
        }
        if spec is not None:
            meta["spec"] = {
                "family": spec.family.value,
                "photons": spec.photons,
                "fock_n": spec.fock_n,
                "alpha_mag": spec.alpha_mag,
                "alpha_phase": spec.alpha_phase,
            }
        doc = {"metadata": meta, "values": [list(map(float, row)) for row in grid.values]}
        return json.dumps(doc, indent=2) + "\n"
    raise DomainError(f"unknown grid format {fmt!r}")


def save_qgrid(
    grid: QGrid,
    path: str,
    fmt: str = "csv",
    spec: StateSpec | None = None,
) -> None:
    text = render_qgrid(grid, fmt, spec)
    with open(path, "w", newline="") as fh:
        fh.write(text)
