"""Built-in consistency checks: closed-form results replayed against the
amplitude-vector oracles over a fixed parameter grid.

The grid crosses both families, 0..2 added or subtracted photons, starting
Fock levels 0..2, |alpha| in {0, 0.5, 1, 2}, and phases {0, pi/4}.  Points
where no state exists (subtraction below the vacuum at alpha = 0) are
skipped.
"""

from __future__ import annotations

import math
import time

import numpy as np

from .errors import DegenerateStateError
from .husimi import default_ranges, q_value, q_value_overlap
from .moments import (
    DEFAULT_CONTROL,
    SeriesControl,
    moment_closed_form,
    moment_oracle,
    quadrature_central_moment,
    quadrature_oracle,
)
from .states import Family, StateSpec, build_state

GRID_MAGS = (0.0, 0.5, 1.0, 2.0)
GRID_PHASES = (0.0, math.pi / 4)
GRID_OPS = (0, 1, 2)
GRID_FOCK = (0, 1, 2)
MOMENT_QR_MAX = 5
QUADRATURE_ORDERS = (2, 4, 6)
SCALED_TOL = 1e-8
HUSIMI_TOL = 1e-10
HUSIMI_POINTS = 50
HUSIMI_SEED = 20260819


def grid_state_specs() -> list[StateSpec]:
    """The oracle-equivalence grid, excluding nonexistent states."""
    specs = []
    for family in (Family.PADFS, Family.PSDFS):
        for ops in GRID_OPS:
            for fock in GRID_FOCK:
                for amag in GRID_MAGS:
                    for phase in GRID_PHASES:
                        try:
                            specs.append(StateSpec(family, ops, fock, amag, phase))
                        except DegenerateStateError:
                            continue
    return specs


def _scaled_err(closed: complex, oracle: complex) -> float:
    return abs(closed - oracle) / max(1.0, abs(oracle))


def moment_equivalence(
    ctrl: SeriesControl = DEFAULT_CONTROL,
    specs: list[StateSpec] | None = None,
) -> tuple[float, int]:
    """Worst scaled error and comparison count for moments over the grid."""
    if specs is None:
        specs = grid_state_specs()
    worst = 0.0
    checked = 0
    for spec in specs:
        state = build_state(spec)
        for q in range(MOMENT_QR_MAX + 1):
            for r in range(MOMENT_QR_MAX + 1):
                closed = moment_closed_form(spec, q, r, ctrl).value
                oracle = moment_oracle(state, q, r)
                worst = max(worst, _scaled_err(closed, oracle))
                checked += 1
    return worst, checked


def quadrature_equivalence(
    ctrl: SeriesControl = DEFAULT_CONTROL,
    specs: list[StateSpec] | None = None,
) -> tuple[float, int]:
    """Worst scaled error and count for central quadrature moments."""
    if specs is None:
        specs = grid_state_specs()
    worst = 0.0
    checked = 0
    for spec in specs:
        state = build_state(spec)
        for l in QUADRATURE_ORDERS:
            closed = quadrature_central_moment(spec, l, ctrl)
            oracle = quadrature_oracle(state, l)
            worst = max(worst, _scaled_err(closed, oracle))
            checked += 1
    return worst, checked


def husimi_overlap_check(
    ctrl: SeriesControl = DEFAULT_CONTROL,
    specs: list[StateSpec] | None = None,
    count: int = HUSIMI_POINTS,
    seed: int = HUSIMI_SEED,
) -> tuple[float, int]:
    """Worst absolute deviation between the two Q-value routes at random
    phase-space points."""
    if specs is None:
        specs = grid_state_specs()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        spec = specs[int(rng.integers(len(specs)))]
        (re_lo, re_hi, _), (im_lo, im_hi, _) = default_ranges(spec)
        beta = complex(rng.uniform(re_lo, re_hi), rng.uniform(im_lo, im_hi))
        closed = q_value(spec, beta, ctrl)
        overlap = q_value_overlap(spec, beta)
        worst = max(worst, abs(closed - overlap))
    return worst, count


def run_selftest(ctrl: SeriesControl = DEFAULT_CONTROL) -> tuple[bool, str]:
    """Run every check; returns (all passed, human-readable report)."""
    specs = grid_state_specs()
    lines = [f"state grid: {len(specs)} specs"]
    ok = True

    t0 = time.perf_counter()
    worst, checked = moment_equivalence(ctrl, specs)
    passed = worst <= SCALED_TOL
    ok = ok and passed
    lines.append(
        f"moment equivalence: {checked} comparisons, max scaled error {worst:.3e}, "
        f"tol {SCALED_TOL:.0e}: {'PASS' if passed else 'FAIL'}"
    )

    worst, checked = quadrature_equivalence(ctrl, specs)
    passed = worst <= SCALED_TOL
    ok = ok and passed
    lines.append(
        f"quadrature equivalence: {checked} comparisons, max scaled error {worst:.3e}, "
        f"tol {SCALED_TOL:.0e}: {'PASS' if passed else 'FAIL'}"
    )

    worst, checked = husimi_overlap_check(ctrl, specs)
    passed = worst <= HUSIMI_TOL
    ok = ok and passed
    lines.append(
        f"husimi overlap: {checked} points, max abs deviation {worst:.3e}, "
        f"tol {HUSIMI_TOL:.0e}: {'PASS' if passed else 'FAIL'}"
    )

    lines.append(f"elapsed: {time.perf_counter() - t0:.1f} s")
    lines.append("selftest: " + ("PASS" if ok else "FAIL"))
    return ok, "\n".join(lines)
