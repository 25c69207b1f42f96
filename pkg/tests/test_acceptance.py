"""Acceptance gate: one test per shipped claim, each printing a single
criterion line.  Run with -s to see the lines for passing tests too."""

import math
import time

import numpy as np

from conftest import poisson_central_moments
from dfstates.husimi import q_grid, q_min_scan
from dfstates.moments import DEFAULT_CONTROL
from dfstates.presets import PRESET_IDS, figure_preset
from dfstates.selftest import (
    grid_state_specs,
    husimi_overlap_check,
    moment_equivalence,
    quadrature_equivalence,
    run_selftest,
)
from dfstates.states import StateSpec, build_state, photon_number_distribution
from dfstates.witnesses import (
    agarwal_tara_A3,
    antibunching_d,
    higher_order_sub_poissonian,
    hong_mandel_S,
    klyshko_B,
    mandel_q,
)

COHERENT_MAGS = (0.1, 0.5, 1.0, 2.0, 4.0)


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


def coherent(amag):
    return StateSpec("padfs", 0, 0, amag, 0.0)


def test_criterion_1_closed_form_moments_match_amplitude_oracle():
    t0 = time.perf_counter()
    worst, count = moment_equivalence(DEFAULT_CONTROL)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 60.0
    _report(1, ok, f"{count} moment comparisons, worst scaled error "
                   f"{worst:.3e} (tol 1e-08), {elapsed:.1f} s (budget 60 s)")


def test_criterion_2_all_witnesses_vanish_on_coherent_states():
    worst = 0.0
    for amag in COHERENT_MAGS:
        spec = coherent(amag)
        values = (
            mandel_q(spec).value,
            antibunching_d(spec, 2).value,
            higher_order_sub_poissonian(spec, 2).value,
            hong_mandel_S(spec, 2).value,
            agarwal_tara_A3(spec).value,
            klyshko_B(spec, 0).value,
        )
        worst = max(worst, max(abs(v) for v in values))
    _report(2, worst < 1e-10,
            f"six witnesses over |alpha| in {COHERENT_MAGS}, "
            f"worst |value| {worst:.3e} (tol 1e-10)")


def test_criterion_3_mandel_anchors_at_zero_displacement():
    devs = []
    for u in (1, 2, 3):
        devs.append(abs(mandel_q(StateSpec("padfs", u, 1, 0.0, 0.0)).value + 1.0))
    sub_exact = abs(mandel_q(StateSpec("psdfs", 1, 1, 0.0, 0.0)).value)
    sub_limit = abs(mandel_q(StateSpec("psdfs", 1, 1, 1e-6, 0.0)).value)
    worst = max(max(devs), sub_exact, sub_limit)
    _report(3, worst < 1e-10,
            f"added-on-|1> floor at -1 for u=1,2,3 and subtracted-single-photon "
            f"limit at 0, worst deviation {worst:.3e} (tol 1e-10)")


def test_criterion_4_determinant_witness_anchors_and_floor():
    expects = {0: 0.0, 1: 0.0, 2: -1.0, 3: -1.0}
    worst_dev = max(
        abs(agarwal_tara_A3(StateSpec("padfs", 0, n, 0.0, 0.0)).value - v)
        for n, v in expects.items()
    )
    floor = min(agarwal_tara_A3(s).value for s in grid_state_specs())
    ok = worst_dev < 1e-8 and floor >= -1.0 - 1e-9
    _report(4, ok,
            f"Fock anchors (0,0,-1,-1) worst deviation {worst_dev:.3e} "
            f"(tol 1e-08); grid minimum {floor:.12f} >= -1-1e-09")


def test_criterion_5_probability_inequality_exact_values():
    worst_coh = max(abs(klyshko_B(coherent(1.0), m).value) for m in range(11))
    worst_fock = max(
        abs(klyshko_B(StateSpec("padfs", 0, n, 0.0, 0.0), n - 1).value + n)
        for n in (1, 2, 3)
    )
    ok = worst_coh < 1e-12 and worst_fock < 1e-12
    _report(5, ok,
            f"coherent B(m)=0 for m<=10 worst {worst_coh:.3e}; Fock B(n-1)=-n "
            f"worst deviation {worst_fock:.3e} (tol 1e-12)")


def test_criterion_6_quadrature_moments_consistent():
    worst_coh = max(
        abs(hong_mandel_S(coherent(amag), l).value)
        for amag in COHERENT_MAGS for l in (2, 4, 6)
    )
    worst_quad, count = quadrature_equivalence(DEFAULT_CONTROL)
    ok = worst_coh < 1e-10 and worst_quad <= 1e-8
    _report(6, ok,
            f"coherent S(l)=0 worst {worst_coh:.3e} (tol 1e-10); closed form vs "
            f"tridiagonal oracle worst {worst_quad:.3e} over {count} checks (tol 1e-08)")


def test_criterion_7a_antibunching_depth_grows_with_order():
    spec = StateSpec("padfs", 1, 1, 0.2, 0.0)
    vals = [antibunching_d(spec, l).value for l in (2, 3, 4)]
    depths = [abs(v) for v in vals]
    ok = all(v < 0 for v in vals) and depths[0] < depths[1] < depths[2]
    _report(7, ok, f"(a) |d| at orders 2,3,4 = "
                   f"{depths[0]:.3f}, {depths[1]:.3f}, {depths[2]:.3f}, increasing")


def test_criterion_7b_sub_poissonian_orders_match_distribution_route():
    spec = StateSpec("padfs", 1, 1, 0.3, 0.0)
    probs = photon_number_distribution(build_state(spec))
    k = np.arange(probs.shape[0])
    nbar = float(np.sum(k * probs))
    signs = []
    worst = 0.0
    for l in (2, 3, 4, 5, 6):
        closed = higher_order_sub_poissonian(spec, l).value
        central = float(np.sum((k - nbar) ** l * probs))
        oracle = (-1) ** l * (central - poisson_central_moments(nbar, l)[l])
        worst = max(worst, abs(closed - oracle) / max(1.0, abs(oracle)))
        signs.append("-" if closed < 0 else "+")
    pattern = " ".join(f"l={l}:{s}" for l, s in zip((2, 3, 4, 5, 6), signs))
    _report(7, worst <= 1e-8,
            f"(b) distribution-route agreement worst {worst:.3e} (tol 1e-08); "
            f"sign pattern {pattern} (negative exactly at odd witness order l-1)")


def test_criterion_7c_squeezing_only_for_subtracted_states():
    # the sampled grid is every second-order point the figure pipeline
    # evaluates: added family in fig5a (|alpha| in [0,5]) and fig7a (phase
    # sweep); subtracted family in fig7b
    added_min = min(
        row[7]
        for pid in ("fig5a", "fig7a")
        for row in figure_preset(pid).rows
        if row[1] == 2 and row[9] == "ok"
    )
    fig7b = {row[6]: row[7] for row in figure_preset("fig7b").rows if row[1] == 2}
    s_para = fig7b[0.0]
    s_perp = fig7b[min(fig7b, key=lambda ph: abs(ph - math.pi / 2))]
    # known off-figure exception, reported for transparency: enough added
    # photons do squeeze at large displacement
    off_grid = hong_mandel_S(StateSpec("padfs", 3, 1, 2.0, 0.0), 2).value
    ok = added_min >= -1e-9 and s_para < -1e-6 and s_para <= s_perp
    _report(7, ok,
            f"(c) added-family sampled min S(2) {added_min:+.4f} (floor -1e-09); "
            f"subtracted point S(2) {s_para:+.4f} along alpha vs {s_perp:+.4f} "
            f"perpendicular; off-figure scan still finds S(2) {off_grid:+.4f} "
            f"at photons=3, n=1, |alpha|=2")


def test_criterion_8_phase_space_distribution_checks():
    worst_pt, count = husimi_overlap_check(DEFAULT_CONTROL)
    grid_specs = [
        coherent(0.0),
        StateSpec("padfs", 0, 1, 0.0, 0.0),
        coherent(1.0),
    ] + [
        StateSpec(fam, photons, n, math.sqrt(2.0), math.pi / 4)
        for fam in ("padfs", "psdfs")
        for photons, n in ((1, 1), (2, 1), (1, 2))
    ]
    worst_mass = max(abs(q_grid(s).riemann_mass() - 1.0) for s in grid_specs)
    fock_grid = q_grid(StateSpec("padfs", 0, 1, 0.0, 0.0))
    beta_min, qmin = q_min_scan(fock_grid)
    ok = (worst_pt < 1e-10 and worst_mass <= 1e-3
          and beta_min == 0.0 and qmin < 1e-6)
    _report(8, ok,
            f"two Q routes agree within {worst_pt:.3e} on {count} random points "
            f"(tol 1e-10); {len(grid_specs)} default grids worst mass error "
            f"{worst_mass:.2e} (tol 1e-03); single-photon dip at beta="
            f"{beta_min} with q_min {qmin:.2e}")


def test_criterion_9_selftest_and_presets_within_time_budget():
    t0 = time.perf_counter()
    ok_self, _ = run_selftest(DEFAULT_CONTROL)
    rows = 0
    for pid in PRESET_IDS:
        rows += len(figure_preset(pid, DEFAULT_CONTROL, workers=1).rows)
    elapsed = time.perf_counter() - t0
    ok = ok_self and elapsed < 600.0
    _report(9, ok,
            f"selftest {'passed' if ok_self else 'FAILED'} and all "
            f"{len(PRESET_IDS)} presets ({rows} rows) in {elapsed:.1f} s "
            f"(budget 600 s, single-threaded)")
