"""Scalar nonclassicality witnesses.

All six criteria signal nonclassicality by strict negativity, so
WitnessResult.nonclassical is exactly (value < 0).  Mandel Q and the
Agarwal-Tara ratio get explicit conventions at their degenerate points
(vacuum, and the 0/0 determinant limit) so sweeps stay total.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .combinatorics import binomial, pochhammer_half, stirling2
from .errors import DimensionError, DomainError
from .moments import (
    DEFAULT_CONTROL,
    SeriesControl,
    moment_closed_form,
    quadrature_central_moment,
)
from .states import StateSpec, build_state, choose_dimension, photon_number_distribution

WITNESS_NAMES = (
    "MandelQ",
    "Antibunching",
    "HOSPS",
    "HongMandel",
    "AgarwalTara",
    "Klyshko",
)

# Below this mean photon number the state is numerically vacuum and the
# Mandel ratio is taken as its limit value 0.
_VACUUM_NBAR = 1e-14

# Determinant magnitudes below this count as structural zeros (0/0 -> 0).
_DET_EPS = 1e-20


@dataclass(frozen=True)
class WitnessResult:
    name: str
    order: int
    value: float
    spec: StateSpec
    nonclassical: bool


def _result(name: str, order: int, value: float, spec: StateSpec) -> WitnessResult:
    return WitnessResult(name, order, float(value), spec, bool(value < 0.0))


def _diag(spec: StateSpec, k: int, ctrl: SeriesControl) -> float:
    return moment_closed_form(spec, k, k, ctrl).value.real


def mandel_q(spec: StateSpec, ctrl: SeriesControl = DEFAULT_CONTROL) -> WitnessResult:
    """(  <N^2> - <N>^2 - <N> ) / <N>; negative means sub-Poissonian."""
    nbar = _diag(spec, 1, ctrl)
    if nbar < _VACUUM_NBAR:
        return _result("MandelQ", 0, 0.0, spec)
    nsq = _diag(spec, 2, ctrl) + nbar
    return _result("MandelQ", 0, (nsq - nbar * nbar - nbar) / nbar, spec)


def antibunching_d(spec: StateSpec, l: int, ctrl: SeriesControl = DEFAULT_CONTROL) -> WitnessResult:
    """d(l-1) = <adag^l a^l> - <N>^l; l = 2 is ordinary antibunching."""
    if not isinstance(l, (int, np.integer)) or isinstance(l, bool) or l < 2:
        raise DomainError(f"antibunching order l must be an integer >= 2, got {l!r}")
    nbar = _diag(spec, 1, ctrl)
    return _result("Antibunching", int(l), _diag(spec, int(l), ctrl) - nbar ** int(l), spec)


def higher_order_sub_poissonian(
    spec: StateSpec, l: int, ctrl: SeriesControl = DEFAULT_CONTROL
) -> WitnessResult:
    """D_h(l-1): Stirling-number expansion of the l-th central number moment
    relative to a Poissonian of the same mean."""
    if not isinstance(l, (int, np.integer)) or isinstance(l, bool) or l < 2:
        raise DomainError(f"sub-Poissonian order l must be an integer >= 2, got {l!r}")
    l = int(l)
    nbar = _diag(spec, 1, ctrl)
    d_of = [0.0] * (l + 1)  # d_of[f] = d(f-1); d(0) = 0 identically
    for f in range(2, l + 1):
        d_of[f] = _diag(spec, f, ctrl) - nbar ** f
    total = 0.0
    for e in range(l + 1):
        for f in range(1, e + 1):
            total += (
                stirling2(e, f)
                * binomial(l, e)
                * (-1.0) ** e
                * d_of[f]
                * nbar ** (l - e)
            )
    return _result("HOSPS", l, total, spec)


def hong_mandel_S(spec: StateSpec, l: int, ctrl: SeriesControl = DEFAULT_CONTROL) -> WitnessResult:
    """S(l) = (<(dX)^l> - (1/2)_{l/2}) / (1/2)_{l/2}; negative below the
    Gaussian reference means l-th order squeezing."""
    ref = pochhammer_half(l)  # validates l even >= 2
    val = quadrature_central_moment(spec, l, ctrl)
    return _result("HongMandel", int(l), (val - ref) / ref, spec)


def _det3(a) -> float:
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def agarwal_tara_A3(spec: StateSpec, ctrl: SeriesControl = DEFAULT_CONTROL) -> WitnessResult:
    """det m / (det mu - det m) from the 3x3 Hankel matrices of normally
    ordered moments m_i = <adag^i a^i> and number moments mu_j = <N^j>.

    mu_j is expanded over m through Stirling numbers of the second kind, so
    both matrices come from the same six series evaluations.  When both
    determinants vanish (Fock n <= 1, vacuum, undisplaced limits) the ratio
    is taken as 0.
    """
    m = [1.0] + [_diag(spec, i, ctrl) for i in range(1, 5)]
    mu = [1.0] + [
        sum(stirling2(j, f) * m[f] for f in range(1, j + 1)) for j in range(1, 5)
    ]
    dm = _det3([[m[0], m[1], m[2]], [m[1], m[2], m[3]], [m[2], m[3], m[4]]])
    dmu = _det3([[mu[0], mu[1], mu[2]], [mu[1], mu[2], mu[3]], [mu[2], mu[3], mu[4]]])
    if abs(dm) < _DET_EPS and abs(dmu) < _DET_EPS:
        return _result("AgarwalTara", 0, 0.0, spec)
    return _result("AgarwalTara", 0, dm / (dmu - dm), spec)


def klyshko_B(spec: StateSpec, m: int, ctrl: SeriesControl = DEFAULT_CONTROL) -> WitnessResult:
    """B(m) = (m+2) p_m p_{m+2} - (m+1) p_{m+1}^2 from three successive
    photon-number probabilities of the built state."""
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 0:
        raise DomainError(f"Klyshko index m must be an integer >= 0, got {m!r}")
    m = int(m)
    dim = choose_dimension(spec)
    if m + 2 >= dim:
        raise DimensionError(
            f"Klyshko B({m}) needs level {m + 2} but the state truncates at {dim - 1}"
        )
    p = photon_number_distribution(build_state(spec, dim))
    value = (m + 2) * p[m] * p[m + 2] - (m + 1) * p[m + 1] ** 2
    return _result("Klyshko", m, value, spec)
