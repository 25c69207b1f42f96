"""Ladder-operator moments <adag^q a^r> from closed-form series and from
amplitude vectors, plus quadrature central moments for squeezing criteria.

The closed form sums over (p, p') in [0, n]^2 and one residual index m; the
backend kernel owns that loop.  Results are cached per (spec, q, r, control)
because witnesses re-request the same handful of moments constantly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from . import backends
from .errors import ConvergenceError, DegenerateStateError, DomainError, DimensionError
from .states import Family, FockVector, StateSpec

# Orders beyond this exceed what the accuracy envelope was audited for.
ORDER_MAX = 20

# Probability allowed in the guard band of an amplitude vector before the
# truncation visibly contaminates an oracle result.
_MARGIN_MASS = 1e-9


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for the residual m-series."""

    rel_tol: float = 1e-15
    max_terms: int = 2000
    consecutive_small: int = 5

    def __post_init__(self):
        if not (self.rel_tol > 0.0):
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol}")
        if self.max_terms < 50:
            raise DomainError(f"max_terms must be >= 50, got {self.max_terms}")
        if self.consecutive_small < 1:
            raise DomainError(
                f"consecutive_small must be >= 1, got {self.consecutive_small}"
            )


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class MomentValue:
    q: int
    r: int
    value: complex
    terms_summed: int
    converged: bool


@lru_cache(maxsize=65536)
def _raw_sum(spec: StateSpec, q: int, r: int, ctrl: SeriesControl):
    """Unnormalized <adag^q a^r> including all prefactors; cached."""
    return backends.moment_sum(
        spec.family is Family.PSDFS,
        spec.fock_n,
        spec.photons,
        q,
        r,
        spec.alpha_mag,
        spec.alpha_phase,
        ctrl.rel_tol,
        ctrl.max_terms,
        ctrl.consecutive_small,
    )


def _check_orders(q: int, r: int) -> None:
    for label, value in (("q", q), ("r", r)):
        if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
            raise DomainError(f"{label} must be an integer, got {value!r}")
        if value < 0:
            raise DomainError(f"{label} must be >= 0, got {value}")
        if value > ORDER_MAX:
            raise DomainError(f"{label} exceeds the supported order {ORDER_MAX}")


def moment_closed_form(
    spec: StateSpec, q: int, r: int, ctrl: SeriesControl = DEFAULT_CONTROL
) -> MomentValue:
    """Normalized <adag^q a^r> for the state described by spec."""
    _check_orders(q, r)
    s00, t0, ok0 = _raw_sum(spec, 0, 0, ctrl)
    if not ok0:
        raise ConvergenceError(
            f"normalization series for {spec} did not settle in {ctrl.max_terms} terms",
            partial=MomentValue(0, 0, s00, t0, False),
        )
    norm = s00.real
    if norm < 1e-60:
        raise DegenerateStateError(f"state {spec} has vanishing norm")
    if q == 0 and r == 0:
        return MomentValue(0, 0, s00 / norm, t0, True)
    sqr, t, ok = _raw_sum(spec, int(q), int(r), ctrl)
    if not ok:
        raise ConvergenceError(
            f"moment ({q},{r}) series for {spec} did not settle in {ctrl.max_terms} terms",
            partial=MomentValue(int(q), int(r), sqr / norm, t, False),
        )
    return MomentValue(int(q), int(r), sqr / norm, t, True)


def normalization_constant(spec: StateSpec, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """The prefactor that scales adag^u D|n> (or a^v D|n>) to unit norm."""
    s00, _, ok = _raw_sum(spec, 0, 0, ctrl)
    if not ok:
        raise ConvergenceError(f"normalization series for {spec} did not settle")
    if s00.real < 1e-60:
        raise DegenerateStateError(f"state {spec} has vanishing norm")
    return 1.0 / math.sqrt(s00.real)


def _margin_mass(state: FockVector, levels: int) -> float:
    if levels <= 0:
        return 0.0
    levels = min(levels, state.dim)
    tail = state.amplitudes[state.dim - levels:]
    return float(np.sum(np.abs(tail) ** 2))


def moment_oracle(state: FockVector, q: int, r: int) -> complex:
    """<adag^q a^r> computed directly from amplitudes; the brute-force check
    for moment_closed_form."""
    _check_orders(q, r)
    margin = max(q, r)
    if _margin_mass(state, margin) > _MARGIN_MASS:
        raise DimensionError(
            f"top {margin} levels hold more than {_MARGIN_MASS} probability; "
            "the truncated vector cannot support this moment"
        )
    c = state.amplitudes
    k = np.arange(r, state.dim - max(q - r, 0))
    if k.size == 0:
        return 0.0 + 0.0j
    logw = 0.5 * (gammaln(k + 1) - gammaln(k - r + 1)) + 0.5 * (
        gammaln(k + q - r + 1) - gammaln(k - r + 1)
    )
    return complex(np.sum(np.conj(c[k + q - r]) * c[k] * np.exp(logw)))


def _even_order(l: int) -> None:
    if not isinstance(l, (int, np.integer)) or isinstance(l, bool):
        raise DomainError(f"l must be an integer, got {l!r}")
    if l < 2 or l % 2 != 0:
        raise DomainError(f"l must be an even integer >= 2, got {l}")
    if l > 12:
        raise DomainError(f"l exceeds the supported quadrature order 12, got {l}")


def quadrature_central_moment(
    spec: StateSpec, l: int, ctrl: SeriesControl = DEFAULT_CONTROL
) -> float:
    """<(X - <X>)^l> for X = (a + adag)/sqrt(2), from normally ordered moments.

    Expansion: (a + adag)^s = sum_i C(s,2i) (2i-1)!! :(a + adag)^{s-2i}:,
    with the normal-ordered power expanded binomially.
    """
    _even_order(l)
    xm = 2.0 * moment_closed_form(spec, 0, 1, ctrl).value.real
    scale = 2.0 ** (-l / 2)
    total = 0.0 + 0.0j
    for s in range(l + 1):
        c_ls = math.comb(l, s)
        mu_pow = xm ** (l - s)
        outer = (-1.0) ** s * c_ls * mu_pow * scale
        for i in range(s // 2 + 1):
            dfac = _double_fact(2 * i - 1)
            c_s2i = math.comb(s, 2 * i)
            for k in range(s - 2 * i + 1):
                mom = moment_closed_form(spec, k, s - 2 * i - k, ctrl).value
                total += outer * dfac * c_s2i * math.comb(s - 2 * i, k) * mom
    return total.real


def _double_fact(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def quadrature_oracle(state: FockVector, l: int) -> float:
    """<(X - <X>)^l> by repeated application of the tridiagonal X matrix."""
    _even_order(l)
    if _margin_mass(state, l) > _MARGIN_MASS:
        raise DimensionError(
            f"top {l} levels hold more than {_MARGIN_MASS} probability; "
            "the truncated vector cannot support this quadrature moment"
        )
    c = state.amplitudes
    root = np.sqrt(np.arange(1, state.dim) / 2.0)

    def apply_x(v):
        out = np.zeros_like(v)
        out[:-1] += root * v[1:]
        out[1:] += root * v[:-1]
        return out

    mu = float(np.real(np.vdot(c, apply_x(c))))
    y = c.copy()
    for _ in range(l):
        y = apply_x(y) - mu * y
    return float(np.real(np.vdot(c, y)))
