"""State specifications and truncated Fock-basis amplitude vectors.

Every state handled by this package is a displaced Fock state |alpha, n> with
u photons added or v photons subtracted, described symbolically by StateSpec
and concretely by FockVector.

Construction runs two independent routes and compares them: per-level
collection of the series expansion, and ladder-operator matrices applied to
the displaced-Fock vector.  A disagreement beyond 1e-10 raises
ConsistencyError; it would mean the expansion and the operator algebra have
drifted apart, and no downstream number can be trusted.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    ConsistencyError,
    DegenerateStateError,
    DimensionError,
    DomainError,
)

# |alpha| beyond this would push series prefactors past what the log-domain
# recurrences keep accurate; well beyond every figure's range.
ALPHA_MAG_MAX = 12.0

_LADDER_ATOL = 1e-10


class Family(str, Enum):
    """Which operation follows the displacement."""

    PADFS = "padfs"
    PSDFS = "psdfs"


@dataclass(frozen=True)
class StateSpec:
    """Symbolic description of a photon-added/subtracted displaced Fock state.

    photons is u (added) or v (subtracted) depending on family; fock_n is the
    Fock index n that gets displaced; alpha = alpha_mag * exp(i*alpha_phase).
    photons = 0 reduces both families to the plain displaced Fock state, and
    photons = fock_n = 0 to a coherent state.
    """

    family: Family
    photons: int
    fock_n: int
    alpha_mag: float
    alpha_phase: float = 0.0

    def __post_init__(self):
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family(self.family))
        for label, value in (("photons", self.photons), ("fock_n", self.fock_n)):
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
                raise DomainError(f"{label} must be an integer, got {value!r}")
            if value < 0:
                raise DomainError(f"{label} must be >= 0, got {value}")
        amag = float(self.alpha_mag)
        if not math.isfinite(amag) or amag < 0.0:
            raise DomainError(f"alpha_mag must be finite and >= 0, got {self.alpha_mag!r}")
        if amag > ALPHA_MAG_MAX:
            raise DomainError(
                f"alpha_mag {amag} exceeds the supported envelope {ALPHA_MAG_MAX}"
            )
        if not math.isfinite(float(self.alpha_phase)):
            raise DomainError(f"alpha_phase must be finite, got {self.alpha_phase!r}")
        object.__setattr__(self, "photons", int(self.photons))
        object.__setattr__(self, "fock_n", int(self.fock_n))
        object.__setattr__(self, "alpha_mag", amag)
        object.__setattr__(self, "alpha_phase", float(self.alpha_phase))
        if (
            self.family is Family.PSDFS
            and self.alpha_mag == 0.0
            and self.photons > self.fock_n
        ):
            raise DegenerateStateError(
                f"subtracting {self.photons} photons from undisplaced |{self.fock_n}> "
                "annihilates the state"
            )

    @property
    def alpha(self) -> complex:
        return self.alpha_mag * complex(
            math.cos(self.alpha_phase), math.sin(self.alpha_phase)
        )


@dataclass(frozen=True, eq=False)
class FockVector:
    """Normalized amplitudes over Fock levels 0..dim-1.

    tail_bound is a declared upper bound on the probability mass the
    truncation neglected (0.0 for states with exactly finite support).
    """

    amplitudes: np.ndarray
    dim: int
    tail_bound: float

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.shape[0] != self.dim:
            raise DomainError("amplitudes must be a 1-d array of length dim")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)


def choose_dimension(spec: StateSpec, tail_tol: float = 1e-12) -> int:
    """Truncation dimension leaving less than tail_tol probability outside.

    The margin 10|alpha| + 20 puts the top retained amplitudes around 1e-15
    for a Poissonian envelope at tail_tol = 1e-12; tighter tolerances add two
    levels per requested decade.
    """
    if tail_tol <= 0.0:
        raise DomainError(f"tail_tol must be > 0, got {tail_tol}")
    amag = spec.alpha_mag
    extra = 2 * max(0, math.ceil(math.log10(1e-12 / tail_tol)))
    return (
        spec.fock_n
        + spec.photons
        + math.ceil(amag * amag + 10.0 * amag + 20.0)
        + extra
    )


def _tail_estimate(unnorm: np.ndarray) -> float:
    """Geometric continuation of the top two occupied levels, as a fraction
    of total mass.  Returns 0.0 for exactly truncated vectors, 1.0 when the
    top level dominates its neighbor (no decaying tail to extrapolate)."""
    total = float(np.sum(np.abs(unnorm) ** 2))
    if total == 0.0:
        return 1.0
    a_last = abs(unnorm[-1])
    if a_last == 0.0:
        return 0.0
    a_prev = abs(unnorm[-2]) if unnorm.shape[0] > 1 else 0.0
    if a_prev <= a_last:
        return 1.0
    rho = (a_last / a_prev) ** 2
    return min(1.0, (a_last * a_last / total) * rho / (1.0 - rho))


def _collect_dfs(n: int, amag: float, theta: float, dim: int) -> np.ndarray:
    """Unnormalized displaced-Fock amplitudes, one log-domain term per (k, p)."""
    lg = math.lgamma
    asq = amag * amag
    out = np.zeros(dim, dtype=np.complex128)
    lgn = lg(n + 1)
    for k in range(dim):
        acc = 0.0 + 0.0j
        for p in range(min(n, k) + 1):
            e = (k - p) + (n - p)
            if amag == 0.0 and e != 0:
                continue
            lw = (lgn - lg(p + 1) - lg(n - p + 1) - 0.5 * lgn - 0.5 * asq
                  + (e * math.log(amag) if e else 0.0)
                  - lg(k - p + 1) + 0.5 * lg(k + 1))
            ang = theta * ((k - p) - (n - p))
            sign = -1.0 if ((n - p) & 1) else 1.0
            mag = sign * math.exp(lw)
            acc += complex(mag * math.cos(ang), mag * math.sin(ang))
        out[k] = acc
    return out


def _collect_padfs(n: int, u: int, amag: float, theta: float, dim: int) -> np.ndarray:
    lg = math.lgamma
    asq = amag * amag
    out = np.zeros(dim, dtype=np.complex128)
    lgn = lg(n + 1)
    for k in range(u, dim):
        acc = 0.0 + 0.0j
        for p in range(min(n, k - u) + 1):
            e = (k - u - p) + (n - p)
            if amag == 0.0 and e != 0:
                continue
            lw = (lgn - lg(p + 1) - lg(n - p + 1) - 0.5 * lgn - 0.5 * asq
                  + (e * math.log(amag) if e else 0.0)
                  - lg(k - u - p + 1) + 0.5 * lg(k + 1))
            ang = theta * ((k - u - p) - (n - p))
            sign = -1.0 if ((n - p) & 1) else 1.0
            mag = sign * math.exp(lw)
            acc += complex(mag * math.cos(ang), mag * math.sin(ang))
        out[k] = acc
    return out


def _collect_psdfs(n: int, v: int, amag: float, theta: float, dim: int) -> np.ndarray:
    lg = math.lgamma
    asq = amag * amag
    out = np.zeros(dim, dtype=np.complex128)
    lgn = lg(n + 1)
    for k in range(dim):
        acc = 0.0 + 0.0j
        for p in range(min(n, k + v) + 1):
            e = (k + v - p) + (n - p)
            if amag == 0.0 and e != 0:
                continue
            lw = (lgn - lg(p + 1) - lg(n - p + 1) - 0.5 * lgn - 0.5 * asq
                  + (e * math.log(amag) if e else 0.0)
                  - lg(k + v - p + 1) + lg(k + v + 1) - 0.5 * lg(k + 1))
            ang = theta * ((k + v - p) - (n - p))
            sign = -1.0 if ((n - p) & 1) else 1.0
            mag = sign * math.exp(lw)
            acc += complex(mag * math.cos(ang), mag * math.sin(ang))
        out[k] = acc
    return out


def _raise_once(c: np.ndarray) -> np.ndarray:
    out = np.zeros_like(c)
    k = np.arange(1, c.shape[0])
    out[1:] = np.sqrt(k) * c[:-1]
    return out


def _lower_once(c: np.ndarray) -> np.ndarray:
    out = np.zeros_like(c)
    k = np.arange(1, c.shape[0])
    out[:-1] = np.sqrt(k) * c[1:]
    return out


def _check_routes(collected: np.ndarray, laddered: np.ndarray, what: str) -> None:
    scale = max(1.0, float(np.max(np.abs(collected))))
    worst = float(np.max(np.abs(collected - laddered)))
    if worst > _LADDER_ATOL * scale:
        raise ConsistencyError(
            f"{what}: series collection and ladder application disagree "
            f"(max deviation {worst:.3e} at scale {scale:.3e})"
        )


def _basis_vector(level: int, dim: int) -> np.ndarray:
    out = np.zeros(dim, dtype=np.complex128)
    out[level] = 1.0
    return out


def build_dfs(n: int, alpha: complex, dim: int) -> FockVector:
    """Displaced Fock state D(alpha)|n> as a normalized FockVector."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if dim <= n:
        raise DimensionError(f"dim must exceed n; got dim={dim}, n={n}")
    alpha = complex(alpha)
    amag = abs(alpha)
    if amag == 0.0:
        return FockVector(_basis_vector(n, dim), dim, 0.0)
    if amag > ALPHA_MAG_MAX:
        raise DomainError(f"|alpha| {amag} exceeds the supported envelope {ALPHA_MAG_MAX}")
    theta = math.atan2(alpha.imag, alpha.real)
    w = _collect_dfs(n, amag, theta, dim)
    tail = _tail_estimate(w)
    nrm = math.sqrt(float(np.sum(np.abs(w) ** 2)))
    return FockVector(w / nrm, dim, tail)


def build_padfs(spec: StateSpec, dim: int) -> FockVector:
    """N+ * adag^u * D(alpha)|n>, built by collection and checked by ladder."""
    if spec.family is not Family.PADFS:
        raise DomainError("build_padfs needs a PADFS spec")
    n, u = spec.fock_n, spec.photons
    if dim <= n + u:
        raise DimensionError(f"dim must exceed n + u; got dim={dim}, n={n}, u={u}")
    if spec.alpha_mag == 0.0:
        return FockVector(_basis_vector(n + u, dim), dim, 0.0)
    w = _collect_padfs(n, u, spec.alpha_mag, spec.alpha_phase, dim)
    # ladder route stays unnormalized so the comparison is truncation-neutral
    ladder = _collect_dfs(n, spec.alpha_mag, spec.alpha_phase, dim)
    for _ in range(u):
        ladder = _raise_once(ladder)
    _check_routes(w, ladder, "PADFS build")
    tail = _tail_estimate(w)
    nrm = math.sqrt(float(np.sum(np.abs(w) ** 2)))
    return FockVector(w / nrm, dim, tail)


def build_psdfs(spec: StateSpec, dim: int) -> FockVector:
    """N- * a^v * D(alpha)|n>, built by collection and checked by ladder."""
    if spec.family is not Family.PSDFS:
        raise DomainError("build_psdfs needs a PSDFS spec")
    n, v = spec.fock_n, spec.photons
    if dim <= n:
        raise DimensionError(f"dim must exceed n; got dim={dim}, n={n}")
    if spec.alpha_mag == 0.0:
        # limit state |n - v>; v <= n is guaranteed by StateSpec validation
        return FockVector(_basis_vector(n - v, dim), dim, 0.0)
    w = _collect_psdfs(n, v, spec.alpha_mag, spec.alpha_phase, dim)
    nrm_sq = float(np.sum(np.abs(w) ** 2))
    if nrm_sq < 1e-30:
        raise DegenerateStateError(
            "subtraction annihilated the state (pre-normalization norm "
            f"{math.sqrt(nrm_sq):.3e})"
        )
    # the window's top levels draw on displaced-state levels up to dim+v-1,
    # so the ladder route needs that headroom before truncating back
    ladder = _collect_dfs(n, spec.alpha_mag, spec.alpha_phase, dim + v)
    for _ in range(v):
        ladder = _lower_once(ladder)
    _check_routes(w, ladder[:dim], "PSDFS build")
    tail = _tail_estimate(w)
    return FockVector(w / math.sqrt(nrm_sq), dim, tail)


def build_state(spec: StateSpec, dim: int | None = None, tail_tol: float = 1e-12) -> FockVector:
    """Build the state described by spec, sizing the basis automatically."""
    if dim is None:
        dim = choose_dimension(spec, tail_tol)
    if spec.family is Family.PADFS:
        return build_padfs(spec, dim)
    return build_psdfs(spec, dim)


def photon_number_distribution(state: FockVector) -> np.ndarray:
    """p_k = |c_k|^2 over the truncated basis."""
    return np.abs(state.amplitudes) ** 2


def save_amplitudes(state: FockVector, path: str) -> None:
    """Write the vector as CSV with columns k, re, im, prob."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "re", "im", "prob"])
        for k, c in enumerate(state.amplitudes):
            re, im = float(c.real), float(c.imag)
            writer.writerow([k, repr(re), repr(im), repr(re * re + im * im)])


def load_amplitudes(path: str) -> FockVector:
    """Read a vector previously written by save_amplitudes."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["k", "re", "im", "prob"]:
            raise DomainError(f"{path}: expected header 'k,re,im,prob'")
        amps = []
        for row in reader:
            if not row:
                continue
            k, re, im = int(row[0]), float(row[1]), float(row[2])
            if k != len(amps):
                raise DomainError(f"{path}: levels out of order at k={k}")
            amps.append(complex(re, im))
    arr = np.array(amps, dtype=np.complex128)
    return FockVector(arr, arr.shape[0], _tail_estimate(arr))
