"""Shared brute-force oracles for the test suite.

Everything here is built from scipy/numpy primitives (matrix exponential,
dense ladder matrices) with no code shared with the library's closed-form
routes, so agreement between the two is meaningful.
"""

import math

import numpy as np
import pytest
from scipy.linalg import expm


def ladder_down(dim: int) -> np.ndarray:
    """Annihilation operator matrix on a truncated number basis."""
    a = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        a[k - 1, k] = math.sqrt(k)
    return a


def displace_fock(n: int, alpha: complex, dim: int, pad: int = 40) -> np.ndarray:
    """D(alpha)|n> via the matrix exponential, computed with extra headroom
    and truncated back to dim."""
    big = dim + pad
    a = ladder_down(big)
    d = expm(alpha * a.conj().T - np.conj(alpha) * a)
    vec = np.zeros(big, dtype=complex)
    vec[n] = 1.0
    out = d @ vec
    return out[:dim]


def raise_vec(c: np.ndarray) -> np.ndarray:
    out = np.zeros_like(c)
    k = np.arange(1, c.shape[0])
    out[1:] = np.sqrt(k) * c[:-1]
    return out


def lower_vec(c: np.ndarray) -> np.ndarray:
    out = np.zeros_like(c)
    k = np.arange(1, c.shape[0])
    out[:-1] = np.sqrt(k) * c[1:]
    return out


def brute_state(family: str, photons: int, fock_n: int, alpha: complex,
                dim: int) -> np.ndarray:
    """Normalized photon-added/subtracted displaced Fock state, built solely
    from expm and exact ladder matrices."""
    vec = displace_fock(fock_n, alpha, dim)
    for _ in range(photons):
        vec = raise_vec(vec) if family == "padfs" else lower_vec(vec)
    norm = np.linalg.norm(vec)
    if norm < 1e-15:
        raise ValueError("state vanished")
    return vec / norm


def poisson_central_moments(lam: float, lmax: int) -> list[float]:
    """Central moments of a Poisson distribution, mu_0..mu_lmax."""
    mu = [1.0, 0.0]
    for c in range(1, lmax):
        mu.append(lam * sum(math.comb(c, j) * mu[j] for j in range(c)))
    return mu[: lmax + 1]


@pytest.fixture(scope="session")
def oracle_specs():
    """Moderate cross-family parameter set used by several test modules."""
    return [
        ("padfs", 1, 1, 0.8, 0.4),
        ("padfs", 2, 0, 1.5, 0.0),
        ("padfs", 2, 2, 2.0, 1.1),
        ("psdfs", 1, 1, 0.6, 2.0),
        ("psdfs", 2, 1, 1.2, 0.0),
        ("psdfs", 2, 2, 1.9, 0.9),
    ]
