"""Pure-numpy series kernels.

These are the reference implementations of the three hot loops: the moment
triple sum, the coherent-amplitude (Husimi) series at a single point, and the
same series over a rectangular grid.  `_series_numba` mirrors the first two
with identical expression grouping so both backends agree to rounding; the
grid routine here trades the per-point loop for one polynomial evaluation.

All prefactors involving factorials are assembled once per (p, p') pair in
log space; the m-series then advances by exact small-integer ratios, so no
per-term lgamma error accumulates into the sum.
"""

from __future__ import annotations

import math

import numpy as np

_BLOCK0 = 256


def _pair_start(subtract: bool, n: int, ops: int, p: int, pp: int, q: int, r: int) -> int:
    """First m index whose series term is structurally nonzero.

    Terms below it carry a reciprocal factorial of a negative integer in one
    of the denominators and vanish exactly.
    """
    if subtract:
        floor = ops + r - p
    else:
        floor = r - ops - p
    return max(0, pp - p + r - q, floor)


def moment_sum(subtract, n, ops, q, r, amag, theta, rel_tol, max_terms, consecutive_small):
    """Unnormalized ⟨state|a†^q a^r|state⟩ series over (p, p', m).

    Returns (value, terms_summed, converged).  The value carries every
    prefactor including 1/n! and e^{-|alpha|^2}, so the q = r = 0 case is the
    squared norm of the unnormalized state.
    """
    asq = amag * amag
    total = 0.0 + 0.0j
    terms_total = 0
    converged = True
    for p in range(n + 1):
        for pp in range(n + 1):
            val, nt, ok = _pair_sum(
                subtract, n, ops, p, pp, q, r, amag, theta, asq,
                rel_tol, max_terms, consecutive_small,
            )
            total = total + val
            terms_total += nt
            converged = converged and ok
    return total, terms_total, converged


def _pair_sum(subtract, n, ops, p, pp, q, r, amag, theta, asq,
              rel_tol, max_terms, consecutive_small):
    lg = math.lgamma
    m0 = _pair_start(subtract, n, ops, p, pp, q, r)
    m2 = m0 + p - pp - r + q
    pa = (n - pp) + m0
    pas = (n - p) + m2
    sign = -1.0 if ((p + pp) & 1) else 1.0
    ang = theta * (pa - pas)
    phase = complex(math.cos(ang), math.sin(ang))
    if subtract:
        lnum = lg(m0 + p + 1) + lg(m0 + p - r + q + 1)
        lden = lg(m0 + 1) + lg(m2 + 1) + lg(m0 + p - ops - r + 1)
    else:
        lnum = lg(m0 + p + ops + 1) + lg(m0 + p + ops - r + q + 1)
        lden = lg(m0 + 1) + lg(m2 + 1) + lg(m0 + p + ops - r + 1)
    lpre = (2.0 * lg(n + 1) - lg(p + 1) - lg(n - p + 1)
            - lg(pp + 1) - lg(n - pp + 1))
    if amag == 0.0:
        if pa + pas != 0:
            return 0.0 + 0.0j, 1, True
        mag = math.exp(lpre - lg(n + 1) + lnum - lden)
        return (sign * mag) * phase, 1, True
    mag0 = math.exp(lpre - lg(n + 1) + (pa + pas) * math.log(amag)
                    - asq + lnum - lden)

    size = _BLOCK0
    while True:
        size = min(size, max_terms)
        mm = np.arange(1, size, dtype=np.int64) + m0
        if subtract:
            num = (mm + p) * (mm + p - r + q)
            dn = mm * (mm + p - pp - r + q) * (mm + p - ops - r)
        else:
            num = (mm + p + ops) * (mm + p + ops - r + q)
            dn = mm * (mm + p - pp - r + q) * (mm + p + ops - r)
        ratios = asq * num / dn
        w = np.cumprod(np.concatenate((np.ones(1), ratios)))
        cs = np.cumsum(w)
        small = w < np.maximum(rel_tol * cs, 1e-300)
        runs = np.convolve(small.astype(np.float64),
                           np.ones(consecutive_small), mode="valid")
        hits = np.nonzero(runs == consecutive_small)[0]
        if hits.size:
            stop = hits[0] + consecutive_small - 1
            return (sign * (mag0 * cs[stop])) * phase, stop + 1, True
        if size >= max_terms:
            return (sign * (mag0 * cs[-1])) * phase, size, False
        size *= 4


def husimi_terms(amag, bmag, n, photons):
    """Series length that bounds the coherent-overlap truncation error far
    below 1e-10 for any point inside the supported envelope."""
    z = amag * bmag
    return int(math.ceil(z + 10.0 * math.sqrt(z) + 30.0)) + n + photons


def husimi_amp(subtract, n, ops, amag, theta_a, bmag, theta_b, nterms):
    """⟨beta|state⟩ for the unnormalized state, summed term by term.

    Includes e^{-(|alpha|^2+|beta|^2)/2} and 1/sqrt(n!); dividing |result|^2
    by the unnormalized squared norm gives pi times the Husimi Q value.
    """
    lg = math.lgamma
    asq = amag * amag
    bsq = bmag * bmag
    la = math.log(amag) if amag > 0.0 else 0.0
    lb = math.log(bmag) if bmag > 0.0 else 0.0
    half = -0.5 * (asq + bsq) - 0.5 * lg(n + 1)
    total = 0.0 + 0.0j
    for p in range(n + 1):
        kappa = p + ops if not subtract else p - ops
        mstart = 0 if not subtract else max(0, ops - p)
        sign = -1.0 if ((n - p) & 1) else 1.0
        lc = lg(n + 1) - lg(p + 1) - lg(n - p + 1)
        for m in range(mstart, mstart + nterms):
            ea = (n - p) + m
            eb = m + kappa
            if amag == 0.0 and ea != 0:
                continue
            if bmag == 0.0 and eb != 0:
                continue
            lw = lc + half + ea * la + eb * lb - lg(m + 1)
            if subtract:
                lw += lg(m + p + 1) - lg(m + p - ops + 1)
            ang = (m - (n - p)) * theta_a - eb * theta_b
            mag = sign * math.exp(lw)
            total = total + complex(mag * math.cos(ang), mag * math.sin(ang))
    return total


def husimi_grid(subtract, n, ops, amag, theta_a, re_pts, im_pts, nterms):
    """⟨beta|state⟩ on a rectangular beta grid, via one polynomial in beta*.

    The beta-independent part of every series term is collected into a
    coefficient array indexed by the power of beta*, then evaluated with
    Horner's rule per grid point.  Intermediate values stay finite for
    |alpha|·|beta| up to ~700, far beyond the supported envelope.
    """
    from scipy.special import gammaln

    asq = amag * amag
    maxdeg = 0
    for p in range(n + 1):
        kappa = p + ops if not subtract else p - ops
        mstart = 0 if not subtract else max(0, ops - p)
        maxdeg = max(maxdeg, mstart + nterms - 1 + kappa)
    coef = np.zeros(maxdeg + 1, dtype=np.complex128)
    lgn = math.lgamma(n + 1)
    for p in range(n + 1):
        kappa = p + ops if not subtract else p - ops
        mstart = 0 if not subtract else max(0, ops - p)
        sign = -1.0 if ((n - p) & 1) else 1.0
        lc = lgn - math.lgamma(p + 1) - math.lgamma(n - p + 1)
        if amag == 0.0:
            # only the p = n, m = 0 term survives (zero alpha exponent)
            if p == n:
                lw = lc - 0.5 * lgn - 0.5 * asq
                if subtract:
                    if mstart != 0:
                        continue
                    lw += math.lgamma(p + 1) - math.lgamma(p - ops + 1)
                coef[kappa] += sign * math.exp(lw)
            continue
        m = np.arange(mstart, mstart + nterms, dtype=np.int64)
        lw = (lc - 0.5 * lgn - 0.5 * asq
              + ((n - p) + m) * math.log(amag) - gammaln(m + 1))
        if subtract:
            lw = lw + gammaln(m + p + 1) - gammaln(m + p - ops + 1)
        ang = (m - (n - p)) * theta_a
        coef[m + kappa] += sign * np.exp(lw) * np.exp(1j * ang)
    bgrid = re_pts[:, None] + 1j * im_pts[None, :]
    vals = np.polynomial.polynomial.polyval(np.conj(bgrid), coef)
    bsq = bgrid.real ** 2 + bgrid.imag ** 2
    return vals * np.exp(-0.5 * bsq)
