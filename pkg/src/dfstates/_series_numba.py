"""Numba-compiled series kernels.

Same summation order and expression grouping as `_series_numpy`, so the two
backends agree to rounding error; test_backends pins that equivalence.
Importing this module requires numba.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _pair_sum(subtract, n, ops, p, pp, q, r, amag, theta, asq,
              rel_tol, max_terms, consecutive_small):
    m0 = 0
    cand = pp - p + r - q
    if cand > m0:
        m0 = cand
    if subtract:
        cand = ops + r - p
    else:
        cand = r - ops - p
    if cand > m0:
        m0 = cand
    m2 = m0 + p - pp - r + q
    pa = (n - pp) + m0
    pas = (n - p) + m2
    sign = -1.0 if ((p + pp) & 1) == 1 else 1.0
    ang = theta * (pa - pas)
    phase = math.cos(ang) + 1j * math.sin(ang)
    if subtract:
        lnum = math.lgamma(m0 + p + 1) + math.lgamma(m0 + p - r + q + 1)
        lden = (math.lgamma(m0 + 1) + math.lgamma(m2 + 1)
                + math.lgamma(m0 + p - ops - r + 1))
    else:
        lnum = math.lgamma(m0 + p + ops + 1) + math.lgamma(m0 + p + ops - r + q + 1)
        lden = (math.lgamma(m0 + 1) + math.lgamma(m2 + 1)
                + math.lgamma(m0 + p + ops - r + 1))
    lpre = (2.0 * math.lgamma(n + 1) - math.lgamma(p + 1) - math.lgamma(n - p + 1)
            - math.lgamma(pp + 1) - math.lgamma(n - pp + 1))
    if amag == 0.0:
        if pa + pas != 0:
            return 0.0 + 0.0j, 1, True
        mag = math.exp(lpre - math.lgamma(n + 1) + lnum - lden)
        return (sign * mag) * phase, 1, True
    mag0 = math.exp(lpre - math.lgamma(n + 1) + (pa + pas) * math.log(amag)
                    - asq + lnum - lden)
    w = 1.0
    cs = 0.0
    count = 0
    terms = 0
    converged = False
    for j in range(max_terms):
        if j > 0:
            mm = m0 + j
            if subtract:
                num = (mm + p) * (mm + p - r + q)
                dn = mm * (mm + p - pp - r + q) * (mm + p - ops - r)
            else:
                num = (mm + p + ops) * (mm + p + ops - r + q)
                dn = mm * (mm + p - pp - r + q) * (mm + p + ops - r)
            w = w * (asq * num / dn)
        cs = cs + w
        terms = j + 1
        thr = rel_tol * cs
        if thr < 1e-300:
            thr = 1e-300
        if w < thr:
            count += 1
            if count >= consecutive_small:
                converged = True
                break
        else:
            count = 0
    return (sign * (mag0 * cs)) * phase, terms, converged


@njit(cache=True, nogil=True)
def moment_sum(subtract, n, ops, q, r, amag, theta, rel_tol, max_terms, consecutive_small):
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


@njit(cache=True, nogil=True)
def husimi_amp(subtract, n, ops, amag, theta_a, bmag, theta_b, nterms):
    asq = amag * amag
    bsq = bmag * bmag
    la = math.log(amag) if amag > 0.0 else 0.0
    lb = math.log(bmag) if bmag > 0.0 else 0.0
    half = -0.5 * (asq + bsq) - 0.5 * math.lgamma(n + 1)
    total = 0.0 + 0.0j
    for p in range(n + 1):
        if subtract:
            kappa = p - ops
            mstart = ops - p
            if mstart < 0:
                mstart = 0
        else:
            kappa = p + ops
            mstart = 0
        sign = -1.0 if ((n - p) & 1) == 1 else 1.0
        lc = math.lgamma(n + 1) - math.lgamma(p + 1) - math.lgamma(n - p + 1)
        for m in range(mstart, mstart + nterms):
            ea = (n - p) + m
            eb = m + kappa
            if amag == 0.0 and ea != 0:
                continue
            if bmag == 0.0 and eb != 0:
                continue
            lw = lc + half + ea * la + eb * lb - math.lgamma(m + 1)
            if subtract:
                lw += math.lgamma(m + p + 1) - math.lgamma(m + p - ops + 1)
            ang = (m - (n - p)) * theta_a - eb * theta_b
            mag = sign * math.exp(lw)
            total = total + (mag * math.cos(ang) + 1j * (mag * math.sin(ang)))
    return total


@njit(cache=True, nogil=True)
def husimi_grid(subtract, n, ops, amag, theta_a, re_pts, im_pts, nterms):
    out = np.empty((re_pts.shape[0], im_pts.shape[0]), dtype=np.complex128)
    for i in range(re_pts.shape[0]):
        for j in range(im_pts.shape[0]):
            bmag = math.hypot(re_pts[i], im_pts[j])
            theta_b = math.atan2(im_pts[j], re_pts[i])
            out[i, j] = husimi_amp(subtract, n, ops, amag, theta_a,
                                   bmag, theta_b, nterms)
    return out
