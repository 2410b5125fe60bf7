"""Sliding-window filter engine.

Layout: the padded image is unpacked once into flat float64 planes (one per
channel plus one derived plane per distance route), and every window pair
(i, j) becomes a unit-stride row loop over those planes.  The loops carry no
branches, so LLVM vectorizes the polynomial and chromaticity routes; the
exact route stays scalar around the libm acos call, which is the honest
baseline the speedups are measured against.

Aggregate ordering sums include the self term j = i (zero everywhere except
under the minimax route, where acos(1) evaluates to the polynomial's a_0);
it is added first, then pairs in ascending j.  Pair values are always
evaluated in (lower index, upper index) orientation.  The scalar window
operations in ``filters`` mirror this arithmetic exactly, so the engine is
bit-identical to the naive per-window composition.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

# Strategy codes for the angular ordering term.
EXACT = 0
MINIMAX = 1
CHROMA = 2

# Minkowski codes: 2 and 1 are fast-pathed, 0 means general p.
_P2, _P1, _PGEN = 2, 1, 0


def _pcode(p: float) -> int:
    if p == 2.0:
        return _P2
    if p == 1.0:
        return _P1
    return _PGEN


# --------------------------------------------------------------------------
# Plane preparation over the padded grid.
# --------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _prep_angular(P, Ws, A1, A2, A3, G4, use_rn):
    """Angular-route planes: zero vectors replaced by the gray direction.

    G4 holds the squared norm (exact route) or its reciprocal square root
    (minimax route).
    """
    H, W = P.shape[0], P.shape[1]
    for r in range(H):
        k = r * Ws
        for c in range(W):
            a1 = P[r, c, 0]
            a2 = P[r, c, 1]
            a3 = P[r, c, 2]
            if a1 == 0.0 and a2 == 0.0 and a3 == 0.0:
                a1 = 1.0
                a2 = 1.0
                a3 = 1.0
            A1[k] = a1
            A2[k] = a2
            A3[k] = a3
            nsq = a1 * a1 + a2 * a2 + a3 * a3
            if use_rn:
                G4[k] = 1.0 / math.sqrt(nsq)
            else:
                G4[k] = nsq
            k += 1


@njit(cache=True, nogil=True)
def _prep_raw(P, Ws, X1, X2, X3):
    H, W = P.shape[0], P.shape[1]
    for r in range(H):
        k = r * Ws
        for c in range(W):
            X1[k] = P[r, c, 0]
            X2[k] = P[r, c, 1]
            X3[k] = P[r, c, 2]
            k += 1


@njit(cache=True, nogil=True)
def _prep_chroma(P, Ws, C1, C2, C3):
    H, W = P.shape[0], P.shape[1]
    third = 1.0 / 3.0
    for r in range(H):
        k = r * Ws
        for c in range(W):
            s = P[r, c, 0] + P[r, c, 1] + P[r, c, 2]
            if s == 0.0:
                C1[k] = third
                C2[k] = third
                C3[k] = third
            else:
                C1[k] = P[r, c, 0] / s
                C2[k] = P[r, c, 1] / s
                C3[k] = P[r, c, 2] / s
            k += 1


# --------------------------------------------------------------------------
# Pair row loops.  Each accumulates the (i, j) distance into both aggregate
# rows; the _s variants also record the value (center-column stash).
# --------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _pair_acos(a1i, a2i, a3i, nqi, a1j, a2j, a3j, nqj, N, aggi, aggj):
    for c in range(N):
        dot = a1i[c] * a1j[c] + a2i[c] * a2j[c] + a3i[c] * a3j[c]
        z = dot / math.sqrt(nqi[c] * nqj[c])
        z = min(max(z, 0.0), 1.0)
        d = math.acos(z)
        aggi[c] += d
        aggj[c] += d


@njit(cache=True, nogil=True)
def _pair_acos_s(a1i, a2i, a3i, nqi, a1j, a2j, a3j, nqj, N, aggi, aggj, sd):
    for c in range(N):
        dot = a1i[c] * a1j[c] + a2i[c] * a2j[c] + a3i[c] * a3j[c]
        z = dot / math.sqrt(nqi[c] * nqj[c])
        z = min(max(z, 0.0), 1.0)
        d = math.acos(z)
        aggi[c] += d
        aggj[c] += d
        sd[c] = d


@njit(cache=True, nogil=True)
def _pair_minimax(a1i, a2i, a3i, rni, a1j, a2j, a3j, rnj, N, aggi, aggj,
                  s0, s1, s2, s3, s4, c0, c1, c2, c3, c4):
    for c in range(N):
        dot = a1i[c] * a1j[c] + a2i[c] * a2j[c] + a3i[c] * a3j[c]
        z = dot * (rni[c] * rnj[c])
        z = min(max(z, 0.0), 1.0)
        t = math.sqrt(1.0 - z)
        pa = c0 + z * (c1 + z * (c2 + z * (c3 + z * c4)))
        ps = s0 + t * (s1 + t * (s2 + t * (s3 + t * s4)))
        f = np.float64(z >= 0.5)
        d = f * ps + (1.0 - f) * pa
        aggi[c] += d
        aggj[c] += d


@njit(cache=True, nogil=True)
def _pair_minimax_s(a1i, a2i, a3i, rni, a1j, a2j, a3j, rnj, N, aggi, aggj, sd,
                    s0, s1, s2, s3, s4, c0, c1, c2, c3, c4):
    for c in range(N):
        dot = a1i[c] * a1j[c] + a2i[c] * a2j[c] + a3i[c] * a3j[c]
        z = dot * (rni[c] * rnj[c])
        z = min(max(z, 0.0), 1.0)
        t = math.sqrt(1.0 - z)
        pa = c0 + z * (c1 + z * (c2 + z * (c3 + z * c4)))
        ps = s0 + t * (s1 + t * (s2 + t * (s3 + t * s4)))
        f = np.float64(z >= 0.5)
        d = f * ps + (1.0 - f) * pa
        aggi[c] += d
        aggj[c] += d
        sd[c] = d


@njit(cache=True, nogil=True)
def _pair_l2(x1i, x2i, x3i, x1j, x2j, x3j, N, aggi, aggj):
    for c in range(N):
        d1 = x1i[c] - x1j[c]
        d2 = x2i[c] - x2j[c]
        d3 = x3i[c] - x3j[c]
        d = math.sqrt(d1 * d1 + d2 * d2 + d3 * d3)
        aggi[c] += d
        aggj[c] += d


@njit(cache=True, nogil=True)
def _pair_l2_s(x1i, x2i, x3i, x1j, x2j, x3j, N, aggi, aggj, sd):
    for c in range(N):
        d1 = x1i[c] - x1j[c]
        d2 = x2i[c] - x2j[c]
        d3 = x3i[c] - x3j[c]
        d = math.sqrt(d1 * d1 + d2 * d2 + d3 * d3)
        aggi[c] += d
        aggj[c] += d
        sd[c] = d


@njit(cache=True, nogil=True)
def _pair_l1(x1i, x2i, x3i, x1j, x2j, x3j, N, aggi, aggj):
    for c in range(N):
        d = abs(x1i[c] - x1j[c]) + abs(x2i[c] - x2j[c]) + abs(x3i[c] - x3j[c])
        aggi[c] += d
        aggj[c] += d


@njit(cache=True, nogil=True)
def _pair_l1_s(x1i, x2i, x3i, x1j, x2j, x3j, N, aggi, aggj, sd):
    for c in range(N):
        d = abs(x1i[c] - x1j[c]) + abs(x2i[c] - x2j[c]) + abs(x3i[c] - x3j[c])
        aggi[c] += d
        aggj[c] += d
        sd[c] = d


@njit(cache=True, nogil=True)
def _pair_lp(x1i, x2i, x3i, x1j, x2j, x3j, N, aggi, aggj, p):
    invp = 1.0 / p
    for c in range(N):
        d = (abs(x1i[c] - x1j[c]) ** p + abs(x2i[c] - x2j[c]) ** p
             + abs(x3i[c] - x3j[c]) ** p) ** invp
        aggi[c] += d
        aggj[c] += d


@njit(cache=True, nogil=True)
def _pair_lp_s(x1i, x2i, x3i, x1j, x2j, x3j, N, aggi, aggj, sd, p):
    invp = 1.0 / p
    for c in range(N):
        d = (abs(x1i[c] - x1j[c]) ** p + abs(x2i[c] - x2j[c]) ** p
             + abs(x3i[c] - x3j[c]) ** p) ** invp
        aggi[c] += d
        aggj[c] += d
        sd[c] = d


# --------------------------------------------------------------------------
# Row-level building blocks.
# --------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _angular_pairs(G1, G2, G3, G4, self_term, scode, p, U, V, n, r, W, N, agg, AD, dc, stash,
                   s0, s1, s2, s3, s4, c0, c1, c2, c3, c4):
    """Fill the angular aggregate rows (and the center-column stash) for image
    row r.  agg[i] starts at the self term: the angular self-distance is zero
    except under the minimax route, where equal vectors map to fast_acos(1),
    the asin polynomial's constant term."""
    for i in range(n):
        for c in range(N):
            agg[i, c] = self_term
    if stash:
        for c in range(N):
            AD[dc, c] = self_term
    for i in range(n):
        bi = (r + U[i]) * W + V[i]
        g1i = G1[bi:bi + N]
        g2i = G2[bi:bi + N]
        g3i = G3[bi:bi + N]
        g4i = G4[bi:bi + N]
        for j in range(i + 1, n):
            bj = (r + U[j]) * W + V[j]
            g1j = G1[bj:bj + N]
            g2j = G2[bj:bj + N]
            g3j = G3[bj:bj + N]
            g4j = G4[bj:bj + N]
            if stash and (j == dc or i == dc):
                sd = AD[i] if j == dc else AD[j]
                if scode == EXACT:
                    _pair_acos_s(g1i, g2i, g3i, g4i, g1j, g2j, g3j, g4j, N, agg[i], agg[j], sd)
                elif scode == MINIMAX:
                    _pair_minimax_s(g1i, g2i, g3i, g4i, g1j, g2j, g3j, g4j, N, agg[i], agg[j],
                                    sd, s0, s1, s2, s3, s4, c0, c1, c2, c3, c4)
                elif p == 2.0:
                    _pair_l2_s(g1i, g2i, g3i, g1j, g2j, g3j, N, agg[i], agg[j], sd)
                elif p == 1.0:
                    _pair_l1_s(g1i, g2i, g3i, g1j, g2j, g3j, N, agg[i], agg[j], sd)
                else:
                    _pair_lp_s(g1i, g2i, g3i, g1j, g2j, g3j, N, agg[i], agg[j], sd, p)
            else:
                if scode == EXACT:
                    _pair_acos(g1i, g2i, g3i, g4i, g1j, g2j, g3j, g4j, N, agg[i], agg[j])
                elif scode == MINIMAX:
                    _pair_minimax(g1i, g2i, g3i, g4i, g1j, g2j, g3j, g4j, N, agg[i], agg[j],
                                  s0, s1, s2, s3, s4, c0, c1, c2, c3, c4)
                elif p == 2.0:
                    _pair_l2(g1i, g2i, g3i, g1j, g2j, g3j, N, agg[i], agg[j])
                elif p == 1.0:
                    _pair_l1(g1i, g2i, g3i, g1j, g2j, g3j, N, agg[i], agg[j])
                else:
                    _pair_lp(g1i, g2i, g3i, g1j, g2j, g3j, N, agg[i], agg[j], p)


@njit(cache=True, nogil=True)
def _minkowski_pairs(X1, X2, X3, p, U, V, n, r, W, N, agg, LD, dc, stash):
    """Fill the Minkowski aggregate rows (self term is 0) for image row r."""
    agg[:, :] = 0.0
    if stash:
        LD[dc, :] = 0.0
    for i in range(n):
        bi = (r + U[i]) * W + V[i]
        x1i = X1[bi:bi + N]
        x2i = X2[bi:bi + N]
        x3i = X3[bi:bi + N]
        for j in range(i + 1, n):
            bj = (r + U[j]) * W + V[j]
            x1j = X1[bj:bj + N]
            x2j = X2[bj:bj + N]
            x3j = X3[bj:bj + N]
            if stash and (j == dc or i == dc):
                sd = LD[i] if j == dc else LD[j]
                if p == 2.0:
                    _pair_l2_s(x1i, x2i, x3i, x1j, x2j, x3j, N, agg[i], agg[j], sd)
                elif p == 1.0:
                    _pair_l1_s(x1i, x2i, x3i, x1j, x2j, x3j, N, agg[i], agg[j], sd)
                else:
                    _pair_lp_s(x1i, x2i, x3i, x1j, x2j, x3j, N, agg[i], agg[j], sd, p)
            else:
                if p == 2.0:
                    _pair_l2(x1i, x2i, x3i, x1j, x2j, x3j, N, agg[i], agg[j])
                elif p == 1.0:
                    _pair_l1(x1i, x2i, x3i, x1j, x2j, x3j, N, agg[i], agg[j])
                else:
                    _pair_lp(x1i, x2i, x3i, x1j, x2j, x3j, N, agg[i], agg[j], p)


@njit(cache=True, nogil=True)
def _argmin_rows(val, n, N, bv, best):
    """Columnwise first-minimum index of val[:, c], branchless."""
    for c in range(N):
        bv[c] = val[0, c]
        best[c] = 0.0
    for i in range(1, n):
        fi = np.float64(i)
        for c in range(N):
            v = val[i, c]
            m = np.float64(v < bv[c])
            g = 1.0 - m
            bv[c] = m * v + g * bv[c]
            best[c] = m * fi + g * best[c]


@njit(cache=True, nogil=True)
def _gather_row(P, best, U, V, r, N, out):
    for c in range(N):
        b = int(best[c])
        out[r, c, 0] = P[r + U[b], c + V[b], 0]
        out[r, c, 1] = P[r + U[b], c + V[b], 1]
        out[r, c, 2] = P[r + U[b], c + V[b], 2]


@njit(cache=True, nogil=True)
def _argmin_product_rows(aggA, aggL, n, N, bv, best):
    """First minimum of aggA[i, c] * aggL[i, c] over i, columnwise."""
    for c in range(N):
        bv[c] = aggA[0, c] * aggL[0, c]
        best[c] = 0.0
    for i in range(1, n):
        fi = np.float64(i)
        for c in range(N):
            v = aggA[i, c] * aggL[i, c]
            m = np.float64(v < bv[c])
            g = 1.0 - m
            bv[c] = m * v + g * bv[c]
            best[c] = m * fi + g * best[c]


@njit(cache=True, nogil=True)
def _acwddf_select_rows(aggA, aggL, AD, LD, w0, w1, w2, n, N,
                        bd, b0, b1, b2, vd, v0, v1, v2):
    """One pass computing the DDF argmin and the three center-weighted DDF
    argmins (center weights w0+1, w1+1, w2+1) for every column."""
    for c in range(N):
        a = aggA[0, c]
        l = aggL[0, c]
        ad = AD[0, c]
        ld = LD[0, c]
        vd[c] = a * l
        v0[c] = (a + w0 * ad) * (l + w0 * ld)
        v1[c] = (a + w1 * ad) * (l + w1 * ld)
        v2[c] = (a + w2 * ad) * (l + w2 * ld)
        bd[c] = 0.0
        b0[c] = 0.0
        b1[c] = 0.0
        b2[c] = 0.0
    for i in range(1, n):
        fi = np.float64(i)
        for c in range(N):
            a = aggA[i, c]
            l = aggL[i, c]
            ad = AD[i, c]
            ld = LD[i, c]
            pd = a * l
            p0 = (a + w0 * ad) * (l + w0 * ld)
            p1 = (a + w1 * ad) * (l + w1 * ld)
            p2 = (a + w2 * ad) * (l + w2 * ld)
            m = np.float64(pd < vd[c])
            g = 1.0 - m
            vd[c] = m * pd + g * vd[c]
            bd[c] = m * fi + g * bd[c]
            m = np.float64(p0 < v0[c])
            g = 1.0 - m
            v0[c] = m * p0 + g * v0[c]
            b0[c] = m * fi + g * b0[c]
            m = np.float64(p1 < v1[c])
            g = 1.0 - m
            v1[c] = m * p1 + g * v1[c]
            b1[c] = m * fi + g * b1[c]
            m = np.float64(p2 < v2[c])
            g = 1.0 - m
            v2[c] = m * p2 + g * v2[c]
            b2[c] = m * fi + g * b2[c]


# --------------------------------------------------------------------------
# Whole-filter drivers over a row range [r0, r1).
# --------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _run_vmf(P, X1, X2, X3, p, U, V, n, W, N, out, r0, r1):
    agg = np.empty((n, N + 16))
    dummy = np.empty((1, N))
    bv = np.empty(N)
    best = np.empty(N)
    for r in range(r0, r1):
        _minkowski_pairs(X1, X2, X3, p, U, V, n, r, W, N, agg, dummy, 0, False)
        _argmin_rows(agg, n, N, bv, best)
        _gather_row(P, best, U, V, r, N, out)


@njit(cache=True, nogil=True)
def _run_bvdf(P, G1, G2, G3, G4, self_term, scode, p, U, V, n, W, N, out, r0, r1,
              s0, s1, s2, s3, s4, c0, c1, c2, c3, c4):
    agg = np.empty((n, N + 16))
    dummy = np.empty((1, N))
    bv = np.empty(N)
    best = np.empty(N)
    for r in range(r0, r1):
        _angular_pairs(G1, G2, G3, G4, self_term, scode, p, U, V, n, r, W, N, agg,
                       dummy, 0, False, s0, s1, s2, s3, s4, c0, c1, c2, c3, c4)
        _argmin_rows(agg, n, N, bv, best)
        _gather_row(P, best, U, V, r, N, out)


@njit(cache=True, nogil=True)
def _run_ddf(P, G1, G2, G3, G4, self_term, X1, X2, X3, scode, p, U, V, n, W, N, out, r0, r1,
             s0, s1, s2, s3, s4, c0, c1, c2, c3, c4):
    aggA = np.empty((n, N + 16))
    aggL = np.empty((n, N + 32))
    dummy = np.empty((1, N))
    bv = np.empty(N)
    best = np.empty(N)
    for r in range(r0, r1):
        _angular_pairs(G1, G2, G3, G4, self_term, scode, p, U, V, n, r, W, N, aggA,
                       dummy, 0, False, s0, s1, s2, s3, s4, c0, c1, c2, c3, c4)
        _minkowski_pairs(X1, X2, X3, p, U, V, n, r, W, N, aggL, dummy, 0, False)
        _argmin_product_rows(aggA, aggL, n, N, bv, best)
        _gather_row(P, best, U, V, r, N, out)


@njit(cache=True, nogil=True)
def _run_acwddf(P, G1, G2, G3, G4, self_term, X1, X2, X3, scode, p, U, V, n, W, N,
                lam, threshold, slope, intercept, out, r0, r1,
                s0, s1, s2, s3, s4, c0, c1, c2, c3, c4):
    aggA = np.empty((n, N + 16))
    aggL = np.empty((n, N + 32))
    AD = np.empty((n, N + 48))
    LD = np.empty((n, N + 64))
    ddf_best = np.empty(N)
    cw_best = np.empty((3, N + 16))
    scratch = np.empty((4, N + 16))
    dc = (n - 1) // 2
    w0 = np.float64(n - 2 * lam + 2 - 1)
    w1 = np.float64(n - 2 * (lam + 1) + 2 - 1)
    w2 = np.float64(n - 2 * (lam + 2) + 2 - 1)
    for r in range(r0, r1):
        _angular_pairs(G1, G2, G3, G4, self_term, scode, p, U, V, n, r, W, N, aggA,
                       AD, dc, True, s0, s1, s2, s3, s4, c0, c1, c2, c3, c4)
        _minkowski_pairs(X1, X2, X3, p, U, V, n, r, W, N, aggL, LD, dc, True)
        _acwddf_select_rows(aggA, aggL, AD, LD, w0, w1, w2, n, N,
                            ddf_best, cw_best[0], cw_best[1], cw_best[2],
                            scratch[0], scratch[1], scratch[2], scratch[3])
        for c in range(N):
            s_val = 0.0
            for t in range(3):
                y = int(cw_best[t, c])
                a = AD[y, c]
                if scode == CHROMA:
                    a = slope * a + intercept
                s_val += a * LD[y, c]
            if s_val > threshold:
                b = int(ddf_best[c])
            else:
                b = dc
            out[r, c, 0] = P[r + U[b], c + V[b], 0]
            out[r, c, 1] = P[r + U[b], c + V[b], 1]
            out[r, c, 2] = P[r + U[b], c + V[b], 2]


# --------------------------------------------------------------------------
# Python-side orchestration.
# --------------------------------------------------------------------------

def _offsets(size: int) -> tuple:
    n = size * size
    U = np.empty(n, dtype=np.int64)
    V = np.empty(n, dtype=np.int64)
    for i in range(n):
        U[i] = i // size
        V[i] = i % size
    return U, V


def _padded_coeffs(table) -> tuple:
    """Coefficient tuples padded to degree 4; trailing zeros leave nested
    multiplication bit-identical to the lower-degree evaluation."""
    cs = table.asin_poly.coefficients
    ca = table.acos_poly.coefficients
    pad = lambda t: tuple(t) + (0.0,) * (5 - len(t))
    return pad(cs), pad(ca)


class EnginePlanes:
    """Per-image preprocessed planes shared by the row drivers."""

    def __init__(self, pixels: np.ndarray, size: int, pad_mode: str,
                 scode: int, table, need_minkowski: bool):
        half = size // 2
        P = np.pad(pixels, ((half, half), (half, half), (0, 0)), mode=pad_mode)
        H, W = P.shape[0], P.shape[1]
        # Padded row stride: the natural stride of a 512-wide image is about
        # one L1 set period, which made the three window rows of every plane
        # collide in the same cache sets and the pair loops bimodally slow.
        Ws = W + 16
        self.P = P
        self.W = Ws
        self.scode = scode
        flat = H * Ws
        if table is None:
            cs, ca = (0.0,) * 5, (0.0,) * 5
        else:
            cs, ca = _padded_coeffs(table)
        self.cs, self.ca = cs, ca
        # self-distance: fast_acos(1) = asin constant term under minimax,
        # exactly zero for the exact and chromaticity routes
        self.self_term = cs[0] if scode == MINIMAX else 0.0
        if scode == CHROMA:
            self.G1 = np.empty(flat)
            self.G2 = np.empty(flat)
            self.G3 = np.empty(flat)
            self.G4 = self.G1  # unused by the chroma pair loops
            _prep_chroma(P, Ws, self.G1, self.G2, self.G3)
        elif scode in (EXACT, MINIMAX):
            self.G1 = np.empty(flat)
            self.G2 = np.empty(flat)
            self.G3 = np.empty(flat)
            self.G4 = np.empty(flat)
            _prep_angular(P, Ws, self.G1, self.G2, self.G3, self.G4, scode == MINIMAX)
        else:
            self.G1 = self.G2 = self.G3 = self.G4 = np.empty(0)
        if need_minkowski:
            self.X1 = np.empty(flat)
            self.X2 = np.empty(flat)
            self.X3 = np.empty(flat)
            _prep_raw(P, Ws, self.X1, self.X2, self.X3)
        else:
            self.X1 = self.X2 = self.X3 = np.empty(0)


def run_rows(family: str, planes: EnginePlanes, p: float, size: int,
             out: np.ndarray, r0: int, r1: int,
             lam: int = 2, threshold: float = 10.8,
             slope: float = 0.0, intercept: float = 0.0) -> None:
    """Run one filter family over output rows [r0, r1)."""
    U, V = _offsets(size)
    n = size * size
    N = out.shape[1]
    pl = planes
    cs, ca = pl.cs, pl.ca
    if family == "vmf":
        _run_vmf(pl.P, pl.X1, pl.X2, pl.X3, p, U, V, n, pl.W, N, out, r0, r1)
    elif family == "bvdf":
        _run_bvdf(pl.P, pl.G1, pl.G2, pl.G3, pl.G4, pl.self_term, pl.scode, p,
                  U, V, n, pl.W, N, out, r0, r1, *cs, *ca)
    elif family == "ddf":
        _run_ddf(pl.P, pl.G1, pl.G2, pl.G3, pl.G4, pl.self_term, pl.X1, pl.X2, pl.X3,
                 pl.scode, p, U, V, n, pl.W, N, out, r0, r1, *cs, *ca)
    elif family == "acwddf":
        _run_acwddf(pl.P, pl.G1, pl.G2, pl.G3, pl.G4, pl.self_term, pl.X1, pl.X2, pl.X3,
                    pl.scode, p, U, V, n, pl.W, N, lam, threshold, slope, intercept,
                    out, r0, r1, *cs, *ca)
    else:
        raise ValueError(f"unknown engine family {family!r}")
