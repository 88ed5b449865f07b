"""Integer and float inner loops over encoded coset grids.

Cells are encoded per coordinate as ``u = key * p**r`` (an integer in
``[0, p**(s + r))`` for a function at scale ``s``) and combined across
coordinates as ``sum_l u_l * W**l``.  Truncating a fine cell to a coarser
scale is ``u % p**(s_coarse + r)``.

Every kernel has a numba version and a pure-numpy version with identical
results.  Set ``PADIC_WAVELETS_NO_NUMBA=1`` to force the numpy path.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get("PADIC_WAVELETS_NO_NUMBA", "") not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"


def _maybe_njit(fn):
    if HAS_NUMBA:
        return numba.njit(nogil=True, cache=True)(fn)
    return fn


# ---------------------------------------------------------------------------
# shared scalar helpers


@_maybe_njit
def _combine_row(codes, row, mod, W):
    t = 0
    w = 1
    for l in range(codes.shape[1]):
        t += (codes[row, l] % mod) * w
        w *= W
    return t


@_maybe_njit
def _bsearch(arr, lo, hi, key):
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo


@_maybe_njit
def _reduce_hist(hist, out, p, M):
    # reduce counts over Z/p^M onto the power basis of Q(zeta_{p^M})
    P = hist.shape[0]
    if M == 0:
        out[0] = hist[0]
        return
    step = P // p
    f = P - step
    for e in range(f):
        out[e] = hist[e]
    for e in range(f, P):
        c = hist[e]
        if c != 0:
            base = e - f
            for i in range(p - 1):
                out[base + i * step] -= c


# ---------------------------------------------------------------------------
# pairwise root-of-unity histograms (Gram scans)


@_maybe_njit
def _join_matches(codes, exps, owner, cell_mod, ckeys, cidx, t, W, P, F):
    # keys (a * F + b) * P + e for every (fine cell, coarse cell) match at modulus t;
    # ckeys/cidx are the sorted codes and cell ids of the cells at modulus t
    n = owner.shape[0]
    nc = ckeys.shape[0]
    cap = max(n, 16)
    out = np.empty(cap, dtype=np.int64)
    m = 0
    for f in range(n):
        if cell_mod[f] < t:
            continue
        key = _combine_row(codes, f, t, W)
        lo = _bsearch(ckeys, 0, nc, key)
        while lo < nc and ckeys[lo] == key:
            c = cidx[lo]
            lo += 1
            fi = owner[f]
            cj = owner[c]
            if cell_mod[f] == t and fi > cj:
                continue  # equal-scale pairs are counted once, from the lower index
            if fi <= cj:
                e = (exps[f] - exps[c]) % P
                pk = (fi * F + cj) * P + e
            else:
                e = (exps[c] - exps[f]) % P
                pk = (cj * F + fi) * P + e
            if m == cap:
                cap *= 2
                grown = np.empty(cap, dtype=np.int64)
                grown[:m] = out[:m]
                out = grown
            out[m] = pk
            m += 1
    return out[:m]


@_maybe_njit
def _reduce_sorted(keys, P, F, p, M):
    # run-length histogram per pair over sorted keys, reduced mod the cyclotomic polynomial
    f = P - P // p if M > 0 else 1
    total = keys.shape[0]
    cap = 16
    out_pairs = np.empty((cap, 2), dtype=np.int64)
    out_vals = np.empty((cap, f), dtype=np.int64)
    n_out = 0
    hist = np.zeros(P, dtype=np.int64)
    red = np.zeros(f, dtype=np.int64)
    i = 0
    while i < total:
        pid = keys[i] // P
        while i < total and keys[i] // P == pid:
            hist[keys[i] % P] += 1
            i += 1
        for e in range(f):
            red[e] = 0
        _reduce_hist(hist, red, p, M)
        for e in range(P):
            hist[e] = 0
        nonzero = False
        for e in range(f):
            if red[e] != 0:
                nonzero = True
                break
        if not nonzero:
            continue
        if n_out == cap:
            cap *= 2
            np2 = np.empty((cap, 2), dtype=np.int64)
            nv2 = np.empty((cap, f), dtype=np.int64)
            np2[:n_out] = out_pairs[:n_out]
            nv2[:n_out] = out_vals[:n_out]
            out_pairs = np2
            out_vals = nv2
        out_pairs[n_out, 0] = pid // F
        out_pairs[n_out, 1] = pid % F
        for e in range(f):
            out_vals[n_out, e] = red[e]
        n_out += 1
    return out_pairs[:n_out].copy(), out_vals[:n_out].copy()


def gram_pairs_numba(codes, combined, exps, offsets, mods, W, p, M):
    """All pairs ``i <= j`` whose reduced root histogram is nonzero.

    Returns ``(pairs, values)``: ``values[k]`` are the integer power-basis
    coefficients of ``sum_cells zeta**(e_i - e_j)`` over the overlap of
    functions ``pairs[k]``.
    """
    if not HAS_NUMBA:
        raise RuntimeError("numba is not available")
    F = offsets.shape[0] - 1
    P = p**M
    owner = np.repeat(np.arange(F, dtype=np.int64), np.diff(offsets))
    cell_mod = mods[owner]
    W, P64, F64 = np.int64(W), np.int64(P), np.int64(F)
    parts = []
    for t in np.unique(mods):
        sel = np.nonzero(cell_mod == t)[0]
        order = np.argsort(combined[sel], kind="stable")
        cidx = sel[order]
        parts.append(_join_matches(codes, exps, owner, cell_mod, combined[cidx], cidx, t, W, P64, F64))
    keys = np.sort(np.concatenate(parts)) if parts else np.empty(0, dtype=np.int64)
    return _reduce_sorted(keys, P64, F64, np.int64(p), np.int64(M))


def _combine(codes, mod, W):
    out = np.zeros(codes.shape[0], dtype=np.int64)
    w = 1
    for l in range(codes.shape[1]):
        out += (codes[:, l] % mod) * w
        w *= W
    return out


def gram_pairs_numpy(codes, combined, exps, offsets, mods, W, p, M):
    """Vectorised equivalent of :func:`gram_pairs_numba` (a sort-merge join per scale)."""
    F = offsets.shape[0] - 1
    P = p**M
    f = P - P // p if M > 0 else 1
    owner = np.repeat(np.arange(F, dtype=np.int64), np.diff(offsets))
    cell_mod = mods[owner]
    keys = []
    for t in np.unique(mods):
        coarse_sel = np.nonzero(cell_mod == t)[0]
        fine_sel = np.nonzero(cell_mod >= t)[0]
        if coarse_sel.size == 0 or fine_sel.size == 0:
            continue
        order = np.argsort(combined[coarse_sel], kind="stable")
        coarse_sorted = coarse_sel[order]
        ckeys = combined[coarse_sorted]
        trunc = _combine(codes[fine_sel], t, W)
        lo = np.searchsorted(ckeys, trunc, "left")
        hi = np.searchsorted(ckeys, trunc, "right")
        counts = hi - lo
        total = int(counts.sum())
        if total == 0:
            continue
        rep_f = np.repeat(fine_sel, counts)
        starts = np.repeat(lo, counts)
        firsts = np.repeat(np.cumsum(counts) - counts, counts)
        match_c = coarse_sorted[starts + (np.arange(total) - firsts)]
        fi = owner[rep_f]
        cj = owner[match_c]
        keep = (cell_mod[rep_f] > t) | (fi <= cj)
        rep_f, match_c, fi, cj = rep_f[keep], match_c[keep], fi[keep], cj[keep]
        a = np.minimum(fi, cj)
        b = np.maximum(fi, cj)
        e = np.where(fi == a, exps[rep_f] - exps[match_c], exps[match_c] - exps[rep_f]) % P
        keys.append((a * F + b) * P + e)
    if not keys:
        return np.empty((0, 2), dtype=np.int64), np.empty((0, f), dtype=np.int64)
    allkeys = np.concatenate(keys)
    uniq, cnt = np.unique(allkeys, return_counts=True)
    pair_ids = uniq // P
    e = uniq % P
    pairs_u, inv = np.unique(pair_ids, return_inverse=True)
    hist = np.zeros((pairs_u.size, P), dtype=np.int64)
    np.add.at(hist, (inv, e), cnt)
    if M == 0:
        red = hist
    else:
        step = P // p
        red = hist[:, :f].copy()
        for i in range(p - 1):
            red[:, i * step : (i + 1) * step] -= hist[:, f:]
    nz = np.any(red != 0, axis=1)
    pairs = np.stack([pairs_u[nz] // F, pairs_u[nz] % F], axis=1).astype(np.int64)
    return pairs, red[nz].astype(np.int64)


# ---------------------------------------------------------------------------
# brute-force float inner product over every coset of a box


@_maybe_njit
def _oracle_loop(f_comb, f_vals, f_mod, g_comb, g_vals, g_mod, d, W):
    total = 0j
    n = 1
    for _ in range(d):
        n *= W
    nf = f_comb.shape[0]
    ng = g_comb.shape[0]
    for idx in range(n):
        rest = idx
        kf = 0
        kg = 0
        w = 1
        for l in range(d):
            u = rest % W
            rest //= W
            kf += (u % f_mod) * w
            kg += (u % g_mod) * w
            w *= W
        a = _bsearch(f_comb, 0, nf, kf)
        if a < nf and f_comb[a] == kf:
            b = _bsearch(g_comb, 0, ng, kg)
            if b < ng and g_comb[b] == kg:
                gv = g_vals[b]
                total += f_vals[a] * (gv.real - 1j * gv.imag)
    return total


def oracle_inner_numba(f_comb, f_vals, f_mod, g_comb, g_vals, g_mod, d, W) -> complex:
    """Unnormalised ``sum_x f(x) conj(g(x))`` over all ``W**d`` fine cosets."""
    if not HAS_NUMBA:
        raise RuntimeError("numba is not available")
    return complex(
        _oracle_loop(f_comb, f_vals, np.int64(f_mod), g_comb, g_vals, np.int64(g_mod), np.int64(d), np.int64(W))
    )


def oracle_inner_numpy(f_comb, f_vals, f_mod, g_comb, g_vals, g_mod, d, W) -> complex:
    idx = np.arange(W**d, dtype=np.int64)
    coords = np.empty((idx.size, d), dtype=np.int64)
    rest = idx
    for l in range(d):
        coords[:, l] = rest % W
        rest = rest // W
    kf = _combine(coords, f_mod, W)
    kg = _combine(coords, g_mod, W)
    total = 0j
    if f_comb.size == 0 or g_comb.size == 0:
        return total
    a = np.minimum(np.searchsorted(f_comb, kf), f_comb.size - 1)
    b = np.minimum(np.searchsorted(g_comb, kg), g_comb.size - 1)
    hit = (f_comb[a] == kf) & (g_comb[b] == kg)
    return complex(np.sum(f_vals[a[hit]] * np.conj(g_vals[b[hit]])))


def gram_pairs(*args):
    return gram_pairs_numba(*args) if USE_NUMBA else gram_pairs_numpy(*args)


def oracle_inner(*args) -> complex:
    return oracle_inner_numba(*args) if USE_NUMBA else oracle_inner_numpy(*args)
