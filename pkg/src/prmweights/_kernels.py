"""Compiled inner loops for exhaustive and sampled enumeration.

Messages are coefficient vectors over the rows of a generator matrix G
(K x n, field encodings). Only normalized messages are enumerated: the
first nonzero entry is 1. They are indexed in a fixed order: by position
of the leading 1, then lexicographically on the remaining entries with the
last entry varying fastest. Every routine here is pure and single threaded;
parallelism is handled by the caller on disjoint chunk ranges.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _zero_count(cw):
    z = 0
    for v in cw:
        if v == 0:
            z += 1
    return z


@njit(cache=True)
def run_chunks(G, M, D, add, mul, neg, inv_last, leads, highs, nhigh, nlow, bases,
               q, floor, collect_cap):
    """Zero-count histogram over a list of chunks.

    Chunk c fixes the leading position ``leads[c]`` and the ``nhigh[c]``
    entries right after it to the base-q digits of ``highs[c]``; the last
    ``nlow[c]`` entries range freely. The final entry is resolved in one
    pass over the points: for each point, at most one value of that entry
    (or every value) makes the codeword vanish there.

    Returns (hist, first, coll_idx, coll_z, ncoll, overflow) where hist[z]
    counts messages with z zeros, first[z] is the smallest index attaining
    z (-1 if none), and messages with z >= floor are collected in index
    order up to collect_cap.
    """
    K, n = G.shape
    hist = np.zeros(n + 1, dtype=np.int64)
    first = np.full(n + 1, -1, dtype=np.int64)
    coll_idx = np.empty(collect_cap, dtype=np.int64)
    coll_z = np.empty(collect_cap, dtype=np.int64)
    ncoll = 0
    overflow = False
    cw = np.empty(n, dtype=np.int64)
    cnt = np.empty(q, dtype=np.int64)
    digits = np.zeros(K, dtype=np.int64)
    for c in range(leads.shape[0]):
        lead = leads[c]
        H = nhigh[c]
        L = nlow[c]
        base = bases[c]
        for P in range(n):
            cw[P] = M[lead, 1, P]
        hv = highs[c]
        for t in range(H - 1, -1, -1):
            pos = lead + 1 + t
            dgt = hv % q
            hv //= q
            if dgt:
                for P in range(n):
                    cw[P] = add[cw[P], M[pos, dgt, P]]
        if L == 0:
            z = _zero_count(cw)
            hist[z] += 1
            if first[z] < 0:
                first[z] = base
            if z >= floor:
                if ncoll < collect_cap:
                    coll_idx[ncoll] = base
                    coll_z[ncoll] = z
                    ncoll += 1
                else:
                    overflow = True
            continue
        lo_start = K - L
        for t in range(lo_start, K - 1):
            digits[t] = 0
        nprefix = 1
        for _ in range(L - 1):
            nprefix *= q
        for pref in range(nprefix):
            for v in range(q):
                cnt[v] = 0
            always = 0
            for P in range(n):
                r = inv_last[P]
                v = cw[P]
                if r == 0:
                    if v == 0:
                        always += 1
                else:
                    cnt[mul[neg[v], r]] += 1
            idx0 = base + pref * q
            for v in range(q):
                z = cnt[v] + always
                hist[z] += 1
                if first[z] < 0:
                    first[z] = idx0 + v
                if z >= floor:
                    if ncoll < collect_cap:
                        coll_idx[ncoll] = idx0 + v
                        coll_z[ncoll] = z
                        ncoll += 1
                    else:
                        overflow = True
            # odometer step on positions lo_start .. K-2
            pos = K - 2
            while pos >= lo_start:
                old = digits[pos]
                for P in range(n):
                    cw[P] = add[cw[P], D[pos, old, P]]
                if old == q - 1:
                    digits[pos] = 0
                    pos -= 1
                else:
                    digits[pos] = old + 1
                    break
    return hist, first, coll_idx[:ncoll].copy(), coll_z[:ncoll].copy(), ncoll, overflow


@njit(cache=True)
def eval_messages(msgs, M, add):
    """Codewords for a batch of messages: row b is sum_j M[j, msgs[b, j]]."""
    B, K = msgs.shape
    n = M.shape[2]
    out = np.zeros((B, n), dtype=np.int64)
    for b in range(B):
        for j in range(K):
            c = msgs[b, j]
            if c:
                for P in range(n):
                    out[b, P] = add[out[b, P], M[j, c, P]]
    return out
