"""Exhaustive and sampled enumeration of normalized messages.

Shared by code spectra and plane-curve censuses: both reduce to counting,
for every normalized message c, how many columns of c @ G vanish.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BudgetExceeded
from .gf import FieldSpec

DEFAULT_BUDGET = 10**9
DEFAULT_COLLECT_CAP = 2_000_000
BUDGET_ENV = "PRMWEIGHTS_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def normalized_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


@dataclass
class EnumerationResult:
    hist: np.ndarray  # hist[z] = number of normalized messages with z zeros
    first: np.ndarray  # smallest message index with z zeros, -1 if none
    collected: list  # [(index, z)] in index order, z >= floor
    total: int


class Enumerator:
    """Precomputed tables for enumerating messages over a generator matrix."""

    def __init__(self, field: FieldSpec, G: np.ndarray):
        self.field = field
        self.G = np.ascontiguousarray(G, dtype=np.int64)
        self.K, self.n = self.G.shape
        q = field.q
        add, mul, neg = field.add_table, field.mul_table, field.neg_table
        self.add = np.ascontiguousarray(add)
        self.mul = np.ascontiguousarray(mul)
        self.neg = np.ascontiguousarray(neg)
        # M[j, c] = c * G[j]
        self.M = np.ascontiguousarray(mul[np.arange(q)[None, :, None], self.G[:, None, :]])
        # D[j, c] = M[j, c+1] - M[j, c], D[j, q-1] = M[j, 0] - M[j, q-1]
        nxt = np.roll(np.arange(q), -1)
        self.D = np.ascontiguousarray(add[self.M[:, nxt, :], neg[self.M]])
        inv = field.inv_table
        self.inv_last = np.ascontiguousarray(inv[self.G[-1]])
        self.offsets = [0]
        for i in range(self.K):
            self.offsets.append(self.offsets[-1] + q ** (self.K - 1 - i))
        self.total = self.offsets[-1]

    # index <-> message --------------------------------------------------
    def decode(self, idx: int) -> tuple:
        q, K = self.field.q, self.K
        if not 0 <= idx < self.total:
            raise IndexError(idx)
        lead = next(i for i in range(K) if idx < self.offsets[i + 1])
        r = idx - self.offsets[lead]
        tail = []
        for _ in range(K - 1 - lead):
            r, dgt = divmod(r, q)
            tail.append(dgt)
        return (0,) * lead + (1,) + tuple(reversed(tail))

    def decode_many(self, idx: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`decode`: one message per row."""
        q, K = self.field.q, self.K
        idx = np.asarray(idx, dtype=np.int64)
        offsets = np.array(self.offsets, dtype=np.int64)
        lead = np.searchsorted(offsets, idx, side="right") - 1
        r = idx - offsets[lead]
        out = np.zeros((len(idx), K), dtype=np.int64)
        for j in range(K - 1, 0, -1):
            live = j > lead
            out[live, j] = r[live] % q
            r[live] //= q
        out[np.arange(len(idx)), lead] = 1
        return out

    def encode(self, msg) -> int:
        q = self.field.q
        lead = next(i for i, c in enumerate(msg) if c)
        if msg[lead] != 1:
            raise ValueError("message is not normalized")
        r = 0
        for c in msg[lead + 1:]:
            r = r * q + int(c)
        return self.offsets[lead] + r

    # chunking -------------------------------------------------------------
    def chunks(self, chunk_target: int = 1 << 17):
        q, K = self.field.q, self.K
        lmax = max(1, int(math.log(chunk_target) / math.log(q)))
        leads, highs, nhigh, nlow, bases = [], [], [], [], []
        for lead in range(K):
            f = K - 1 - lead
            L = min(f, lmax)
            H = f - L
            for hv in range(q**H):
                leads.append(lead)
                highs.append(hv)
                nhigh.append(H)
                nlow.append(L)
                bases.append(self.offsets[lead] + hv * q**L)
        as_arr = lambda a: np.array(a, dtype=np.int64)
        return as_arr(leads), as_arr(highs), as_arr(nhigh), as_arr(nlow), as_arr(bases)

    def _run(self, chunk_arrays, floor, collect_cap):
        return _kernels.run_chunks(
            self.G, self.M, self.D, self.add, self.mul, self.neg, self.inv_last,
            *chunk_arrays, self.field.q, floor, collect_cap,
        )

    def exhaustive(self, floor: int | None = None, budget: int | None = None,
                   collect_cap: int = DEFAULT_COLLECT_CAP, workers: int = 1) -> EnumerationResult:
        budget = default_budget() if budget is None else budget
        if self.total > budget:
            raise BudgetExceeded(f"{self.total} normalized messages exceed budget {budget}")
        floor = self.n + 1 if floor is None else floor
        arrays = self.chunks()
        nchunks = len(arrays[0])
        workers = max(1, min(workers, nchunks))
        bounds = np.linspace(0, nchunks, workers + 1).astype(int)
        parts = [tuple(a[lo:hi] for a in arrays) for lo, hi in zip(bounds[:-1], bounds[1:])]
        if workers == 1:
            results = [self._run(parts[0], floor, collect_cap)]
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futs = [pool.submit(_worker, self.field.p, self.field.e, self.G, p, floor, collect_cap) for p in parts]
                results = [f.result() for f in futs]
        hist = np.zeros(self.n + 1, dtype=np.int64)
        first = np.full(self.n + 1, -1, dtype=np.int64)
        collected = []
        for h, fi, ci, cz, ncoll, overflow in results:
            if overflow:
                raise BudgetExceeded(f"more than {collect_cap} messages reach {floor} zeros")
            hist += h
            take = (fi >= 0) & ((first < 0) | (fi < first))
            first[take] = fi[take]
            collected.extend(zip(ci.tolist(), cz.tolist()))
        if len(collected) > collect_cap:
            raise BudgetExceeded(f"more than {collect_cap} messages reach {floor} zeros")
        collected.sort()
        assert int(hist.sum()) == self.total
        return EnumerationResult(hist, first, collected, self.total)

    def codewords(self, msgs: np.ndarray) -> np.ndarray:
        return _kernels.eval_messages(np.ascontiguousarray(msgs, dtype=np.int64), self.M, self.add)


def _worker(p, e, G, part, floor, collect_cap):
    from .gf import make_field

    return Enumerator(make_field(p, e), G)._run(part, floor, collect_cap)


def sample_messages(q: int, K: int, n_samples: int, seed: int, batch: int = 4096) -> np.ndarray:
    """Uniform random normalized messages.

    Batches draw from independent child streams of one SeedSequence, so the
    output depends only on (seed, n_samples), never on how work is split.
    """
    out = np.empty((n_samples, K), dtype=np.int64)
    nbatches = -(-n_samples // batch)
    children = np.random.SeedSequence(seed).spawn(nbatches)
    for b, ss in enumerate(children):
        rng = np.random.default_rng(ss)
        lo, hi = b * batch, min(n_samples, (b + 1) * batch)
        m = hi - lo
        rows = rng.integers(0, q, size=(m, K))
        zero = ~rows.any(axis=1)
        while zero.any():
            rows[zero] = rng.integers(0, q, size=(int(zero.sum()), K))
            zero = ~rows.any(axis=1)
        out[lo:hi] = rows
    return out


def normalize_messages(field: FieldSpec, msgs: np.ndarray) -> np.ndarray:
    """Scale each row so its first nonzero entry is 1."""
    lead_pos = (msgs != 0).argmax(axis=1)
    lead = msgs[np.arange(len(msgs)), lead_pos]
    s = field.inv_table[lead]
    return field.mul_table[s[:, None], msgs]


def warm_up() -> None:
    """Compile (or load from cache) the kernels on a tiny problem."""
    from .gf import make_field

    F = make_field(2)
    G = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.int64)
    en = Enumerator(F, G)
    en.exhaustive(floor=0)
    en.codewords(np.ones((1, 2), dtype=np.int64))
