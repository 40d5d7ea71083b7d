"""Generalized (affine) and projective Reed-Muller codes as evaluation codes."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .enumeration import Enumerator, sample_messages
from .errors import DegreeOutOfRange, LengthMismatch
from .gf import FieldSpec, row_echelon
from .poly import Form, evaluation_matrix

GRM = "GRM"
PRM = "PRM"


@dataclass
class Code:
    """Evaluation code; generator rows are basis monomials, columns frozen points.

    ``basis_rows`` is a full-rank row space basis used for spectra when the
    monomial rows are dependent (GRM with d >= q).
    """

    kind: str
    field: FieldSpec
    d: int
    m: int
    n: int
    k: int
    generator: np.ndarray
    basis_rows: np.ndarray = field(repr=False)

    @property
    def nvars(self) -> int:
        return self.m + 1 if self.kind == PRM else self.m

    @property
    def space(self) -> str:
        return "projective" if self.kind == PRM else "affine"

    def form(self, message) -> Form:
        """The polynomial whose evaluation is ``message @ generator``."""
        return Form(self.field, self.nvars, self.d, tuple(message), self.kind == PRM)

    def to_json(self) -> dict:
        return {"kind": self.kind, "q": self.field.q, "d": self.d, "m": self.m, "n": self.n, "k": self.k}


def build_code(kind: str, field: FieldSpec, d: int, m: int, allow_large_degree: bool = False) -> Code:
    """GRM(d, m) or PRM(d, m) over ``field``.

    The evaluation map is injective, so k = C(m+d, m), for GRM with
    d <= q - 1 and for PRM with d <= q (no nonzero form of degree <= q
    vanishes on all of PG(m, q)). Larger d needs ``allow_large_degree``; k
    is then the rank of the generator.
    """
    kind = kind.upper()
    if kind not in (GRM, PRM):
        raise ValueError(f"kind must be GRM or PRM, got {kind!r}")
    if d < 1:
        raise DegreeOutOfRange(f"d must be >= 1, got {d}")
    if m < 1:
        raise ValueError("m must be >= 1")
    homogeneous = kind == PRM
    dmax = field.q if homogeneous else field.q - 1
    if d > dmax and not allow_large_degree:
        raise DegreeOutOfRange(f"d = {d} exceeds {dmax} for {kind} over GF({field.q}); pass allow_large_degree")
    nvars = m + 1 if homogeneous else m
    G = evaluation_matrix(field, nvars, d, homogeneous, "projective" if homogeneous else "affine")
    if d <= dmax:
        k = comb(m + d, m)
        basis = G
    else:
        basis = np.array(row_echelon(field, G.tolist()), dtype=np.int64)
        k = len(basis)
    return Code(kind, field, d, m, G.shape[1], k, G, basis)


def encode(code: Code, message) -> np.ndarray:
    message = list(message)
    if len(message) != code.generator.shape[0]:
        raise LengthMismatch(f"message has length {len(message)}, generator has {code.generator.shape[0]} rows")
    F = code.field
    add, mul = F.add_table, F.mul_table
    acc = np.zeros(code.n, dtype=np.int64)
    for c, row in zip(message, code.generator):
        if c:
            acc = add[acc, mul[int(c), row]]
    return acc


def codeword_weight(code: Code, message) -> int:
    return int(np.count_nonzero(encode(code, message)))


EXHAUSTIVE_UP_TO_SCALAR = "exhaustive-up-to-scalar"
EXHAUSTIVE_FULL = "exhaustive-full"
SAMPLED = "sampled"


@dataclass
class WeightSpectrum:
    counts: dict  # weight -> count
    mode: str
    n_samples: int | None = None
    seed: int | None = None

    def total(self) -> int:
        return sum(self.counts.values())

    def to_rows(self) -> list:
        return sorted(self.counts.items())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["weight", "count"])
        w.writerows(self.to_rows())
        return buf.getvalue()

    def to_json(self, code: Code | None = None) -> dict:
        out = {"mode": self.mode, "spectrum": [[w, c] for w, c in self.to_rows()]}
        if code is not None:
            out = {"code": code.to_json(), **out}
        if self.mode == SAMPLED:
            out["n_samples"] = self.n_samples
            out["seed"] = self.seed
        return out


def weight_spectrum(code: Code, mode: str = EXHAUSTIVE_UP_TO_SCALAR, n_samples: int = 10**5,
                    seed: int = 0xC0DE, budget: int | None = None, workers: int = 1) -> WeightSpectrum:
    """Weight distribution of the code.

    ``exhaustive-up-to-scalar`` counts each one-dimensional subspace once
    (messages whose first nonzero entry is 1), ``exhaustive-full`` every
    codeword including 0, ``sampled`` draws ``n_samples`` uniform normalized
    messages from ``seed``.
    """
    q = code.field.q
    en = Enumerator(code.field, code.basis_rows)
    if mode == SAMPLED:
        msgs = sample_messages(q, en.K, n_samples, seed)
        zeros = (en.codewords(msgs) == 0).sum(axis=1)
        w, c = np.unique(code.n - zeros, return_counts=True)
        return WeightSpectrum(dict(zip(w.tolist(), c.tolist())), mode, n_samples, seed)
    if mode not in (EXHAUSTIVE_UP_TO_SCALAR, EXHAUSTIVE_FULL):
        raise ValueError(f"unknown mode {mode!r}")
    res = en.exhaustive(budget=budget, workers=workers)
    counts = {code.n - z: int(c) for z, c in enumerate(res.hist) if c}
    if mode == EXHAUSTIVE_FULL:
        counts = {w: c * (q - 1) for w, c in counts.items()}
        counts[0] = counts.get(0, 0) + 1
    return WeightSpectrum(dict(sorted(counts.items())), mode)


def distinct_weights(spectrum: WeightSpectrum, top_k: int | None = None) -> list[tuple[int, int]]:
    """Ascending nonzero weights with counts: minimum, second, third weight, ..."""
    rows = [(w, c) for w, c in sorted(spectrum.counts.items()) if w > 0 and c > 0]
    if not rows:
        raise ValueError("spectrum has no nonzero weight")
    return rows if top_k is None else rows[:top_k]


def minimum_weight_prm(q: int, d: int, m: int) -> int:
    """p_m - d q^(m-1) - p_(m-2), the minimum distance of PRM(d, m) for d <= q."""
    from .bounds import pm

    return pm(q, m) - d * q ** (m - 1) - pm(q, m - 2)
