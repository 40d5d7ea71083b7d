"""Classification of curves and hypersurfaces, and point-count censuses.

A census enumerates every normalized form of degree d on PG(m, q) (or a
seeded random sample of them), tallies the number of rational points, and
cross-checks the tallies against every bound that applies at (q, d, m).
"""
from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bounds
from .enumeration import Enumerator, normalize_messages, sample_messages
from .errors import PointOnConic, ZeroPolynomial
from .geometry import hyperplanes, incidence_matrix, on_hyperplane, projective_points
from .gf import FieldSpec, rank
from .poly import Form, evaluate, evaluation_matrix, linear_factors, values, zero_count

IS_UNION_OF_LINES = "IsUnionOfLines"
PENCIL = "Pencil"
NEAR_PENCIL = "NearPencil"
CONTAINS_HYPERPLANE = "ContainsHyperplane"
LINE_FREE = "LineFree"


@dataclass(frozen=True)
class CConditions:
    """Truth values of the four conditions under which a curve that is not a
    union of lines reaches (d-1) q + 2 points. None means not applicable."""

    c1: bool
    c2: bool
    c3: bool | None
    c4: bool | None
    s: int
    linefree_degree: int

    @property
    def applicable(self) -> bool:
        return self.s > 0

    @property
    def all_hold(self) -> bool:
        return bool(self.c1 and self.c2 and self.c3 and self.c4)

    def to_json(self) -> dict:
        na = lambda v: "NotApplicable" if v is None else v
        return {"c1": self.c1, "c2": self.c2, "c3": na(self.c3), "c4": na(self.c4),
                "s": self.s, "linefree_degree": self.linefree_degree}


@dataclass(frozen=True)
class CurveClassification:
    degree: int
    points: int
    s: int
    linefree_degree: int
    tags: frozenset
    lines: tuple  # ((LinearForm, multiplicity), ...)
    c_conditions: CConditions | None = None

    def label(self) -> str:
        order = [PENCIL, NEAR_PENCIL, IS_UNION_OF_LINES, CONTAINS_HYPERPLANE, LINE_FREE]
        tags = "+".join(t for t in order if t in self.tags)
        return f"{tags} s={self.s} linefree_degree={self.linefree_degree}"

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "points": self.points,
            "s": self.s,
            "linefree_degree": self.linefree_degree,
            "tags": sorted(self.tags),
            "lines": [{"form": list(h), "multiplicity": k} for h, k in self.lines],
        }
        if self.c_conditions is not None:
            out["c_conditions"] = self.c_conditions.to_json()
        return out


def _concurrent(field: FieldSpec, lines) -> bool:
    return rank(field, lines) <= 2


def _is_near_pencil(field: FieldSpec, lines) -> bool:
    if len(lines) < 3 or _concurrent(field, lines):
        return False
    return any(_concurrent(field, lines[:i] + lines[i + 1:]) for i in range(len(lines)))


def classify(f: Form) -> CurveClassification:
    """Tags describing how much of f splits into F_q-rational hyperplanes.

    Pencil and NearPencil are only assigned for plane curves (3 variables).
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot classify the zero form")
    fac = linear_factors(f)
    d = f.degree
    s = fac.s
    pts = zero_count(f)
    tags = set()
    tags.add(CONTAINS_HYPERPLANE if s else LINE_FREE)
    if s == d:
        tags.add(IS_UNION_OF_LINES)
    lines = [h for h, _ in fac.linear_part]
    distinct = s == d and all(k == 1 for _, k in fac.linear_part)
    cc = None
    if f.nvars == 3:
        if distinct and _concurrent(f.field, lines):
            tags.add(PENCIL)
        if distinct and _is_near_pencil(f.field, lines):
            tags.add(NEAR_PENCIL)
        cc = _c_conditions(f, fac)
    return CurveClassification(d, pts, s, d - s, frozenset(tags), fac.linear_part, cc)


def _c_conditions(f: Form, fac) -> CConditions:
    F, q, d, s = f.field, f.field.q, f.degree, fac.s
    N = fac.residual
    n_pts = values(N) == 0 if N.degree > 0 else np.zeros(len(projective_points(F, 2)), dtype=bool)
    c1 = 2 <= d - s <= d - 1
    c2 = int(n_pts.sum()) == (d - s - 1) * q + 1
    if s == 0:
        return CConditions(c1, c2, None, None, s, d - s)
    lines = [h for h, _ in fac.linear_part]
    c3 = all(k == 1 for _, k in fac.linear_part) and _concurrent(F, lines)
    inc = incidence_matrix(F, 2)
    hs = hyperplanes(F, 2)
    on_lines = np.zeros(len(n_pts), dtype=bool)
    for h in lines:
        on_lines |= inc[hs.index(h)]
    c4 = not bool((on_lines & n_pts).any())
    return CConditions(c1, c2, c3, c4, s, d - s)


def c_conditions_check(f: Form) -> CConditions:
    if f.nvars != 3 or not f.homogeneous:
        raise ValueError("conditions C1-C4 concern plane curves")
    return _c_conditions(f, linear_factors(f))


@dataclass(frozen=True)
class ZanellaResult:
    a: int
    bound: int
    holds: bool
    size: int


def zanella_check(field: FieldSpec, m: int, points) -> ZanellaResult:
    """a = largest hyperplane section of the point set; check |S| <= a q + 1."""
    pts = projective_points(field, m)
    mask = np.zeros(len(pts), dtype=bool)
    index = {P: i for i, P in enumerate(pts)}
    for P in points:
        mask[index[tuple(P)]] = True
    return _zanella_mask(field, m, mask)


def _zanella_mask(field, m, mask) -> ZanellaResult:
    inc = incidence_matrix(field, m)
    a = int((inc & mask[None, :]).sum(axis=1).max()) if mask.any() else 0
    size = int(mask.sum())
    bound = bounds.zanella_bound(a, field.q)
    return ZanellaResult(a, bound, size <= bound, size)


def zanella_check_form(f: Form) -> ZanellaResult:
    return _zanella_mask(f.field, f.nvars - 1, values(f) == 0)


def passant_profile(conic: Form, P) -> int:
    """Number of lines through P that contain no rational point of the conic."""
    F = conic.field
    q = F.q
    if conic.nvars != 3 or conic.degree != 2:
        raise ValueError("expected a plane conic")
    on = values(conic) == 0
    if int(on.sum()) != q + 1 or linear_factors(conic).s:
        raise ValueError("conic is not nonsingular")
    if evaluate(conic, tuple(P)) == 0:
        raise PointOnConic(f"{tuple(P)} lies on the conic")
    pts = projective_points(F, 2)
    conic_pts = [Q for Q, z in zip(pts, on) if z]
    through = [h for h in hyperplanes(F, 2) if on_hyperplane(F, h, P)]
    return sum(1 for h in through if not any(on_hyperplane(F, h, Q) for Q in conic_pts))


# --- census -------------------------------------------------------------------

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"


@dataclass
class BoundCheck:
    bound: str
    value: int
    ok: bool
    examined: int = 0
    note: str = ""

    def to_json(self) -> dict:
        out = {"bound": self.bound, "value": self.value, "ok": self.ok, "examined": self.examined}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class TopEntry:
    count: int
    tally: int
    witness: Form

    def to_json(self) -> dict:
        return {"count": self.count, "tally": self.tally,
                "witness": {"coeffs": list(self.witness.coeffs), "polynomial": str(self.witness)}}


@dataclass
class CensusReport:
    q: int
    d: int
    m: int
    mode: str
    top: list
    checks: list
    histogram: dict  # point count -> tally
    attainers: dict = field(default_factory=dict, repr=False)  # point count -> [Form]
    n_samples: int | None = None
    seed: int | None = None
    attainer_formula: dict | None = None

    @property
    def counts(self) -> list[int]:
        return [t.count for t in self.top]

    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        out = {"q": self.q, "d": self.d, "m": self.m, "mode": self.mode}
        if self.mode == SAMPLED:
            out["n_samples"] = self.n_samples
            out["seed"] = self.seed
        out["top"] = [t.to_json() for t in self.top]
        out["checks"] = [c.to_json() for c in self.checks]
        if self.attainer_formula is not None:
            out["attainer_formula"] = self.attainer_formula
        return out

    def histogram_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["count", "tally"])
        w.writerows(sorted(self.histogram.items()))
        return buf.getvalue()


def _plane_generator(field, d, m):
    return evaluation_matrix(field, m + 1, d, True, "projective")


def _conditional_bounds(q, d, m):
    """(name, value, predicate-name) for bounds that only apply to a subclass of forms."""
    out = []
    if m == 2:
        hk = bounds.hk_linefree(q, d)
        if hk.valid or hk.exceptions:
            out.append(("hk_linefree", hk.value, "line_free"))
        nu = bounds.not_union_of_lines(q, d)
        if nu.valid:
            out.append(("not_union_of_lines", nu.value, "not_union"))
    else:
        el = bounds.hk_elementary(q, d, m)
        if el.valid:
            out.append(("hk_elementary", el.value, "hyperplane_free"))
        im = bounds.improved_elementary(q, d, m)
        if im.valid:
            out.append(("improved_elementary", im.value, "hyperplane_free"))
    return out


def _contained_hyperplanes(field, m, zero_mask: np.ndarray) -> np.ndarray:
    """(B, H) boolean: hyperplane h lies inside the zero set of form b."""
    inc = incidence_matrix(field, m).astype(np.int32)
    hits = zero_mask.astype(np.int32) @ inc.T
    return hits == bounds.pm(field.q, m - 1)


class _Population:
    """Messages (rows of coefficients) with their point counts.

    Structural questions are answered in bulk from zero masks. The zero-set
    test for containing a hyperplane is exact when d <= q, since a nonzero
    form of degree <= q cannot vanish on all of PG(m-1, q). Above that
    degree, and whenever the fast path is inconclusive, the algebraic
    factorization decides.
    """

    chunk = 1 << 16

    def __init__(self, field, d, m, en: Enumerator, msgs: np.ndarray, point_counts: np.ndarray):
        self.field, self.d, self.m = field, d, m
        self.en = en
        self.msgs = msgs
        self.point_counts = point_counts
        self._contained = None

    def __len__(self):
        return len(self.msgs)

    def form(self, i) -> Form:
        return Form(self.field, self.m + 1, self.d, tuple(self.msgs[i].tolist()))

    def contained(self) -> np.ndarray:
        if self._contained is None:
            parts = [np.zeros((0, bounds.pm(self.field.q, self.m)), dtype=bool)]
            for lo in range(0, len(self.msgs), self.chunk):
                zero = self.en.codewords(self.msgs[lo:lo + self.chunk]) == 0
                parts.append(_contained_hyperplanes(self.field, self.m, zero))
            self._contained = np.concatenate(parts)
        return self._contained

    def has_hyperplane(self, idx: np.ndarray) -> np.ndarray:
        if self.d <= self.field.q:
            return self.contained()[idx].any(axis=1)
        return np.array([linear_factors(self.form(i)).s > 0 for i in idx], dtype=bool)

    def is_union_of_lines(self, idx: np.ndarray) -> np.ndarray:
        if self.d <= self.field.q:
            out = self.contained()[idx].sum(axis=1) == self.d
        else:
            out = np.zeros(len(idx), dtype=bool)
        for j in np.nonzero(~out)[0]:
            # repeated lines: fewer distinct hyperplanes than d
            out[j] = linear_factors(self.form(idx[j])).s == self.d
        return out


def _run_checks(field, d, m, max_count, below_serre_max, pop: _Population, counts, exhaustive_floor=None):
    """Bound checks over a population (all collected or sampled forms)."""
    q = field.q
    checks = []
    total = int(sum(counts.values()))
    serre = bounds.serre_bound(q, d, m)
    if serre.valid:
        checks.append(BoundCheck("serre", serre.value, max_count <= serre.value, total))
    sec = bounds.second_max_points(q, d, m)
    if sec.valid and serre.valid:
        ok = below_serre_max is None or below_serre_max <= sec.value
        checks.append(BoundCheck("second", sec.value, ok, total))
    pts = pop.point_counts
    for name, value, pred in _conditional_bounds(q, d, m):
        assert exhaustive_floor is None or exhaustive_floor <= value + 1
        sel = np.nonzero(pts > value)[0]
        note = ""
        if pred == "not_union":
            viol = ~pop.is_union_of_lines(sel)
        else:
            viol = ~pop.has_hyperplane(sel)
            if name == "hk_linefree" and (d, q) == (4, 4):
                allowed = viol & (pts[sel] == value + 1)
                if allowed.any():
                    note = (f"(d, q) = (4, 4) exception: {int(allowed.sum())} line-free quartics "
                            "with (d-1)q + 2 points allowed")
                viol &= ~allowed
        checks.append(BoundCheck(name, value, not viol.any(), len(sel), note))
    return checks


def census(field: FieldSpec, d: int, m: int = 2, mode: str = EXHAUSTIVE, top_k: int = 3,
           n_samples: int = 10**5, seed: int = 0xC0DE, budget: int | None = None,
           workers: int = 1) -> CensusReport:
    """Point-count census of degree-d forms on PG(m, q).

    Exhaustive mode visits each normalized form once. Sampled mode draws
    ``n_samples`` uniform normalized forms from ``seed``. In both modes the
    result does not depend on ``workers``.
    """
    G = _plane_generator(field, d, m)
    en = Enumerator(field, G)
    q = field.q
    if mode == SAMPLED:
        return _sampled_census(field, d, m, en, top_k, n_samples, seed)
    if mode != EXHAUSTIVE:
        raise ValueError(f"unknown census mode {mode!r}")
    floors = [value + 1 for _, value, _ in _conditional_bounds(q, d, m)]
    floor = min(floors) if floors else None
    res = en.exhaustive(floor=floor, budget=budget, workers=workers)
    hist = {z: int(c) for z, c in enumerate(res.hist) if c}
    desc = sorted(hist, reverse=True)
    top_counts = desc[:top_k]
    collected = res.collected
    if top_counts and (floor is None or top_counts[-1] < floor):
        need = sum(hist[c] for c in desc if c >= top_counts[-1])
        if need <= 200_000:
            floor = top_counts[-1]
            collected = en.exhaustive(floor=floor, budget=budget, workers=workers).collected
    idx = np.array([i for i, _ in collected], dtype=np.int64)
    pts = np.array([z for _, z in collected], dtype=np.int64)
    pop = _Population(field, d, m, en, en.decode_many(idx), pts)
    attainers = {c: [pop.form(i) for i in np.nonzero(pts == c)[0]] for c in top_counts}
    attainers = {c: v for c, v in attainers.items() if v}
    top = [TopEntry(c, hist[c], Form(field, m + 1, d, en.decode(int(res.first[c])))) for c in top_counts]
    serre_v = bounds.serre_bound(q, d, m).value
    below = [c for c in desc if c < serre_v]
    checks = _run_checks(field, d, m, desc[0], below[0] if below else None, pop, hist, floor)
    report = CensusReport(q, d, m, EXHAUSTIVE, top, checks, hist, attainers)
    report.attainer_formula = _attainer_formula(q, d, m, hist)
    return report


def _attainer_formula(q, d, m, hist):
    if m != 2 or not 3 <= d <= q:
        return None
    target = d * q - d + 3
    tally = hist.get(target, 0)
    formula = bounds.near_pencil_formula(q, d)
    out = {"count": target, "tally": tally, "formula": formula}
    if tally:
        ratio = Fraction(formula, tally)
        out["ratio"] = str(ratio)
        out["matches"] = ratio == 1
        if ratio != 1:
            out["flag"] = (f"formula/tally = {ratio}: for d = 3 each triangle has three choices "
                           "of distinguished point" if d == 3 else f"formula/tally = {ratio}")
    return out


def _sampled_census(field, d, m, en: Enumerator, top_k, n_samples, seed) -> CensusReport:
    q = field.q
    msgs = normalize_messages(field, sample_messages(q, en.K, n_samples, seed))
    masks = en.codewords(msgs) == 0
    pts = masks.sum(axis=1)
    hist = Counter(pts.tolist())
    desc = sorted(hist, reverse=True)
    top = []
    for c in desc[:top_k]:
        i = int(np.argmax(pts == c))
        top.append(TopEntry(c, hist[c], Form(field, m + 1, d, tuple(msgs[i].tolist()))))
    pop = _Population(field, d, m, en, msgs, pts)
    serre_v = bounds.serre_bound(q, d, m).value
    below = [c for c in desc if c < serre_v]
    checks = _run_checks(field, d, m, desc[0], below[0] if below else None, pop, dict(hist))
    for c in checks:
        if c.bound == "serre":
            c.examined = n_samples
    return CensusReport(q, d, m, SAMPLED, top, checks, dict(sorted(hist.items())),
                        n_samples=n_samples, seed=seed)


def attainer_census(field: FieldSpec, d: int, m: int, target_count: int, budget: int | None = None,
                    workers: int = 1) -> tuple[int, Counter]:
    """Number of normalized forms with exactly ``target_count`` points and a
    histogram of their classification labels."""
    en = Enumerator(field, _plane_generator(field, d, m))
    res = en.exhaustive(floor=target_count, budget=budget, workers=workers)
    hits = [i for i, z in res.collected if z == target_count]
    hist = Counter(classify(Form(field, m + 1, d, en.decode(i))).label() for i in hits)
    return len(hits), hist


def classify_attainers(report: CensusReport, count: int) -> Counter:
    """Classification histogram of collected attainers of ``count`` points."""
    return Counter(classify(f).label() for f in report.attainers.get(count, []))
