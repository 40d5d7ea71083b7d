"""Point sets, hyperplanes and pencils of PG(m, q) and AG(m, q).

Points and linear forms are tuples of field encodings. A projective point
(or a linear form) is normalized when its first nonzero entry is 1; lists
returned here are sorted lexicographically, and that order is frozen because
it fixes the column order of every generator matrix built on top of it.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DependentForms, DimensionMismatch
from .gf import FieldSpec, rank

ProjectivePoint = tuple
AffinePoint = tuple
LinearForm = tuple


def normalize(field: FieldSpec, coords) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    if lead == 1:
        return tuple(int(c) for c in coords)
    s = field.inv(lead)
    return tuple(field.mul(s, c) for c in coords)


@lru_cache(maxsize=None)
def _normalized_tuples(field: FieldSpec, length: int) -> tuple:
    q = field.q
    out = []
    for lead in range(length):
        for tail in product(range(q), repeat=length - lead - 1):
            out.append((0,) * lead + (1,) + tail)
    out.sort()
    return tuple(out)


def projective_points(field: FieldSpec, m: int) -> list[ProjectivePoint]:
    """All p_m normalized points of PG(m, q) in lexicographic order."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return list(_normalized_tuples(field, m + 1))


def affine_points(field: FieldSpec, m: int) -> list[AffinePoint]:
    if m < 1:
        raise ValueError("m must be >= 1")
    return list(product(range(field.q), repeat=m))


def hyperplanes(field: FieldSpec, m: int) -> list[LinearForm]:
    """Normalized linear forms, one per hyperplane of PG(m, q)."""
    return projective_points(field, m)


def form_value(field: FieldSpec, h: LinearForm, point) -> int:
    acc = 0
    for a, x in zip(h, point):
        if a and x:
            acc = field.add(acc, field.mul(a, x))
    return acc


def on_hyperplane(field: FieldSpec, h: LinearForm, point) -> bool:
    if len(h) != len(point):
        raise DimensionMismatch(f"form has {len(h)} coefficients, point has {len(point)}")
    return form_value(field, h, point) == 0


def pencil(field: FieldSpec, m: int, flat: tuple[LinearForm, LinearForm]) -> list[LinearForm]:
    """The q + 1 hyperplanes through the codimension-2 flat ``f = g = 0``.

    Returned in frozen hyperplane order.
    """
    f, g = flat
    if len(f) != m + 1 or len(g) != m + 1:
        raise DimensionMismatch("flat forms must have m + 1 coefficients")
    if rank(field, [f, g]) < 2:
        raise DependentForms("the two forms do not cut out a codimension-2 flat")
    members = set()
    for a, b in projective_points(field, 1):
        combo = [field.add(field.mul(a, x), field.mul(b, y)) for x, y in zip(f, g)]
        members.add(normalize(field, combo))
    return sorted(members)


def hyperplane_section(field: FieldSpec, points, h: LinearForm) -> set:
    return {P for P in points if on_hyperplane(field, h, P)}


def flat_points(field: FieldSpec, m: int, forms) -> list[ProjectivePoint]:
    """Points of PG(m, q) on every hyperplane in ``forms``."""
    return [P for P in projective_points(field, m) if all(on_hyperplane(field, h, P) for h in forms)]


@lru_cache(maxsize=None)
def incidence_matrix(field: FieldSpec, m: int) -> np.ndarray:
    """Boolean (hyperplanes x points) matrix; entry [i, j] is True iff point j lies on hyperplane i."""
    pts = np.array(projective_points(field, m), dtype=np.int64)
    hs = np.array(hyperplanes(field, m), dtype=np.int64)
    add, mul = field.add_table, field.mul_table
    acc = np.zeros((len(hs), len(pts)), dtype=np.int64)
    for i in range(m + 1):
        acc = add[acc, mul[hs[:, i][:, None], pts[:, i][None, :]]]
    out = acc == 0
    out.flags.writeable = False
    return out
