"""Closed-form point-count bounds for hypersurfaces over GF(q).

Each function evaluates its formula with exact integer arithmetic and
reports whether (q, d, m) lies inside the hypotheses under which the bound
is a theorem. Nothing here raises for out-of-domain parameters except
:func:`third_weight_curve` and :func:`sboui_line_arrangement`, whose values
are only defined inside their domains.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb, isqrt

from .errors import BadIndex, DomainViolation


class Status(str, Enum):
    EXACT = "EXACT"
    UPPER = "UPPER"
    EXACT_CONDITIONAL = "EXACT_CONDITIONAL"


@dataclass(frozen=True)
class BoundResult:
    value: int
    valid: bool
    domain_note: str
    exceptions: tuple = ()
    status: Status = Status.UPPER
    variant: str = ""

    def to_json(self) -> dict:
        out = {"value": self.value, "valid": self.valid, "domain": self.domain_note}
        if self.exceptions:
            out["exceptions"] = [list(x) for x in self.exceptions]
        if self.status is not Status.UPPER:
            out["status"] = self.status.value
        if self.variant:
            out["variant"] = self.variant
        return out


def pm(q: int, m: int) -> int:
    """|PG(m, q)| = q^m + ... + q + 1, with pm(q, -1) = 0."""
    if m < -1:
        raise ValueError("m must be >= -1")
    return sum(q**i for i in range(m + 1))


def sqrt_q(q: int) -> int | None:
    r = isqrt(q)
    return r if r * r == q else None


def ore_bound(q: int, d: int, m: int) -> BoundResult:
    """Affine hypersurface of degree d < q: at most d q^(m-1) points."""
    return BoundResult(d * q ** (m - 1), d < q, "affine, d < q")


def geil_second(q: int, d: int, m: int) -> BoundResult:
    """Affine degree <= d below the maximum: at most d q^(m-1) - (d-1) q^(m-2)."""
    return BoundResult(
        d * q ** (m - 1) - (d - 1) * q ** (m - 2),
        m >= 2 and 2 <= d < q,
        "affine, m >= 2, 2 <= d < q, hypersurface below d q^(m-1) points",
    )


def serre_bound(q: int, d: int, m: int) -> BoundResult:
    return BoundResult(d * q ** (m - 1) + pm(q, m - 2), 1 <= d <= q, "projective, 1 <= d <= q")


def hk_linefree(q: int, d: int) -> BoundResult:
    """Plane curves without an F_q-line: at most (d-1) q + 1 points."""
    exc = ((4, 4),) if (d, q) == (4, 4) else ()
    return BoundResult(
        (d - 1) * q + 1,
        2 <= d <= q and not exc,
        "plane curve with no F_q-rational line, 2 <= d <= q, (d, q) != (4, 4)",
        exceptions=exc,
    )


def hk_elementary(q: int, d: int, m: int) -> BoundResult:
    """Hypersurfaces containing no F_q-hyperplane, m >= 3."""
    return BoundResult(
        (d - 1) * q ** (m - 1) + d * q ** (m - 2) + pm(q, m - 3),
        m >= 3,
        "projective, m >= 3, no F_q-rational hyperplane component",
    )


def improved_elementary(q: int, d: int, m: int) -> BoundResult:
    """The elementary bound lowered by (d-2) q^(m-3) when d != sqrt(q) + 1."""
    r = sqrt_q(q)
    ok = m >= 3 and 3 <= d <= q and not (r is not None and d == r + 1)
    value = (d - 1) * q ** (m - 1) + d * q ** (m - 2) + pm(q, m - 3)
    if m >= 3:
        value -= (d - 2) * q ** (m - 3)
    return BoundResult(value, ok, "projective, m >= 3, 3 <= d <= q, d != sqrt(q) + 1, no F_q-hyperplane component")


def second_max_points(q: int, d: int, m: int) -> BoundResult:
    """Largest point count strictly below the Serre bound.

    m = 2 (3 <= d <= q): dq - d + 3.
    m >= 3, 3 <= d <= (q+3)/2: d q^(m-1) + p_(m-2) - (d-2) q^(m-2), attained
    only by unions of hyperplanes (variant "union_of_hyperplanes").
    m >= 3, (q+3)/2 < d <= q: the improved elementary value
    (variant "no_hyperplane").
    """
    if m == 2:
        return BoundResult(d * q - d + 3, 3 <= d <= q, "plane curves, 3 <= d <= q, below dq + 1 points",
                           status=Status.EXACT)
    if m < 2:
        return BoundResult(0, False, "needs m >= 2")
    if 2 * d <= q + 3:
        return BoundResult(
            d * q ** (m - 1) + pm(q, m - 2) - (d - 2) * q ** (m - 2),
            3 <= d and q >= 3,
            "m >= 3, 3 <= d <= (q+3)/2, below the Serre bound",
            status=Status.EXACT,
            variant="union_of_hyperplanes",
        )
    return BoundResult(
        improved_elementary(q, d, m).value,
        d <= q and q >= 3,
        "m >= 3, (q+3)/2 < d <= q, below the Serre bound",
        variant="no_hyperplane",
    )


def not_union_of_lines(q: int, d: int) -> BoundResult:
    """Plane curves with a component of degree >= 2: at most (d-1) q + 2."""
    return BoundResult((d - 1) * q + 2, 2 <= d <= q, "plane curve that is not a union of F_q-lines, d <= q")


def third_weight_curve(q: int, d: int) -> BoundResult:
    """Third highest point count of plane curves of degree d, 3 <= d <= q."""
    if d < 3 or d > q:
        raise DomainViolation(f"third-highest count needs 3 <= d <= q, got d={d}, q={q}")
    if d == 3:
        return BoundResult(2 * q + 2, True, "cubics: line plus a conic missing it", status=Status.EXACT)
    if d == 4:
        return BoundResult(4 * q - 2, True, "quartics: four lines, no three concurrent", status=Status.EXACT)
    if 2 * d <= q + 5:
        return BoundResult(d * q + 1 - 2 * (d - 3), True, "5 <= d <= (q+5)/2", status=Status.EXACT)
    p, e = _prime_power(q)
    if e in (1, 2) and d <= q - 1:
        # q = p^2 leans on the Hermitian-curve characterization of extremal curves
        status = Status.EXACT if e == 1 else Status.EXACT_CONDITIONAL
        return BoundResult((d - 1) * q + 1, True, "d >= (q+6)/2, q = p or p^2, d <= q - 1", status=status)
    return BoundResult((d - 1) * q + 2, True, "d >= (q+6)/2", status=Status.UPPER)


def sboui_line_arrangement(q: int, d: int, i: int) -> int:
    """i-th highest point count among unions of d distinct lines (i = 1, 2, 3)."""
    if i == 1:
        return d * q + 1
    if i == 2:
        return d * q - d + 3
    if i == 3:
        return d * q + 1 - 2 * (d - 3)
    raise BadIndex(f"index must be 1, 2 or 3, got {i}")


def zanella_bound(a: int, q: int) -> int:
    if a < 0:
        raise ValueError("a must be >= 0")
    return a * q + 1


def near_pencil_formula(q: int, d: int) -> int:
    """(q^2 + q + 1) q^2 C(q+1, d-1): choices of centre, d-1 lines through it, and a line missing it."""
    return (q * q + q + 1) * q * q * comb(q + 1, d - 1)


def _prime_power(q: int) -> tuple[int, int]:
    p = next(f for f in range(2, q + 1) if q % f == 0)
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return p, e


def all_bounds(q: int, d: int, m: int) -> dict:
    """Every bound at (q, d, m), keyed by lower_snake_case name."""
    out = {
        "pm": pm(q, m),
        "ore": ore_bound(q, d, m).to_json(),
        "geil_second": geil_second(q, d, m).to_json(),
        "serre": serre_bound(q, d, m).to_json(),
        "second": second_max_points(q, d, m).to_json(),
    }
    if m == 2:
        out["hk_linefree"] = hk_linefree(q, d).to_json()
        out["not_union_of_lines"] = not_union_of_lines(q, d).to_json()
        if 3 <= d <= q:
            out["third"] = third_weight_curve(q, d).to_json()
            out["line_arrangement"] = [sboui_line_arrangement(q, d, i) for i in (1, 2, 3)]
            out["near_pencil_formula"] = near_pencil_formula(q, d)
    else:
        out["hk_elementary"] = hk_elementary(q, d, m).to_json()
        out["improved_elementary"] = improved_elementary(q, d, m).to_json()
    return out
