"""Deterministic constructions of hypersurfaces with extremal point counts.

Each constructor returns a :class:`Construction` whose predicted count is
checked against a brute-force zero count before it is handed back. Choices
(which flat, which transversal, which passant) are always the first valid
candidate in frozen point/hyperplane order.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from . import bounds
from .errors import DomainViolation, NonSquareOrder, NoPassantFound, TooManyHyperplanes
from .geometry import hyperplanes, on_hyperplane, pencil, projective_points
from .gf import FieldSpec
from .poly import Form, multiply, product, values, zero_count


class Tag(str, Enum):
    PENCIL = "Pencil"
    NEAR_PENCIL = "NearPencil"
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    PENCIL_DOUBLE_LINE = "PencilDoubleLine"
    HERMITIAN = "Hermitian"
    HERMITIAN_SURFACE_CONE = "HermitianSurfaceCone"
    HYPERBOLIC_QUADRIC = "HyperbolicQuadric"
    LINE_PLUS_CONIC = "LinePlusConic"
    FOUR_LINES_GENERAL = "FourLinesGeneral"
    SERRE_HYPERPLANES = "SerreHyperplanes"


@dataclass(frozen=True)
class Construction:
    form: Form
    predicted_count: int
    config_tag: Tag

    def measured_count(self) -> int:
        return zero_count(self.form)

    def to_json(self) -> dict:
        return {
            "tag": self.config_tag.value,
            "form": self.form.to_json(),
            "polynomial": str(self.form),
            "predicted": self.predicted_count,
            "measured": self.measured_count(),
        }


def _checked(form: Form, predicted: int, tag: Tag) -> Construction:
    measured = zero_count(form)
    if measured != predicted:
        raise AssertionError(f"{tag.value}: predicted {predicted} points, counted {measured}")
    return Construction(form, predicted, tag)


def _lin(field, coeffs) -> Form:
    return Form.linear(field, coeffs)


def first_flat(field: FieldSpec, m: int):
    """The first two hyperplanes in frozen order, x_m and x_(m-1)."""
    hs = hyperplanes(field, m)
    return hs[0], hs[1]


def pencil_of_lines(field: FieldSpec, d: int, m: int = 2) -> Construction:
    """d hyperplanes through a common codimension-2 flat: the Serre attainers."""
    q = field.q
    if d < 1:
        raise DomainViolation("d must be >= 1")
    if d > q + 1:
        raise TooManyHyperplanes(f"a pencil has only q + 1 = {q + 1} members")
    members = pencil(field, m, first_flat(field, m))[:d]
    form = product([_lin(field, h) for h in members])
    tag = Tag.PENCIL if m == 2 else Tag.SERRE_HYPERPLANES
    return _checked(form, d * q ** (m - 1) + bounds.pm(q, m - 2), tag)


def near_pencil(field: FieldSpec, d: int) -> Construction:
    """d-1 lines through a point P plus one line missing P (plane, m = 2)."""
    q = field.q
    if not 3 <= d <= q + 2:
        raise DomainViolation(f"near-pencil needs 3 <= d <= q + 2, got d={d}")
    flat = first_flat(field, 2)
    through = pencil(field, 2, flat)[: d - 1]
    centre = _common_point(field, flat)
    transversal = next(h for h in hyperplanes(field, 2) if not on_hyperplane(field, h, centre))
    form = product([_lin(field, h) for h in through] + [_lin(field, transversal)])
    return _checked(form, d * q - d + 3, Tag.NEAR_PENCIL)


def _common_point(field, forms):
    m = len(forms[0]) - 1
    return next(P for P in projective_points(field, m) if all(on_hyperplane(field, h, P) for h in forms))


def _affine_linear(field, m, coeffs, const=0) -> Form:
    """sum(coeffs[i] * x_(i+1)) + const as an affine degree-1 polynomial."""
    terms = {(0,) * m: const} if const else {}
    for i, c in enumerate(coeffs):
        if c:
            terms[tuple(int(i == j) for j in range(m))] = c
    return Form.from_terms(field, m, 1, terms, homogeneous=False)


def _check_affine_domain(field, d, m):
    if m < 2:
        raise DomainViolation("affine arrangements need m >= 2")
    if not 2 <= d < field.q:
        raise DomainViolation(f"need 2 <= d < q, got d={d}, q={field.q}")


def affine_type1(field: FieldSpec, d: int, m: int = 2) -> Construction:
    """d affine hyperplanes through the codimension-2 subspace x1 = x2 = 0."""
    _check_affine_domain(field, d, m)
    q = field.q
    dirs = projective_points(field, 1)[:d]  # (a:b) -> a*x1 + b*x2
    factors = [_affine_linear(field, m, [a, b] + [0] * (m - 2)) for a, b in dirs]
    form = product(factors)
    return _checked(form, d * q ** (m - 1) - (d - 1) * q ** (m - 2), Tag.TYPE_I)


def affine_type2(field: FieldSpec, d: int, m: int = 2) -> Construction:
    """d-1 parallel hyperplanes x1 = c plus the hyperplane x2 = 0."""
    _check_affine_domain(field, d, m)
    q = field.q
    factors = [_affine_linear(field, m, [1] + [0] * (m - 1), field.neg(c)) for c in range(d - 1)]
    factors.append(_affine_linear(field, m, [0, 1] + [0] * (m - 2)))
    form = product(factors)
    return _checked(form, d * q ** (m - 1) - (d - 1) * q ** (m - 2), Tag.TYPE_II)


def pencil_with_double_line(field: FieldSpec, d: int) -> Construction:
    """d-1 concurrent lines, the first one doubled: (d-1) q + 1 points."""
    q = field.q
    if not 2 <= d <= q + 2:
        raise DomainViolation(f"need 2 <= d <= q + 2, got d={d}")
    lines = pencil(field, 2, first_flat(field, 2))[: d - 1]
    factors = [_lin(field, lines[0])] + [_lin(field, h) for h in lines]
    return _checked(product(factors), (d - 1) * q + 1, Tag.PENCIL_DOUBLE_LINE)


def _power_sum(field: FieldSpec, nvars: int, used: int, k: int) -> Form:
    terms = {tuple(k if j == i else 0 for j in range(nvars)): 1 for i in range(used)}
    return Form.from_terms(field, nvars, k, terms)


def hermitian_curve(field: FieldSpec) -> Construction:
    """x0^(r+1) + x1^(r+1) + x2^(r+1) with r = sqrt(q): q*r + 1 points."""
    r = field.sqrt_order()
    if r is None:
        raise NonSquareOrder(f"q = {field.q} is not a square")
    return _checked(_power_sum(field, 3, 3, r + 1), field.q * r + 1, Tag.HERMITIAN)


def hermitian_surface_cone(field: FieldSpec, m: int = 3) -> Construction:
    """Cone over x0^(r+1) + ... + x3^(r+1) in PG(m, q), r = sqrt(q)."""
    r = field.sqrt_order()
    if r is None:
        raise NonSquareOrder(f"q = {field.q} is not a square")
    if m < 3:
        raise DomainViolation("needs m >= 3")
    pred = bounds.hk_elementary(field.q, r + 1, m).value
    return _checked(_power_sum(field, m + 1, 4, r + 1), pred, Tag.HERMITIAN_SURFACE_CONE)


def hyperbolic_quadric(field: FieldSpec, m: int = 3) -> Construction:
    """Cone over x0*x2 + x1*x3 in PG(m, q)."""
    if m < 3:
        raise DomainViolation("needs m >= 3")
    n = m + 1
    e = lambda *idx: tuple(sum(1 for i in idx if i == j) for j in range(n))
    form = Form.from_terms(field, n, 2, {e(0, 2): 1, e(1, 3): 1})
    return _checked(form, bounds.hk_elementary(field.q, 2, m).value, Tag.HYPERBOLIC_QUADRIC)


def standard_conic(field: FieldSpec) -> Form:
    """x0*x2 - x1^2, nonsingular in every characteristic."""
    return Form.from_terms(field, 3, 2, {(1, 0, 1): 1, (0, 2, 0): field.neg(1)})


def passants(field: FieldSpec, conic: Form) -> list:
    """Lines (frozen order) containing no rational point of the conic."""
    on = values(conic) == 0
    pts = projective_points(field, 2)
    conic_pts = [P for P, z in zip(pts, on) if z]
    return [h for h in hyperplanes(field, 2) if not any(on_hyperplane(field, h, P) for P in conic_pts)]


def line_plus_conic(field: FieldSpec) -> Construction:
    """A nonsingular conic times a line missing it: 2q + 2 points."""
    conic = standard_conic(field)
    ext = passants(field, conic)
    if not ext:
        raise NoPassantFound(f"no external line to the conic over GF({field.q})")
    form = multiply(_lin(field, ext[0]), conic)
    return _checked(form, 2 * field.q + 2, Tag.LINE_PLUS_CONIC)


def four_lines_general_position(field: FieldSpec) -> Construction:
    """Four lines, no three concurrent: 4q - 2 points."""
    q = field.q
    if q < 4:
        raise DomainViolation(f"quartic configurations are taken with d = 4 <= q, got q = {q}")
    lines = hyperplanes(field, 2)
    pts = projective_points(field, 2)
    for quad in combinations(lines, 4):
        if all(not _concurrent(field, pts, trip) for trip in combinations(quad, 3)):
            form = product([_lin(field, h) for h in quad])
            return _checked(form, 4 * q - 2, Tag.FOUR_LINES_GENERAL)
    raise AssertionError("no quadrilateral found")


def _concurrent(field, pts, lines) -> bool:
    return any(all(on_hyperplane(field, h, P) for h in lines) for P in pts)


CONFIGS = {
    "pencil": lambda F, d, m: pencil_of_lines(F, d, m),
    "near_pencil": lambda F, d, m: near_pencil(F, d),
    "type1": lambda F, d, m: affine_type1(F, d, m),
    "type2": lambda F, d, m: affine_type2(F, d, m),
    "double_line": lambda F, d, m: pencil_with_double_line(F, d),
    "hermitian": lambda F, d, m: hermitian_curve(F),
    "hermitian_surface": lambda F, d, m: hermitian_surface_cone(F, m),
    "hyperbolic_quadric": lambda F, d, m: hyperbolic_quadric(F, m),
    "line_plus_conic": lambda F, d, m: line_plus_conic(F),
    "four_lines": lambda F, d, m: four_lines_general_position(F),
}
