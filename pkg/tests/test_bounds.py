import pytest

from prmweights import bounds
from prmweights.bounds import Status
from prmweights.errors import BadIndex, DomainViolation

GRID = (3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81)


def test_pm():
    assert bounds.pm(3, 2) == 13
    assert bounds.pm(7, -1) == 0
    assert bounds.pm(4, 3) == 85


def test_affine_bounds():
    assert bounds.ore_bound(3, 2, 2).value == 6 and bounds.ore_bound(3, 2, 2).valid
    assert not bounds.ore_bound(3, 3, 2).valid
    assert bounds.ore_bound(5, 4, 3).value == 100
    assert bounds.geil_second(3, 2, 2).value == 5
    assert bounds.geil_second(5, 4, 2).value == 17
    assert bounds.geil_second(4, 2, 3).value == 28


def test_projective_bounds():
    assert bounds.serre_bound(3, 3, 2).value == 10
    assert bounds.serre_bound(4, 2, 3).value == 37
    assert bounds.serre_bound(2, 1, 2).value == 3
    assert bounds.hk_linefree(4, 3).value == 9
    hk44 = bounds.hk_linefree(4, 4)
    assert not hk44.valid and hk44.exceptions == ((4, 4),)
    assert bounds.hk_linefree(7, 2).value == 8
    assert bounds.hk_elementary(4, 2, 3).value == 25
    assert bounds.hk_elementary(4, 3, 3).value == 45
    assert bounds.hk_elementary(3, 3, 3).value == 28


def test_improved_elementary():
    assert bounds.improved_elementary(5, 3, 3).value == 65
    assert not bounds.improved_elementary(9, 4, 3).valid
    # literal formula: 2*64 + 3*16 + 5 - 1*4
    assert bounds.improved_elementary(4, 3, 4).value == 177


def test_second_max_points():
    assert bounds.second_max_points(3, 3, 2).value == 9
    assert bounds.second_max_points(5, 4, 2).value == 19
    r = bounds.second_max_points(5, 3, 3)
    assert r.value == 76 and r.variant == "union_of_hyperplanes"
    r = bounds.second_max_points(7, 6, 3)
    assert r.variant == "no_hyperplane" and r.value == bounds.improved_elementary(7, 6, 3).value


def test_third_weight_curve():
    r = bounds.third_weight_curve(5, 3)
    assert (r.value, r.status) == (12, Status.EXACT)
    r = bounds.third_weight_curve(4, 4)
    assert (r.value, r.status) == (14, Status.EXACT)
    r = bounds.third_weight_curve(7, 7)
    assert (r.value, r.status) == (44, Status.UPPER)
    # 2d <= q + 5 here, so the line-arrangement value applies
    assert bounds.third_weight_curve(7, 6).value == 37
    r = bounds.third_weight_curve(11, 9)
    assert (r.value, r.status) == (8 * 11 + 1, Status.EXACT)
    r = bounds.third_weight_curve(9, 8)
    assert (r.value, r.status) == (7 * 9 + 1, Status.EXACT_CONDITIONAL)
    r = bounds.third_weight_curve(8, 7)
    assert (r.value, r.status) == (6 * 8 + 2, Status.UPPER)
    with pytest.raises(DomainViolation):
        bounds.third_weight_curve(5, 2)


def test_line_arrangements():
    assert [bounds.sboui_line_arrangement(7, 5, i) for i in (1, 2, 3)] == [36, 33, 32]
    with pytest.raises(BadIndex):
        bounds.sboui_line_arrangement(7, 5, 4)


def test_zanella_and_formula():
    assert bounds.zanella_bound(4, 3) == 13
    assert bounds.zanella_bound(0, 9) == 1
    assert bounds.zanella_bound(7, 5) == 36
    assert bounds.near_pencil_formula(3, 3) == 702
    assert bounds.near_pencil_formula(4, 4) == 3360


@pytest.mark.parametrize("q", GRID)
@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_elementary_against_part_a(q, m):
    for d in range(3, q + 1):
        if 2 * d > q + 3:
            break
        a = bounds.second_max_points(q, d, m).value
        el = bounds.hk_elementary(q, d, m).value
        im = bounds.improved_elementary(q, d, m).value
        assert a - el == q ** (m - 2) * (q + 3 - 2 * d) >= 0
        assert (a == el) == (2 * d == q + 3)
        assert im < a


@pytest.mark.parametrize("q", GRID)
def test_plane_inequalities(q):
    for d in range(3, q + 1):
        assert d * q - d + 3 > bounds.hk_linefree(q, d).value
        assert d * q - d + 3 > bounds.not_union_of_lines(q, d).value
        third = bounds.sboui_line_arrangement(q, d, 3)
        assert (third >= (d - 1) * q + 2) == (2 * d <= q + 5)


@pytest.mark.parametrize("q", GRID)
@pytest.mark.parametrize("m", [2, 3, 4])
def test_monotone_in_d(q, m):
    for fn in (bounds.serre_bound, bounds.hk_elementary, bounds.improved_elementary):
        vals = [fn(q, d, m) for d in range(1, q + 1)]
        vals = [b.value for b in vals if b.valid]
        assert vals == sorted(vals)


def test_all_bounds_keys():
    plane = bounds.all_bounds(5, 3, 2)
    assert plane["serre"]["value"] == 16 and plane["second"]["value"] == 15 and plane["third"]["value"] == 12
    space = bounds.all_bounds(5, 3, 3)
    assert "hk_elementary" in space and "third" not in space
