import itertools
import json
from collections import Counter

import numpy as np
import pytest

from prmweights import analysis, extremal
from prmweights.analysis import (CONTAINS_HYPERPLANE, IS_UNION_OF_LINES, LINE_FREE, NEAR_PENCIL, PENCIL,
                                 attainer_census, census, classify, passant_profile, zanella_check)
from prmweights.errors import BudgetExceeded, PointOnConic, ZeroPolynomial
from prmweights.geometry import hyperplanes, projective_points
from prmweights.gf import field_of_order
from prmweights.poly import Form, monomial_basis, product, random_form, values


def lin(F, *c):
    return Form.linear(F, c)


def brute_census(F, d):
    """Point counts of every normalized plane form, evaluated one by one."""
    basis = monomial_basis(3, d)
    pts = projective_points(F, 2)
    out = Counter()
    for coeffs in itertools.product(range(F.q), repeat=len(basis)):
        lead = next((c for c in coeffs if c), None)
        if lead != 1:
            continue
        f = Form(F, 3, d, coeffs)
        out[sum(1 for P in pts if analysis.evaluate(f, P) == 0)] += 1
    return out


def test_classify_examples():
    F3, F4 = field_of_order(3), field_of_order(4)
    c = classify(product([lin(F3, 1, 0, 0), lin(F3, 0, 1, 0), lin(F3, 1, 1, 0)]))
    assert {PENCIL, IS_UNION_OF_LINES} <= c.tags and NEAR_PENCIL not in c.tags and c.points == 10
    c = classify(product([lin(F3, 1, 0, 0), lin(F3, 0, 1, 0), lin(F3, 0, 0, 1)]))
    assert {NEAR_PENCIL, IS_UNION_OF_LINES} <= c.tags and PENCIL not in c.tags and c.points == 9
    c = classify(extremal.hermitian_curve(F4).form)
    assert c.tags == {LINE_FREE} and c.points == 9 and c.linefree_degree == 3
    with pytest.raises(ZeroPolynomial):
        classify(Form.from_terms(F3, 3, 2, {}))


def test_classify_repeated_lines_are_not_pencils():
    F = field_of_order(5)
    c = classify(extremal.pencil_with_double_line(F, 4).form)
    assert IS_UNION_OF_LINES in c.tags and PENCIL not in c.tags and NEAR_PENCIL not in c.tags


def test_classify_surfaces_only_get_hyperplane_tags():
    F = field_of_order(3)
    c = classify(extremal.pencil_of_lines(F, 3, 3).form)
    assert c.tags == {IS_UNION_OF_LINES, CONTAINS_HYPERPLANE} and c.points == 31
    assert classify(extremal.hyperbolic_quadric(F).form).tags == {LINE_FREE}


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_tags_match_factorization(q):
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    hs = hyperplanes(F, 2)
    for _ in range(30):
        d = int(rng.integers(1, 5))
        k = int(rng.integers(0, d + 1))
        f = product([lin(F, *hs[int(rng.integers(len(hs)))]) for _ in range(k)] + [random_form(F, 3, d - k, rng)])
        c = classify(f)
        assert (IS_UNION_OF_LINES in c.tags) == (c.linefree_degree == 0)
        assert (CONTAINS_HYPERPLANE in c.tags) == (c.s > 0) != (LINE_FREE in c.tags)
        if PENCIL in c.tags or NEAR_PENCIL in c.tags:
            assert IS_UNION_OF_LINES in c.tags


def test_zanella_examples():
    F3, F4 = field_of_order(3), field_of_order(4)
    r = zanella_check(F3, 2, projective_points(F3, 2))
    assert (r.a, r.bound, r.holds) == (4, 13, True)
    herm = extremal.hermitian_curve(F4).form
    pts = [P for P, v in zip(projective_points(F4, 2), values(herm)) if v == 0]
    r = zanella_check(F4, 2, pts)
    assert (r.a, r.bound, r.holds, r.size) == (3, 13, True, 9)
    r = zanella_check(F3, 2, [])
    assert (r.a, r.bound, r.holds) == (0, 1, True)


@pytest.mark.parametrize("q,d,top", [(3, 3, [10, 9, 8]), (4, 3, [13, 12, 10]), (5, 3, [16, 15, 12])])
def test_census_examples(q, d, top):
    r = census(field_of_order(q), d, 2)
    assert r.counts == top
    assert r.all_ok()
    assert r.counts == sorted(r.counts, reverse=True)


@pytest.mark.parametrize("q,d", [(2, 2), (3, 2), (2, 3)])
def test_census_matches_brute_force(q, d):
    F = field_of_order(q)
    r = census(F, d, 2, top_k=10)
    assert r.histogram == dict(brute_census(F, d))
    for t in r.top:
        assert int((values(t.witness) == 0).sum()) == t.count


def test_census_space():
    r = census(field_of_order(3), 2, 3)
    assert r.counts[0] == 22 and r.all_ok()


def test_attainer_census_examples():
    F = field_of_order(3)
    n, hist = attainer_census(F, 3, 2, 10)
    assert n == 52 and all(PENCIL in k for k in hist)
    n, hist = attainer_census(F, 3, 2, 9)
    assert n == 234 and all(NEAR_PENCIL in k for k in hist)
    n, hist = attainer_census(F, 3, 2, 8)
    assert any("s=1 linefree_degree=2" in k for k in hist)


def test_attainer_formula_flag():
    r = census(field_of_order(3), 3, 2)
    af = r.attainer_formula
    assert (af["tally"], af["formula"], af["ratio"]) == (234, 702, "3")
    assert "three choices" in af["flag"]
    r = census(field_of_order(4), 3, 2)
    assert r.attainer_formula["tally"] == 1120 and "flag" in r.attainer_formula


def test_report_is_worker_independent():
    F = field_of_order(4)
    a = json.dumps(census(F, 3, 2, workers=1).to_json())
    b = json.dumps(census(F, 3, 2, workers=2).to_json())
    assert a == b
    s1 = json.dumps(census(F, 3, 2, mode="sampled", n_samples=3000, seed=11).to_json())
    s2 = json.dumps(census(F, 3, 2, mode="sampled", n_samples=3000, seed=11, workers=3).to_json())
    assert s1 == s2


def test_sampled_census_checks():
    r = census(field_of_order(7), 3, 2, mode="sampled", n_samples=5000)
    assert r.all_ok() and r.n_samples == 5000
    assert r.counts[0] <= 22


def test_census_budget():
    with pytest.raises(BudgetExceeded):
        census(field_of_order(5), 4, 2, budget=10**6)


def test_histogram_csv():
    r = census(field_of_order(2), 1, 2)
    assert r.histogram_csv() == "count,tally\n3,7\n"


@pytest.mark.parametrize("q", [3, 5, 7])
def test_passant_bound(q):
    F = field_of_order(q)
    conic = extremal.standard_conic(F)
    on = values(conic) == 0
    profile = [passant_profile(conic, P) for P, z in zip(projective_points(F, 2), on) if not z]
    assert max(profile) <= (q + 1) // 2
    assert max(profile) == (q + 1) // 2  # attained at exterior points


def test_passant_errors():
    F = field_of_order(3)
    conic = extremal.standard_conic(F)
    with pytest.raises(PointOnConic):
        passant_profile(conic, (1, 0, 0))
    first_off = next(P for P, v in zip(projective_points(F, 2), values(conic)) if v)
    assert passant_profile(conic, first_off) <= 2
