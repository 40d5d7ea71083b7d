import itertools
from collections import Counter

import numpy as np
import pytest

from prmweights.codes import (EXHAUSTIVE_FULL, GRM, PRM, SAMPLED, build_code, codeword_weight, distinct_weights,
                              encode, minimum_weight_prm, weight_spectrum)
from prmweights.errors import BudgetExceeded, DegreeOutOfRange, LengthMismatch
from prmweights.gf import field_of_order
from prmweights.poly import Form, zero_count


def brute_spectrum(code):
    """Every message, encoded one at a time."""
    out = Counter()
    for msg in itertools.product(range(code.field.q), repeat=code.generator.shape[0]):
        out[codeword_weight(code, msg)] += 1
    return dict(out)


@pytest.mark.parametrize("kind,q,d,m,n,k", [
    (PRM, 2, 1, 1, 3, 2),
    (PRM, 3, 2, 2, 13, 6),
    (GRM, 3, 2, 2, 9, 6),
    (PRM, 4, 3, 3, 85, 20),
])
def test_parameters(kind, q, d, m, n, k):
    code = build_code(kind, field_of_order(q), d, m)
    assert (code.n, code.k) == (n, k)


def test_degree_guard_and_large_degree_rank():
    F = field_of_order(3)
    with pytest.raises(DegreeOutOfRange):
        build_code(GRM, F, 0, 2)
    with pytest.raises(DegreeOutOfRange):
        build_code(GRM, F, 3, 2)
    with pytest.raises(DegreeOutOfRange):
        build_code(PRM, F, 4, 2)
    assert build_code(PRM, F, 3, 2).k == 10
    # x^3 = x on GF(3): the rank falls below the monomial count
    code = build_code(GRM, F, 3, 1, allow_large_degree=True)
    assert code.k == 3 and code.generator.shape[0] == 4


def test_encode():
    F = field_of_order(3)
    code = build_code(PRM, F, 1, 2)
    assert codeword_weight(code, [0, 0, 0]) == 0
    assert codeword_weight(code, [1, 0, 0]) == 9
    cubic = build_code(PRM, F, 3, 2)
    f = Form.from_terms(F, 3, 3, {(2, 1, 0): 1, (1, 2, 0): 1})  # x0 x1 (x0 + x1)
    assert codeword_weight(cubic, f.coeffs) == 3
    assert zero_count(cubic.form(f.coeffs)) == 10
    with pytest.raises(LengthMismatch):
        encode(code, [1, 0])


def test_spectrum_examples():
    F2 = field_of_order(2)
    code = build_code(PRM, F2, 1, 1)
    assert weight_spectrum(code, EXHAUSTIVE_FULL).counts == {0: 1, 2: 3}
    assert distinct_weights(weight_spectrum(code)) == [(2, 3)]
    cubic = build_code(PRM, field_of_order(3), 3, 2)
    assert [w for w, _ in distinct_weights(weight_spectrum(cubic), 3)] == [3, 4, 5]
    grm = build_code(GRM, field_of_order(3), 2, 2)
    assert [w for w, _ in distinct_weights(weight_spectrum(grm), 2)] == [3, 4]


@pytest.mark.parametrize("kind,q,d,m", [(PRM, 2, 2, 2), (PRM, 3, 1, 2), (GRM, 3, 2, 2), (GRM, 4, 1, 2),
                                        (PRM, 2, 1, 3), (GRM, 2, 3, 2)])
def test_full_spectrum_matches_brute_force(kind, q, d, m):
    code = build_code(kind, field_of_order(q), d, m, allow_large_degree=True)
    spec = weight_spectrum(code, EXHAUSTIVE_FULL)
    brute = brute_spectrum(code)
    # dependent monomial rows (d >= q) repeat each codeword q^(rows - k) times
    rep = q ** (code.generator.shape[0] - code.k)
    assert {w: c * rep for w, c in spec.counts.items()} == brute
    assert spec.total() == q**code.k


@pytest.mark.parametrize("q,d,m", [(2, 1, 2), (3, 2, 2), (4, 2, 2), (3, 3, 2), (3, 1, 3), (3, 2, 3), (4, 3, 2)])
def test_minimum_weight_formula(q, d, m):
    code = build_code(PRM, field_of_order(q), d, m, allow_large_degree=True)
    spec = weight_spectrum(code)
    assert distinct_weights(spec, 1)[0][0] == minimum_weight_prm(q, d, m)


def test_sampled_is_deterministic_and_plausible():
    code = build_code(PRM, field_of_order(3), 2, 2)
    a = weight_spectrum(code, SAMPLED, n_samples=5000, seed=7)
    b = weight_spectrum(code, SAMPLED, n_samples=5000, seed=7)
    c = weight_spectrum(code, SAMPLED, n_samples=5000, seed=8)
    assert a.counts == b.counts and a.counts != c.counts
    assert a.total() == 5000
    exact = weight_spectrum(code)
    assert set(a.counts) <= set(exact.counts)


def test_workers_do_not_change_spectrum():
    code = build_code(PRM, field_of_order(4), 2, 2)
    assert weight_spectrum(code, workers=1).counts == weight_spectrum(code, workers=3).counts


def test_budget():
    code = build_code(PRM, field_of_order(5), 3, 2)
    with pytest.raises(BudgetExceeded):
        weight_spectrum(code, budget=1000)


def test_csv_and_json():
    code = build_code(PRM, field_of_order(2), 1, 1)
    spec = weight_spectrum(code, EXHAUSTIVE_FULL)
    assert spec.to_csv() == "weight,count\n0,1\n2,3\n"
    obj = spec.to_json(code)
    assert obj["spectrum"] == [[0, 1], [2, 3]] and obj["code"]["n"] == 3
    assert np.array_equal(encode(code, [1, 1]), encode(code, (1, 1)))
