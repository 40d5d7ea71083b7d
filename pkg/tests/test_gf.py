import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from prmweights.errors import DivisionByZero, NonPrimeCharacteristic, OrderExceedsCap
from prmweights.gf import elements, field_of_order, is_irreducible, make_field, rank, row_echelon

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


def naive_mul(F, a, b):
    """Schoolbook product of digit vectors reduced by the modulus."""
    p, e = F.p, F.e
    da = [(a // p**i) % p for i in range(e)]
    db = [(b // p**i) % p for i in range(e)]
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = list(F.modulus)
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for i, m in enumerate(mod):
                prod[k - e + i] = (prod[k - e + i] - c * m) % p
    return sum(c * p**i for i, c in enumerate(prod[:e]))


def test_small_fields():
    F = make_field(2, 2)
    assert F.modulus == (1, 1, 1)
    assert F.q == 4
    assert make_field(3).q == 3
    with pytest.raises(NonPrimeCharacteristic):
        make_field(4, 1)


def test_moduli_are_smallest_irreducible():
    assert make_field(2, 3).modulus == (1, 0, 1, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)
    for q in ORDERS:
        F = field_of_order(q)
        assert is_irreducible(list(F.modulus), F.p)


def test_arithmetic_examples():
    F4 = make_field(2, 2)
    w = 2  # class of t
    assert F4.mul(w, F4.add(w, 1)) == 1
    assert F4.pow(w, 3) == 1
    assert make_field(5).inv(2) == 3
    assert F4.pow(0, 0) == 1


def test_elements_and_units():
    assert elements(make_field(2)) == [0, 1]
    assert len(elements(make_field(2, 2))) == 4
    F9 = field_of_order(9)
    units = [a for a in F9.elements() if a and F9.mul(a, F9.inv(a)) == 1]
    assert len(units) == 8
    with pytest.raises(DivisionByZero):
        F9.inv(0)


def test_cap():
    with pytest.raises(OrderExceedsCap):
        make_field(2, 10, cap=512)


@pytest.mark.parametrize("q", ORDERS)
def test_tables_match_schoolbook(q):
    F = field_of_order(q)
    for a in range(q):
        for b in range(q):
            assert F.mul(a, b) == naive_mul(F, a, b)
            assert F.mul_table[a, b] == F.mul(a, b)
            assert F.add_table[a, b] == F.add(a, b)


@pytest.mark.parametrize("q", ORDERS)
def test_generator_order(q):
    F = field_of_order(q)
    powers = {F.pow(F.generator, k) for k in range(q - 1)}
    assert len(powers) == q - 1


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ORDERS), st.data())
def test_field_axioms(q, data):
    F = field_of_order(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if b:
        assert F.mul(F.div(a, b), b) == a
    assert F.pow(a, q) == a  # Frobenius fixes GF(q)


def test_tables_read_only():
    F = field_of_order(5)
    with pytest.raises(ValueError):
        F.mul_table[1, 1] = 0


def test_row_echelon_and_rank():
    F = field_of_order(3)
    rows = [[1, 2, 0], [2, 1, 0], [0, 1, 1]]
    assert rank(F, rows) == 2
    R = row_echelon(F, rows)
    assert len(R) == 2 and R[0][0] == 1
    assert rank(F, np.eye(3, dtype=int).tolist()) == 3
