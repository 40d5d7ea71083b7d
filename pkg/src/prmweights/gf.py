"""Exact arithmetic in GF(p^e) backed by exp/log tables.

Elements are plain ints. The integer ``a`` encodes the residue polynomial
``sum(c_i * t**i)`` with ``a = sum(c_i * p**i)``, so 0 is the additive and
1 the multiplicative identity.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DivisionByZero, NonPrimeCharacteristic, OrderExceedsCap

DEFAULT_CAP = 2**16
# full q x q tables are only materialised up to this order
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --- polynomials over GF(p), coefficient lists low degree first ------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial b."""
    a = _trim(list(a))
    db = len(b) - 1
    while len(a) - 1 >= db:
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _monic_polys(p: int, deg: int):
    for low in product(range(p), repeat=deg):
        yield list(low) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for k in range(1, deg // 2 + 1):
        for g in _monic_polys(p, k):
            if not _poly_mod(poly, g, p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    # product() yields (c0, c1, ...) with c0 slowest: low-degree-first lex order
    for poly in _monic_polys(p, e):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


class FieldSpec:
    """The finite field GF(p^e) with a fixed modulus.

    Use :func:`make_field` rather than calling this directly. Instances are
    immutable after construction and compare equal iff (p, e) match.
    """

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._digits = [self._to_digits(a) for a in range(self.q)]
        self._build_exp_log()
        self.neg_table = np.array([self._neg_slow(a) for a in range(self.q)], dtype=np.int64)
        self.neg_table.flags.writeable = False
        self._add_table = None
        self._mul_table = None

    # encoding helpers
    def _to_digits(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def _from_digits(self, digits) -> int:
        a = 0
        for c in reversed(digits):
            a = a * self.p + c
        return a

    def _neg_slow(self, a: int) -> int:
        return self._from_digits([(-c) % self.p for c in self._digits[a]])

    def _mul_slow(self, a: int, b: int) -> int:
        da, db = self._digits[a], self._digits[b]
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        r = _poly_mod(prod, list(self.modulus), self.p)
        return self._from_digits(r + [0] * (self.e - len(r)))

    def _build_exp_log(self) -> None:
        q = self.q
        if q == 2:
            self.generator = 1
            self.exp_table = np.array([1], dtype=np.int64)
        else:
            for g in range(2, q):
                powers = [1]
                x = g
                while x != 1:
                    powers.append(x)
                    x = self._mul_slow(x, g)
                if len(powers) == q - 1:
                    break
            self.generator = g
            self.exp_table = np.array(powers, dtype=np.int64)
        self.log_table = np.zeros(q, dtype=np.int64)
        self.log_table[self.exp_table] = np.arange(q - 1)
        self.exp_table.flags.writeable = False
        self.log_table.flags.writeable = False

    # --- arithmetic -----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        da, db = self._digits[a], self._digits[b]
        return self._from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return int(self.exp_table[(-self.log_table[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        """a**k for k >= 0; pow(a, 0) is 1 for every a, including 0."""
        if k < 0:
            raise ValueError("negative exponent")
        if k == 0:
            return 1
        if a == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] * k) % (self.q - 1)])

    def elements(self) -> list[int]:
        return list(range(self.q))

    # --- vectorised tables ------------------------------------------------
    @property
    def add_table(self) -> np.ndarray:
        if self._add_table is None:
            self._check_table_size()
            q = self.q
            if self.p == 2:
                idx = np.arange(q)
                t = idx[:, None] ^ idx[None, :]
            else:
                digits = np.array(self._digits, dtype=np.int64)  # (q, e)
                s = (digits[:, None, :] + digits[None, :, :]) % self.p
                t = (s * (self.p ** np.arange(self.e))).sum(axis=2)
            self._add_table = np.ascontiguousarray(t, dtype=np.int64)
            self._add_table.flags.writeable = False
        return self._add_table

    @property
    def mul_table(self) -> np.ndarray:
        if self._mul_table is None:
            self._check_table_size()
            q = self.q
            lg = self.log_table
            t = self.exp_table[(lg[:, None] + lg[None, :]) % (q - 1)]
            t[0, :] = 0
            t[:, 0] = 0
            self._mul_table = np.ascontiguousarray(t, dtype=np.int64)
            self._mul_table.flags.writeable = False
        return self._mul_table

    @property
    def inv_table(self) -> np.ndarray:
        t = np.zeros(self.q, dtype=np.int64)
        t[1:] = self.exp_table[(-self.log_table[1:]) % (self.q - 1)]
        return t

    def _check_table_size(self) -> None:
        if self.q > TABLE_LIMIT:
            raise OrderExceedsCap(f"dense tables need q <= {TABLE_LIMIT}, got {self.q}")

    # --- misc -------------------------------------------------------------
    def is_square_order(self) -> bool:
        return self.e % 2 == 0

    def sqrt_order(self) -> int | None:
        """sqrt(q) when q is a perfect square, else None."""
        if self.e % 2:
            return None
        return self.p ** (self.e // 2)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.e))

    def __repr__(self) -> str:
        return f"GF({self.q})" if self.e == 1 else f"GF({self.p}^{self.e})"

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e}


@lru_cache(maxsize=None)
def _cached_field(p: int, e: int) -> FieldSpec:
    return FieldSpec(p, e, smallest_irreducible(p, e))


def make_field(p: int, e: int = 1, cap: int = DEFAULT_CAP) -> FieldSpec:
    """GF(p^e) with the lexicographically smallest monic irreducible modulus.

    >>> make_field(2, 2).modulus
    (1, 1, 1)
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if p**e > cap:
        raise OrderExceedsCap(f"{p}^{e} exceeds cap {cap}")
    return _cached_field(p, e)


def field_of_order(q: int, cap: int = DEFAULT_CAP) -> FieldSpec:
    """Resolve a prime power q into make_field(p, e)."""
    if q < 2:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return make_field(p, e, cap)


def elements(field: FieldSpec) -> list[int]:
    return field.elements()


# --- linear algebra over the field ------------------------------------------

def row_echelon(field: FieldSpec, rows) -> list[list[int]]:
    """Reduced row echelon form (nonzero rows only)."""
    mat = [list(map(int, r)) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        piv = next((i for i in range(pivot_row, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[pivot_row], mat[piv] = mat[piv], mat[pivot_row]
        s = field.inv(mat[pivot_row][col])
        mat[pivot_row] = [field.mul(s, x) for x in mat[pivot_row]]
        for i in range(len(mat)):
            if i != pivot_row and mat[i][col]:
                c = mat[i][col]
                mat[i] = [field.sub(x, field.mul(c, y)) for x, y in zip(mat[i], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return mat[:pivot_row]


def rank(field: FieldSpec, rows) -> int:
    return len(row_echelon(field, rows))
