"""Dense multivariate polynomials over GF(q).

A :class:`Form` stores a coefficient vector over a fixed graded-lex monomial
basis. Homogeneous forms of degree d in m+1 variables describe hypersurfaces
of PG(m, q); affine polynomials of degree <= d in m variables describe
hypersurfaces of AG(m, q).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from .errors import DimensionMismatch, FieldMismatch, ZeroForm, ZeroPolynomial
from .geometry import affine_points, hyperplanes, incidence_matrix, normalize, projective_points
from .gf import FieldSpec, field_of_order, make_field

Monomial = tuple


@lru_cache(maxsize=None)
def _homogeneous_basis(nvars: int, d: int) -> tuple:
    monos = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        monos.append(tuple(e))
    monos.sort(reverse=True)
    return tuple(monos)


def monomial_basis(nvars: int, d: int, homogeneous: bool = True) -> list[Monomial]:
    """Graded-lex monomial basis.

    Homogeneous: all exponent vectors of total degree d, x0^d first.
    Affine: degrees 0, 1, ..., d in turn, each block ordered as above.
    """
    if d < 0:
        raise ValueError("degree must be >= 0")
    if homogeneous:
        return list(_homogeneous_basis(nvars, d))
    out = []
    for k in range(d + 1):
        out.extend(_homogeneous_basis(nvars, k))
    return out


@lru_cache(maxsize=None)
def _basis_index(nvars: int, d: int, homogeneous: bool) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(nvars, d, homogeneous))}


def point_set(field: FieldSpec, nvars: int, space: str) -> list[tuple]:
    if space == "projective":
        return projective_points(field, nvars - 1)
    if space == "affine":
        return affine_points(field, nvars)
    raise ValueError(f"unknown space {space!r}")


@lru_cache(maxsize=None)
def evaluation_matrix(field: FieldSpec, nvars: int, d: int, homogeneous: bool, space: str) -> np.ndarray:
    """Row j holds monomial j of the basis evaluated at every point of ``space``.

    This is the generator matrix of the evaluation code: columns follow the
    frozen point order.
    """
    pts = np.array(point_set(field, nvars, space), dtype=np.int64)
    basis = monomial_basis(nvars, d, homogeneous)
    # powers[v][k] = x_v^k at each point; 0^0 = 1
    lg, ex, q = field.log_table, field.exp_table, field.q
    mul = field.mul_table
    powers = np.ones((nvars, d + 1, len(pts)), dtype=np.int64)
    for v in range(nvars):
        x = pts[:, v]
        for k in range(1, d + 1):
            powers[v, k] = np.where(x == 0, 0, ex[(lg[x] * k) % (q - 1)])
    mat = np.ones((len(basis), len(pts)), dtype=np.int64)
    for j, mono in enumerate(basis):
        row = mat[j]
        for v, k in enumerate(mono):
            if k:
                row = mul[row, powers[v, k]]
        mat[j] = row
    mat.flags.writeable = False
    return mat


def combine_rows(field: FieldSpec, rows: np.ndarray, coeffs) -> np.ndarray:
    """sum_j coeffs[j] * rows[j] over the field."""
    add, mul = field.add_table, field.mul_table
    acc = np.zeros(rows.shape[1], dtype=np.int64)
    for c, row in zip(coeffs, rows):
        if c:
            acc = add[acc, mul[c, row]]
    return acc


@dataclass(frozen=True)
class Form:
    """Polynomial with a dense coefficient vector in basis order.

    Field elements are int encodings (see :mod:`prmweights.gf`).
    """

    field: FieldSpec = dc_field(repr=False)
    nvars: int
    degree: int
    coeffs: tuple
    homogeneous: bool = True

    def __post_init__(self):
        n = len(monomial_basis(self.nvars, self.degree, self.homogeneous))
        if len(self.coeffs) != n:
            raise DimensionMismatch(f"expected {n} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    # construction ---------------------------------------------------------
    @classmethod
    def from_terms(cls, field, nvars, degree, terms: dict, homogeneous=True) -> "Form":
        index = _basis_index(nvars, degree, homogeneous)
        coeffs = [0] * len(index)
        for mono, c in terms.items():
            mono = tuple(mono)
            if mono not in index:
                raise DimensionMismatch(f"monomial {mono} is not in the degree-{degree} basis")
            coeffs[index[mono]] = field.add(coeffs[index[mono]], c)
        return cls(field, nvars, degree, tuple(coeffs), homogeneous)

    @classmethod
    def linear(cls, field, coeffs) -> "Form":
        """The homogeneous linear form sum(coeffs[i] * x_i)."""
        n = len(coeffs)
        return cls.from_terms(field, n, 1, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs) if c})

    @classmethod
    def constant(cls, field, nvars, c=1, homogeneous=True) -> "Form":
        return cls(field, nvars, 0, (c,), homogeneous)

    @property
    def basis(self) -> list[Monomial]:
        return monomial_basis(self.nvars, self.degree, self.homogeneous)

    def terms(self) -> dict:
        return {m: c for m, c in zip(self.basis, self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def scale(self, c: int) -> "Form":
        return Form(self.field, self.nvars, self.degree, tuple(self.field.mul(c, x) for x in self.coeffs), self.homogeneous)

    def normalized(self) -> tuple["Form", int]:
        """(g, unit) with g's first nonzero coefficient 1 and self == unit * g."""
        lead = next((c for c in self.coeffs if c), None)
        if lead is None:
            raise ZeroPolynomial("the zero polynomial has no normalization")
        return self.scale(self.field.inv(lead)), lead

    def __mul__(self, other: "Form") -> "Form":
        return multiply(self, other)

    def __str__(self) -> str:
        return format_form(self)

    # serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "nvars": self.nvars,
            "degree": self.degree,
            "homogeneous": self.homogeneous,
            "coeffs": list(self.coeffs),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Form":
        f = obj["field"]
        field = make_field(f["p"], f.get("e", 1)) if "p" in f else field_of_order(f["q"])
        return cls(field, obj["nvars"], obj["degree"], tuple(obj["coeffs"]), obj.get("homogeneous", True))


def format_form(f: Form) -> str:
    parts = []
    for mono, c in f.terms().items():
        vs = []
        for v, k in enumerate(mono):
            if k == 1:
                vs.append(f"x{v}")
            elif k > 1:
                vs.append(f"x{v}^{k}")
        body = "*".join(vs)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        else:
            parts.append(f"{c}*{body}")
    return " + ".join(parts) if parts else "0"


# --- evaluation ---------------------------------------------------------------

def _space_of(f: Form, space: str | None) -> str:
    if space is None:
        return "projective" if f.homogeneous else "affine"
    return space


def evaluate(f: Form, point) -> int:
    """Value of f at the given coordinate tuple (representative as given)."""
    if len(point) != f.nvars:
        raise DimensionMismatch(f"point has {len(point)} coordinates, form has {f.nvars} variables")
    F = f.field
    acc = 0
    for mono, c in zip(f.basis, f.coeffs):
        if not c:
            continue
        t = c
        for x, k in zip(point, mono):
            if k:
                t = F.mul(t, F.pow(x, k))
        acc = F.add(acc, t)
    return acc


def values(f: Form, space: str | None = None) -> np.ndarray:
    """f evaluated at every point of the space, in frozen point order."""
    space = _space_of(f, space)
    E = evaluation_matrix(f.field, f.nvars, f.degree, f.homogeneous, space)
    return combine_rows(f.field, E, f.coeffs)


def zero_set(f: Form, space: str | None = None) -> list[tuple]:
    space = _space_of(f, space)
    pts = point_set(f.field, f.nvars, space)
    return [P for P, v in zip(pts, values(f, space)) if v == 0]


def zero_count(f: Form, space: str | None = None) -> int:
    if f.is_zero():
        raise ZeroPolynomial("zero_count of the zero polynomial")
    return int(np.count_nonzero(values(f, space) == 0))


# --- sparse arithmetic helpers -----------------------------------------------

def _sparse_mul(F: FieldSpec, a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = F.add(out.get(m, 0), F.mul(ca, cb))
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _sparse_add_into(F: FieldSpec, acc: dict, b: dict, scale: int = 1) -> None:
    for m, c in b.items():
        v = F.add(acc.get(m, 0), F.mul(scale, c))
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def _from_sparse(F, nvars, degree, terms, homogeneous=True) -> Form:
    return Form.from_terms(F, nvars, degree, terms, homogeneous)


def multiply(f: Form, g: Form) -> Form:
    if f.field != g.field:
        raise FieldMismatch(f"{f.field!r} vs {g.field!r}")
    if f.nvars != g.nvars or f.homogeneous != g.homogeneous:
        raise DimensionMismatch("forms live in different polynomial rings")
    prod = _sparse_mul(f.field, f.terms(), g.terms())
    return _from_sparse(f.field, f.nvars, f.degree + g.degree, prod, f.homogeneous)


def product(forms, field=None, nvars=None) -> Form:
    forms = list(forms)
    if not forms:
        return Form.constant(field, nvars)
    out = forms[0]
    for g in forms[1:]:
        out = multiply(out, g)
    return out


def substitute(f: Form, images: list[dict], nvars_out: int, homogeneous: bool) -> Form:
    """Replace variable i by the sparse linear/affine polynomial images[i]."""
    F = f.field
    pow_cache: dict = {}

    def power(v, k):
        key = (v, k)
        if key not in pow_cache:
            if k == 0:
                pow_cache[key] = {(0,) * nvars_out: 1}
            else:
                pow_cache[key] = _sparse_mul(F, power(v, k - 1), images[v])
        return pow_cache[key]

    acc: dict = {}
    for mono, c in f.terms().items():
        t = {(0,) * nvars_out: c}
        for v, k in enumerate(mono):
            if k:
                t = _sparse_mul(F, t, power(v, k))
        _sparse_add_into(F, acc, t)
    return _from_sparse(F, nvars_out, f.degree, acc, homogeneous)


def transform(f: Form, A) -> Form:
    """f(A x): variable i becomes sum_j A[i][j] x_j."""
    n = f.nvars
    images = []
    for i in range(n):
        images.append({tuple(int(j == k) for k in range(n)): int(A[i][j]) for j in range(n) if A[i][j]})
    return substitute(f, images, n, f.homogeneous)


# --- division by linear forms -------------------------------------------------

def divide_by_linear(f: Form, L) -> Form | None:
    """Exact quotient f / L, or None when L does not divide f.

    The pivot variable (first nonzero coefficient of L) is eliminated term by
    term; a nonzero remainder means L is not a factor.
    """
    if not f.homogeneous:
        raise ValueError("divide_by_linear expects a homogeneous form")
    F = f.field
    L = tuple(L)
    if len(L) != f.nvars:
        raise DimensionMismatch("linear form has the wrong number of variables")
    if not any(L):
        raise ZeroPolynomial("division by the zero form")
    piv = next(i for i, c in enumerate(L) if c)
    s = F.inv(L[piv])
    Ln = [F.mul(s, c) for c in L]
    if f.is_zero():
        return Form.from_terms(F, f.nvars, max(f.degree - 1, 0), {})
    if f.degree == 0:
        return None
    rem = dict(f.terms())
    quo: dict = {}
    while True:
        cand = [m for m in rem if m[piv]]
        if not cand:
            break
        mono = max(cand, key=lambda m: m[piv])
        c = rem[mono]
        lower = list(mono)
        lower[piv] -= 1
        lower = tuple(lower)
        quo[lower] = F.add(quo.get(lower, 0), c)
        for j, a in enumerate(Ln):
            if a:
                m = list(lower)
                m[j] += 1
                m = tuple(m)
                v = F.sub(rem.get(m, 0), F.mul(c, a))
                if v:
                    rem[m] = v
                else:
                    rem.pop(m, None)
    if rem:
        return None
    quo = {m: c for m, c in quo.items() if c}
    # undo the normalization of L: f = (s*L) * quo  =>  f = L * (s*quo)
    quo = {m: F.mul(s, c) for m, c in quo.items()}
    return _from_sparse(F, f.nvars, f.degree - 1, quo)


@dataclass(frozen=True)
class LinearFactorization:
    """f = unit * prod(L ** mult for L, mult in linear_part) * residual."""

    linear_part: tuple  # ((LinearForm, multiplicity), ...)
    residual: Form
    unit: int

    @property
    def s(self) -> int:
        return sum(k for _, k in self.linear_part)

    @property
    def distinct_lines(self) -> list:
        return [L for L, _ in self.linear_part]

    def reconstruct(self) -> Form:
        F = self.residual.field
        out = self.residual.scale(self.unit)
        for L, k in self.linear_part:
            for _ in range(k):
                out = multiply(Form.linear(F, L), out)
        return out


def linear_factors(f: Form) -> LinearFactorization:
    """Extract every F_q-rational linear factor, with multiplicity.

    Hyperplanes are probed in frozen order. A candidate is only tried when
    all of its rational points are zeros of f (a necessary condition for
    divisibility), then confirmed by exact division.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero form")
    if not f.homogeneous:
        raise ValueError("linear_factors expects a homogeneous form")
    F, n = f.field, f.nvars
    found = []
    g = f
    if f.degree > 0 and n >= 2:
        zeros = values(f) == 0
        inc = incidence_matrix(F, n - 1)
        for h, row in zip(hyperplanes(F, n - 1), inc):
            if g.degree == 0:
                break
            if not zeros[row].all():
                continue
            k = 0
            while g.degree > 0:
                quo = divide_by_linear(g, h)
                if quo is None:
                    break
                g = quo
                k += 1
            if k:
                found.append((h, k))
    residual, unit = g.normalized()
    return LinearFactorization(tuple(found), residual, unit)


# --- dehomogenization ---------------------------------------------------------

def dehomogenize(f: Form, h) -> Form:
    """Affine part of f after sending the hyperplane h to infinity.

    With pivot i = first nonzero coordinate of h, the new coordinates are
    y_0 = h(x) and x_j (j != i); the result is f in those coordinates with
    y_0 = 1, an affine polynomial in the m remaining variables, listed in
    their original order. Its affine zeros biject with the zeros of f off h.
    """
    if not f.homogeneous:
        raise ValueError("dehomogenize expects a homogeneous form")
    F, n = f.field, f.nvars
    h = normalize(F, h)
    if len(h) != n:
        raise DimensionMismatch("hyperplane has the wrong number of coordinates")
    piv = next(i for i, c in enumerate(h) if c)
    others = [j for j in range(n) if j != piv]
    m = n - 1
    images = []
    for v in range(n):
        if v == piv:
            # x_piv = 1 - sum_{j != piv} h_j x_j
            img = {(0,) * m: 1}
            for t, j in enumerate(others):
                if h[j]:
                    img[tuple(int(t == u) for u in range(m))] = F.neg(h[j])
        else:
            t = others.index(v)
            img = {tuple(int(t == u) for u in range(m)): 1}
        images.append(img)
    g = substitute(f, images, m, homogeneous=False)
    if f.degree > 0 and all(c == 0 for c in g.coeffs[1:]):
        raise ZeroForm("f is a multiple of h^d; its affine part is empty")
    return g


def random_form(field: FieldSpec, nvars: int, d: int, rng, homogeneous=True, normalized=False) -> Form:
    """Uniformly random nonzero form (numpy Generator ``rng``)."""
    k = len(monomial_basis(nvars, d, homogeneous))
    while True:
        c = rng.integers(0, field.q, size=k)
        if c.any():
            break
    f = Form(field, nvars, d, tuple(int(x) for x in c), homogeneous)
    return f.normalized()[0] if normalized else f


def basis_size(nvars: int, d: int, homogeneous: bool = True) -> int:
    return comb(d + nvars - 1, nvars - 1) if homogeneous else comb(d + nvars, nvars)
