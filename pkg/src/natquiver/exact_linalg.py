"""Exact scalar arithmetic, dense matrices and split-root factorization.

Two kinds of base field are supported: prime fields GF(p) and the rationals.
Matrices are plain numpy arrays.  Over GF(p) (p < 2**25) they are ``int64``
arrays holding canonical residues; over larger primes and over Q they are
``object`` arrays holding Python ints / :class:`fractions.Fraction`.  Every
function takes the field explicitly, so arrays never carry hidden state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import FormatError, NonSplit

_INT64_PRIME_BOUND = 2**25
_EXHAUSTIVE_ROOT_BOUND = 2**16

_to_fraction = np.frompyfunc(Fraction, 1, 1)


@dataclass(frozen=True)
class FieldSpec:
    """Either GF(p) (``p`` a prime) or Q (``p is None``)."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None:
            from sympy import isprime

            if not isinstance(self.p, int) or not isprime(self.p):
                raise ValueError(f"{self.p!r} is not a prime")

    @property
    def char(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def dtype(self):
        if self.p is not None and self.p < _INT64_PRIME_BOUND:
            return np.int64
        return object

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    # scalars ---------------------------------------------------------------

    def scalar(self, x) -> int | Fraction:
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x) -> int | Fraction:
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def elements(self) -> range:
        if self.p is None:
            raise ValueError("Q is infinite")
        return range(self.p)

    # arrays ----------------------------------------------------------------

    def array(self, data) -> np.ndarray:
        if self.p is None:
            arr = np.array(data, dtype=object)
            return _to_fraction(arr) if arr.size else arr
        if self.dtype is object:
            arr = np.array(data, dtype=object)
            if arr.size and any(isinstance(v, Fraction) for v in arr.flat):
                arr = np.frompyfunc(self.scalar, 1, 1)(arr)
            return np.mod(arr, self.p)
        arr = np.array(data)
        if arr.dtype == object:
            arr = np.frompyfunc(self.scalar, 1, 1)(arr).astype(np.int64)
        return np.mod(arr.astype(np.int64), self.p)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.p is None:
            return arr
        return np.mod(arr, self.p)

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            return np.full(shape, 0, dtype=object)
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = 1
        return out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a @ b)

    def random(self, rng: np.random.Generator, shape, low: int = -3, high: int = 3) -> np.ndarray:
        if self.p is None:
            return self.array(rng.integers(low, high + 1, size=shape))
        return self.array(rng.integers(0, self.p, size=shape))

    # serialization ---------------------------------------------------------

    def to_json(self, x):
        if self.p is None:
            x = Fraction(x)
            return f"{x.numerator}/{x.denominator}"
        return int(x)

    def from_json(self, value):
        if isinstance(value, bool):
            raise FormatError(f"boolean is not a scalar: {value!r}")
        if isinstance(value, int):
            return self.scalar(value)
        if isinstance(value, str):
            try:
                return self.scalar(Fraction(value.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise FormatError(f"bad scalar {value!r}") from exc
        raise FormatError(f"bad scalar {value!r}")

    def descriptor(self) -> dict:
        return {"rationals": True} if self.p is None else {"char": self.p}

    @classmethod
    def from_descriptor(cls, desc) -> "FieldSpec":
        if not isinstance(desc, dict):
            raise FormatError("field must be an object")
        if desc.get("rationals"):
            return cls(None)
        if "char" in desc:
            try:
                return cls(int(desc["char"]))
            except (TypeError, ValueError) as exc:
                raise FormatError(f"field.char: {exc}") from exc
        raise FormatError("field needs 'char' or 'rationals'")


def prime_field(p: int) -> FieldSpec:
    return FieldSpec(p)


def rationals() -> FieldSpec:
    return FieldSpec(None)


def is_zero(arr: np.ndarray) -> bool:
    return np.count_nonzero(arr) == 0


# ---------------------------------------------------------------------------
# row reduction


def rref(m, field: FieldSpec) -> tuple[np.ndarray, list[int], int]:
    """Reduced row-echelon form, pivot columns and rank."""
    R = field.array(m).copy()
    if R.ndim != 2:
        raise ValueError("rref needs a 2-d matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        lead = R[r, c]
        if lead != 1:
            R[r, c:] = field.reduce(R[r, c:] * field.inv(lead))
        col = R[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            R[hit, c:] = field.reduce(R[hit, c:] - np.outer(col[hit], R[r, c:]))
        pivots.append(c)
        r += 1
    return R, pivots, r


def rank(m, field: FieldSpec) -> int:
    m = field.array(m)
    if m.size == 0:
        return 0
    return rref(m, field)[2]


def kernel_basis(m, field: FieldSpec) -> np.ndarray:
    """Rows form a basis of {v : m v = 0}."""
    m = field.array(m)
    rows, cols = m.shape
    if rows == 0:
        return field.eye(cols)
    R, pivots, r = rref(m, field)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = field.zeros((len(free), cols))
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(pivots):
            out[k, pc] = field.reduce(-R[i, f]) if field.p is not None else -R[i, f]
    return out


def solve(a, b, field: FieldSpec) -> np.ndarray | None:
    """One solution x of a x = b (b a vector or a matrix of columns), or None."""
    a = field.array(a)
    b = field.array(b)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    rows, cols = a.shape
    aug = np.concatenate([a, b], axis=1) if a.size or b.size else field.zeros((rows, cols + b.shape[1]))
    R, pivots, r = rref(aug, field)
    if any(p >= cols for p in pivots):
        return None
    x = field.zeros((cols, b.shape[1]))
    for i, pc in enumerate(pivots):
        x[pc] = R[i, cols:]
    return x[:, 0] if vec else x


def inverse(m, field: FieldSpec) -> np.ndarray:
    m = field.array(m)
    n = m.shape[0]
    R, pivots, r = rref(np.concatenate([m, field.eye(n)], axis=1), field)
    if r < n or pivots[n - 1] >= n:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of field^n stored by its canonical reduced echelon basis.

    Two equal subspaces have identical ``basis`` arrays, so equality is a
    plain array comparison.
    """

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient: int, basis: np.ndarray, pivots: Sequence[int]):
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, field: FieldSpec, ambient: int, vectors, chunk: int = 512) -> "Subspace":
        vecs = field.array(vectors)
        if vecs.size == 0:
            return cls.zero(field, ambient)
        vecs = vecs.reshape(-1, ambient)
        space = cls.zero(field, ambient)
        for start in range(0, vecs.shape[0], chunk):
            space = space.extend(vecs[start : start + chunk])
        return space

    @classmethod
    def zero(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, field.zeros((0, ambient)), ())

    @classmethod
    def full(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, field.eye(ambient), range(ambient))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.pivots == other.pivots
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self):
        return hash((self.ambient, self.pivots))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def reduce(self, vectors) -> np.ndarray:
        """Residues of ``vectors`` modulo the subspace (zero on every pivot)."""
        v = self.field.array(vectors)
        if self.dim == 0:
            return v
        piv = list(self.pivots)
        return self.field.reduce(v - v[..., piv] @ self.basis)

    def extend(self, vectors) -> "Subspace":
        if self.ambient == 0 or np.size(vectors) == 0:
            return self
        res = self.reduce(vectors).reshape(-1, self.ambient)
        keep = np.nonzero(np.count_nonzero(res, axis=1))[0] if res.size else []
        if len(keep) == 0:
            return self
        stacked = np.concatenate([self.basis, res[keep]], axis=0)
        R, pivots, r = rref(stacked, self.field)
        return Subspace(self.field, self.ambient, R[:r], pivots)

    def __add__(self, other: "Subspace") -> "Subspace":
        return self.extend(other.basis)

    def contains(self, vectors) -> bool:
        return is_zero(self.reduce(vectors))

    def contains_space(self, other: "Subspace") -> bool:
        return other.dim == 0 or self.contains(other.basis)

    def coordinates(self, vectors) -> np.ndarray:
        """Coordinates w.r.t. ``basis`` of vectors assumed to lie in the space."""
        v = self.field.array(vectors)
        return v[..., list(self.pivots)]

    def complement_indices(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient) if c not in piv]

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        # x U = y V  <=>  [U; -V]^T (x, y) = 0
        stacked = np.concatenate([self.basis, self.field.reduce(-other.basis)], axis=0)
        ker = kernel_basis(stacked.T, self.field)
        if ker.shape[0] == 0:
            return Subspace.zero(self.field, self.ambient)
        return Subspace.span(self.field, self.ambient, self.field.matmul(ker[:, : self.dim], self.basis))

    def quotient_basis(self, sub: "Subspace") -> np.ndarray:
        """Canonical coset representatives for self / sub (sub ⊆ self).

        The rows are the reduced echelon form of ``self`` modulo ``sub``, so
        they vanish on the pivots of ``sub``.
        """
        if self.dim == 0:
            return self.field.zeros((0, self.ambient))
        res = sub.reduce(self.basis)
        R, pivots, r = rref(res, self.field)
        return R[:r]


def column_space(m, field: FieldSpec) -> Subspace:
    m = field.array(m)
    return Subspace.span(field, m.shape[0], m.T)


def row_space(m, field: FieldSpec) -> Subspace:
    m = field.array(m)
    return Subspace.span(field, m.shape[1], m)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs: Iterable, field: FieldSpec):
        cs = [field.scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: FieldSpec) -> "Polynomial":
        return cls([0, 1], field)

    @classmethod
    def from_roots(cls, roots: Iterable, field: FieldSpec, lead=1) -> "Polynomial":
        out = cls([lead], field)
        for r in roots:
            out = out * cls([-field.scalar(r), 1], field)
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.scalar(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)}, {self.field})"

    def _wrap(self, cs) -> "Polynomial":
        return Polynomial(cs, self.field)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return self._wrap(x + y for x, y in zip(a, b))

    def __neg__(self) -> "Polynomial":
        return self._wrap(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return self._wrap([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return self._wrap(out)

    def scale(self, c) -> "Polynomial":
        return self._wrap(c * a for a in self.coeffs)

    def monic(self) -> "Polynomial":
        return self.scale(self.field.inv(self.lead)) if self.coeffs else self

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - other.degree, 1)
        inv_lead = f.inv(other.lead)
        d = other.degree
        while len(rem) - 1 >= d and rem:
            shift = len(rem) - 1 - d
            c = f.scalar(rem[-1] * inv_lead)
            q[shift] = c
            for k, b in enumerate(other.coeffs):
                rem[shift + k] = f.scalar(rem[shift + k] - c * b)
            while rem and rem[-1] == 0:
                rem.pop()
        return self._wrap(q), self._wrap(rem)

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, mod: "Polynomial") -> "Polynomial":
        result = self._wrap([1]) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def __call__(self, x):
        acc = self.field.scalar(0)
        for c in reversed(self.coeffs):
            acc = self.field.scalar(acc * x + c)
        return acc

    def derivative(self) -> "Polynomial":
        return self._wrap(k * c for k, c in enumerate(self.coeffs) if k > 0)


def _distinct_roots_gfp(f: Polynomial, rng: np.random.Generator) -> list[int]:
    """Distinct roots in GF(p) of a monic polynomial."""
    field = f.field
    p = field.p
    if f.degree <= 0:
        return []
    x = Polynomial.x(field)
    g = (x.powmod(p, f) - x).gcd(f) if f.degree > 0 else f
    if g.degree <= 0:
        return []
    if p <= _EXHAUSTIVE_ROOT_BOUND:
        return [a for a in range(p) if g(a) == 0]
    return sorted(_split_linear_product(g, rng))


def _split_linear_product(g: Polynomial, rng: np.random.Generator) -> list[int]:
    field = g.field
    p = field.p
    if g.degree == 0:
        return []
    if g.degree == 1:
        return [field.scalar(-g.coeffs[0] * field.inv(g.coeffs[1]))]
    while True:
        a = int(rng.integers(0, p))
        shifted = Polynomial([a, 1], field)
        h = (shifted.powmod((p - 1) // 2, g) - Polynomial([1], field)).gcd(g)
        if 0 < h.degree < g.degree:
            return _split_linear_product(h, rng) + _split_linear_product(g.divmod(h)[0], rng)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _distinct_roots_q(f: Polynomial) -> list[Fraction]:
    cs = [Fraction(c) for c in f.coeffs]
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    roots: set[Fraction] = set()
    k = 0
    while k < len(ints) and ints[k] == 0:
        k += 1
    if k > 0:
        roots.add(Fraction(0))
    ints = ints[k:]
    if len(ints) > 1:
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if f(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def split_roots(f: Polynomial, seed: int = 0) -> list:
    """All roots of ``f`` with multiplicity, or raise :class:`NonSplit`.

    Over GF(p) the distinct roots are the roots of gcd(f, x^p - x); over Q
    they come from the rational root theorem.  Any factor left after
    dividing out every root has no roots and therefore degree >= 2.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has no finite root multiset")
    field = f.field
    if field.is_prime_field:
        distinct = _distinct_roots_gfp(f.monic(), np.random.default_rng(seed))
    else:
        distinct = _distinct_roots_q(f)
    roots: list = []
    rest = f
    for r in distinct:
        lin = Polynomial([-r, 1], field)
        while rest.degree >= 1:
            q, rem = rest.divmod(lin)
            if not rem.is_zero():
                break
            roots.append(r)
            rest = q
    if rest.degree >= 1:
        raise NonSplit(f"factor of degree {rest.degree} without roots in {field}")
    return sorted(roots)


def minimal_polynomial(powers: Sequence[np.ndarray], field: FieldSpec) -> Polynomial:
    """Minimal relation among a sequence of vectors 1, z, z^2, ...

    ``powers[k]`` must be the coordinate vector of z^k; the sequence must be
    long enough to contain the first linear dependency.
    """
    for d in range(1, len(powers)):
        mat = field.array(np.stack(powers[: d + 1], axis=1))
        ker = kernel_basis(mat, field)
        if ker.shape[0]:
            return Polynomial(ker[0], field).monic()
    raise ValueError("sequence of powers too short for a dependency")
