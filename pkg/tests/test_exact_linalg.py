from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from natquiver.errors import FormatError, NonSplit
from natquiver.exact_linalg import (
    FieldSpec,
    Polynomial,
    Subspace,
    inverse,
    kernel_basis,
    minimal_polynomial,
    prime_field,
    rank,
    rationals,
    rref,
    solve,
    split_roots,
)

GF5, GF7, QQ = prime_field(5), prime_field(7), rationals()


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        FieldSpec(6)


def test_large_prime_uses_object_dtype():
    F = prime_field(2**31 - 1)
    a = F.array([[2**30, 3], [5, 2**30]])
    assert a.dtype == object
    assert rank(a, F) == 2


def test_rref_small():
    R, piv, r = rref([[2, 4], [1, 2]], GF5)
    assert r == 1 and list(piv) == [0]
    assert R[0].tolist() == [1, 2]


def test_kernel_and_solve():
    K = kernel_basis([[1, 2]], GF5)
    assert K.tolist() == [[3, 1]]
    x = solve([[1, 1], [0, 1]], [3, 1], GF7)
    assert x.tolist() == [2, 1]
    assert solve([[1, 1], [1, 1]], [0, 1], GF7) is None


def test_rational_inverse():
    m = QQ.array([[1, 2], [3, 4]])
    inv = inverse(m, QQ)
    assert np.array_equal(m @ inv, QQ.eye(2))
    assert inv[0, 0] == Fraction(-2)


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 2], [2, 4]], GF7)


def test_subspace_canonical_and_operations():
    U = Subspace.span(GF7, 3, [[1, 1, 0], [2, 2, 0]])
    V = Subspace.span(GF7, 3, [[3, 3, 0]])
    assert U == V and U.dim == 1
    W = Subspace.span(GF7, 3, [[0, 1, 0], [0, 0, 1]])
    assert (U + W).dim == 3
    assert U.intersection(W).dim == 0
    assert W.intersection(Subspace.span(GF7, 3, [[0, 1, 1], [1, 0, 0]])).dim == 1
    assert U.complement_indices() == [1, 2]
    full = Subspace.full(GF7, 3)
    assert full.quotient_basis(U).shape == (2, 3)


def test_scalar_json_roundtrip():
    assert QQ.to_json(Fraction(-3, 4)) == "-3/4"
    assert QQ.from_json("-3/4") == Fraction(-3, 4)
    assert GF7.from_json("1/2") == 4
    with pytest.raises(FormatError):
        GF7.from_json(True)
    with pytest.raises(FormatError):
        GF7.from_json("1/7")


def test_split_roots_examples():
    assert split_roots(Polynomial([-1, 0, 1], GF5)) == [1, 4]
    assert split_roots(Polynomial([0, -1, 1], QQ)) == [0, 1]
    assert split_roots(Polynomial.from_roots([2, 2, 3], GF7)) == [2, 2, 3]
    with pytest.raises(NonSplit):
        split_roots(Polynomial([1, 0, 1], GF7))
    with pytest.raises(NonSplit):
        split_roots(Polynomial([-2, 0, 1], GF5))  # 2 is not a square mod 5


def test_split_roots_large_prime_random_path():
    p = 1_000_003
    F = prime_field(p)
    f = Polynomial.from_roots([5, 17, p - 1], F)
    assert split_roots(f, seed=3) == [5, 17, p - 1]


def test_minimal_polynomial_of_nilpotent():
    x = GF7.array([0, 1, 0])
    powers = [GF7.array([1, 0, 0]), x, GF7.array([0, 0, 1]), GF7.array([0, 0, 0])]
    assert minimal_polynomial(powers, GF7).coeffs == (0, 0, 0, 1)


def test_polynomial_arithmetic():
    f = Polynomial([1, 2, 1], GF7)  # (x+1)^2
    g = Polynomial([1, 1], GF7)
    q, r = f.divmod(g)
    assert q == g and r.is_zero()
    assert f.gcd(Polynomial([2, 2], GF7)) == g
    assert f(6) == 0
    assert f.derivative() == Polynomial([2, 2], GF7)


matrices = st.lists(st.lists(st.integers(0, 6), min_size=4, max_size=4), min_size=1, max_size=5)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_nullity_and_kernel(rows):
    m = GF7.array(rows)
    K = kernel_basis(m, GF7)
    assert rank(m, GF7) + K.shape[0] == 4
    if K.shape[0]:
        assert not np.any(GF7.reduce(m @ K.T))


@settings(max_examples=40, deadline=None)
@given(matrices, st.integers(0, 10**6))
def test_span_is_independent_of_order(rows, seed):
    rng = np.random.default_rng(seed)
    m = GF7.array(rows)
    perm = rng.permutation(m.shape[0])
    assert Subspace.span(GF7, 4, m) == Subspace.span(GF7, 4, m[perm])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=5))
def test_split_roots_recovers_products_of_linear_factors(roots):
    f = Polynomial.from_roots(roots, GF7)
    assert split_roots(f) == sorted(roots)
