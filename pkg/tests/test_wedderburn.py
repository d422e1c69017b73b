from __future__ import annotations

import numpy as np
import pytest

from conftest import GF2, GF3, GF5, GF7, QQ, corpus, symmetric_group3
from natquiver.algebra import AlgebraPresentation, quotient
from natquiver.constructions import direct_product, group_algebra_cyclic, matrix_algebra, triangular
from natquiver.errors import NonSplit
from natquiver.exact_linalg import Subspace
from natquiver.wedderburn import (
    central_idempotents,
    decompose_semisimple,
    lift_idempotents,
    lifting_properties,
    minimal_left_ideal,
    primitive_idempotent,
    wedderburn,
)


def quadratic_extension(field, c):
    """k[x]/(x^2 - c): a field when c is a non-square."""
    table = field.zeros((2, 2, 2))
    table[0, 0, 0] = table[0, 1, 1] = table[1, 0, 1] = 1
    table[1, 1, 0] = field.scalar(c)
    return AlgebraPresentation(field, ("1", "x"), table, field.array([1, 0]))


def test_nonsplit_quadratic_extension():
    with pytest.raises(NonSplit):
        decompose_semisimple(quadratic_extension(GF5, 2))


def test_split_quadratic_extension_has_two_blocks():
    S = quadratic_extension(GF5, 4)  # x^2 - 4 = (x - 2)(x + 2)
    blocks = decompose_semisimple(S)
    assert [b.n for b in blocks] == [1, 1]


def test_three_dimensional_block_is_nonsplit():
    # GF(2)[C3] = GF(2) x GF(4); the second factor has dimension 2 and is not split
    with pytest.raises(NonSplit):
        wedderburn(group_algebra_cyclic(3, GF2))


def test_matrix_units_of_m3():
    S = matrix_algebra(3, GF7)
    (blk,) = decompose_semisimple(S)
    assert blk.n == 3
    f = S.field
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    want = blk.matrix_units[a, d] if b == c else f.zeros(S.dim)
                    assert np.array_equal(S.mul(blk.matrix_units[a, b], blk.matrix_units[c, d]), want)
    # the block times E_11 is the minimal left ideal
    full = f.eye(S.dim)
    L = Subspace.span(f, S.dim, S.products(full, blk.primitive_idempotent[None, :])[:, 0])
    assert L == blk.left_ideal and L.dim == 3


def test_represent_roundtrip():
    S = matrix_algebra(2, GF5)
    (blk,) = decompose_semisimple(S)
    m = GF5.array([[1, 2], [3, 4]])
    x = blk.from_matrix(m)
    assert np.array_equal(blk.represent(S, x), m)


def test_minimal_left_ideal_with_start():
    S = matrix_algebra(2, GF3)
    block = Subspace.full(GF3, 4)
    L = minimal_left_ideal(S, block, start=S.basis_vector(0))
    assert L.dim == 2
    with pytest.raises(NonSplit):
        minimal_left_ideal(triangular(2, GF3), Subspace.full(GF3, 3))


def test_primitive_idempotent_in_m2_over_gf2():
    S = matrix_algebra(2, GF2)
    e = primitive_idempotent(S)
    assert np.array_equal(S.mul(e, e), e) and not np.array_equal(e, S.unit)


def test_central_idempotents_of_group_algebra():
    S = symmetric_group3(GF5)
    es = central_idempotents(S)
    assert len(es) == 3
    assert np.array_equal(GF5.reduce(sum(es)), S.unit)
    sizes = sorted(b.n for b in decompose_semisimple(S))
    assert sizes == [1, 1, 2]


def test_block_sizes_over_q():
    W = wedderburn(direct_product([matrix_algebra(2, QQ), triangular(2, QQ)]))
    assert W.sizes == (1, 1, 2)


@pytest.mark.parametrize("name,A", corpus(), ids=[n for n, _ in corpus()])
def test_lifting_properties_on_corpus(name, A):
    try:
        W = wedderburn(A)
    except NonSplit:
        pytest.skip("not split")
    for fam in (W.complete_family(), W.primitive_family(), W.central_family()):
        lifted = lift_idempotents(A, fam, W.projection, W.radical)
        assert all(lifting_properties(A, fam, lifted, W.projection).values())


def test_gf3_s3_blocks():
    # trivial and sign characters stay distinct mod 3; the 2-dim simple degenerates
    A = symmetric_group3(GF3)
    W = wedderburn(A)
    assert W.sizes == (1, 1) and W.radical.dim == 4
    S, _ = quotient(A, W.radical)
    assert S.dim == 2
