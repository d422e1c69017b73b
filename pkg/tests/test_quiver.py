from __future__ import annotations

import json

import numpy as np
import pytest

from conftest import GF3, GF5, GF7, QQ, a2_algebra, corpus, kronecker_with_relation, loop_algebra
from natquiver.constructions import (
    direct_product,
    matrix_algebra,
    random_block_bimodule,
    triangular,
)
from natquiver.errors import MalformedBimodule, NonSplit, OracleLimit
from natquiver.quiver import (
    Analysis,
    Bimodule,
    Quiver,
    all_components,
    bimodule_rank,
    export_quiver,
    is_dense_subquiver,
    isomorphism,
    min_generators_oracle,
    natural_quiver,
    ordinary_quiver,
    radical_bimodule,
    simple_multiplicity,
)
from natquiver.wedderburn import decompose_semisimple


def regular_bimodule(S):
    """S as a bimodule over itself."""
    f = S.field
    left = np.stack([S.left_matrix(S.basis_vector(s)) for s in range(S.dim)])
    right = np.stack([f.reduce(S.table[:, s, :].T) for s in range(S.dim)])
    return Bimodule(S, tuple(decompose_semisimple(S)), left, right)


def test_rank_formula_examples():
    assert bimodule_rank(4, 2, 2) == 1  # regular M2
    assert bimodule_rank(2, 1, 1) == 2
    assert bimodule_rank(12, 2, 1) == 3  # multiplicity 6 over n_i n_j = 2
    assert bimodule_rank(0, 3, 3) == 0
    with pytest.raises(MalformedBimodule):
        simple_multiplicity(3, 2, 1)


def test_regular_m2_needs_one_generator():
    S = matrix_algebra(2, GF5)
    M = regular_bimodule(S)
    assert M.check()
    (c,) = [c for c in all_components(M).values() if c.dims]
    assert c.dims == 4 and bimodule_rank(c) == 1
    assert len(min_generators_oracle(c)) == 1


def test_oracle_on_twelve_dim_component():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        comp, n1, n2, m = random_block_bimodule(rng, GF3, max_dim=12)
        if comp.dims == 12 and n1 * n2 == 2:
            assert len(min_generators_oracle(comp)) == bimodule_rank(comp) == 3
            return
    pytest.fail("no 12-dimensional component drawn")


def test_oracle_limit_raises():
    rng = np.random.default_rng(0)
    while True:
        comp, *_ = random_block_bimodule(rng, GF7, max_dim=24)
        if comp.dims > 4:
            break
    with pytest.raises(OracleLimit):
        min_generators_oracle(comp, limit=4)


def test_random_components_match_formula():
    rng = np.random.default_rng(5)
    for _ in range(20):
        comp, n1, n2, m = random_block_bimodule(rng, GF5, max_dim=16)
        assert comp.dims == m * n1 * n2
        assert len(min_generators_oracle(comp)) == bimodule_rank(comp) == -(-m // (n1 * n2))


def test_loop_and_a2_quivers():
    q = natural_quiver(loop_algebra(GF7))
    assert q.arrows == ((1,),)
    q = natural_quiver(a2_algebra(GF5))
    assert q.arrow_total == 1 and q.size == 2
    k = natural_quiver(kronecker_with_relation(GF7))
    assert k.arrow_total == 3 and sorted(k.matrix.sum(axis=1).tolist()) == [0, 1, 2]


def test_semisimple_has_no_arrows():
    q = natural_quiver(direct_product([matrix_algebra(2, GF3), matrix_algebra(1, GF3)]))
    assert q.size == 2 and q.arrow_total == 0
    assert sorted(q.sizes) == [1, 2]


def test_triangular_over_q():
    q = ordinary_quiver(triangular(3, QQ))
    assert q.arrow_total == 2


def test_paper_example_quivers(paper5):
    an = Analysis(paper5.algebra)
    assert an.wedderburn.sizes == paper5.expected_block_sizes
    assert an.radical.dim == 12 and an.chain.dims == (12, 4, 0)
    assert an.bimodule.dim == 8
    nat, ordi = an.natural_quiver, an.ordinary_quiver
    assert nat.arrows == ordi.arrows
    assert isomorphism(nat, paper5.expected_quiver) is not None
    assert is_dense_subquiver(nat, ordi)


def test_natural_differs_from_ordinary_for_thick_component():
    # multiplicity above n_i n_j: fewer generators than simple summands
    rng = np.random.default_rng(1)
    for _ in range(200):
        comp, n1, n2, m = random_block_bimodule(rng, GF5)
        if n1 * n2 > 1 and m > n1 * n2:
            t = bimodule_rank(comp)
            assert t < m
            return
    pytest.fail("no thick component drawn")


@pytest.mark.parametrize("name,A", corpus(), ids=[n for n, _ in corpus()])
def test_bounds_on_corpus(name, A):
    try:
        an = Analysis(A)
        N, O = an.natural_quiver.matrix, an.ordinary_quiver.matrix
    except NonSplit:
        pytest.skip("not split")
    n = np.array(an.wedderburn.sizes)
    assert np.all(N <= O) and np.all(O <= np.outer(n, n) * N)
    assert is_dense_subquiver(an.natural_quiver, an.ordinary_quiver)
    if an.is_basic:
        assert N.tolist() == O.tolist()


def test_radical_bimodule_is_a_bimodule(paper5):
    M = radical_bimodule(paper5.algebra)
    assert M.check() and M.dim == 8


def test_isomorphism_respects_sizes():
    a = Quiver.from_matrix([1, 2], [[0, 1], [0, 0]])
    b = Quiver.from_matrix([2, 1], [[0, 0], [1, 0]])
    c = Quiver.from_matrix([1, 1], [[0, 0], [1, 0]])
    assert isomorphism(a, b) == (1, 0)
    assert isomorphism(a, c) is None
    assert isomorphism(a, c, match_sizes=False) is not None


def test_export_formats():
    q = Quiver.from_matrix([1, 2], [[0, 2], [0, 0]])
    dot = export_quiver(q, "dot")
    assert dot.startswith("digraph Q {") and dot.count("0 -> 1;") == 2
    assert 'label="1:A2(n=2)"' in dot
    doc = json.loads(export_quiver(q, "json"))
    assert Quiver.from_json(doc) == q
    with pytest.raises(ValueError):
        export_quiver(q, "png")


def test_report_keys(paper5):
    rep = Analysis(paper5.algebra).report()
    assert rep["dim"] == 22 and rep["radical_dim"] == 12 and rep["loewy_length"] == 3
    assert rep["rad_mod_rad2_dim"] == 8 and rep["basic"] is False
    assert [b["n"] for b in rep["blocks"]] == [1, 1, 2, 2]
    json.dumps(rep)
