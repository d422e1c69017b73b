from __future__ import annotations

import pytest

from conftest import GF3, GF5, GF7, corpus, graded_corpus, loop_algebra
from natquiver.basic import (
    basic_algebra,
    free_generator_map,
    gpa_basic_algebra,
    verify_quiver_equality,
    verify_two_basics,
)
from natquiver.constructions import GradedProfile, direct_product, matrix_algebra, random_radical_graded, triangular
from natquiver.errors import NonSplit, NotApplicable
from natquiver.graded import TruncatedTensorAlgebra, free_path_tensor_algebra
from natquiver.quiver import Analysis, Quiver, isomorphism


def test_basic_algebra_of_matrix_algebra():
    B = basic_algebra(matrix_algebra(3, GF5))
    assert B.dim == 1 and B.idempotents.check(B.algebra)


def test_basic_algebra_keeps_basic_input():
    A = triangular(3, GF7)
    assert basic_algebra(A).dim == A.dim


def test_basic_algebra_of_paper_example(paper5):
    B = basic_algebra(paper5.algebra)
    assert B.dim == 9
    assert Analysis(B.algebra).is_basic
    q = Analysis(B.algebra).ordinary_quiver
    assert isomorphism(q, Analysis(paper5.algebra).ordinary_quiver, match_sizes=False) is not None


def test_gpa_basic_algebra_is_monomial_and_basic():
    T = TruncatedTensorAlgebra(GF5, (1, 2), ((0, 1), (2, 0)), 2)
    C = gpa_basic_algebra(T)
    assert C.idempotents.check(C.algebra)
    assert Analysis(C.algebra).is_basic


def test_two_basics_on_paper_example(paper5):
    rep = verify_two_basics(paper5.algebra)
    assert rep.verdict and rep.dim_B == rep.generic_dim == 9
    assert rep.image_equals_B and rep.same_ordinary_quiver


def test_two_basics_on_corpus():
    for name, A in corpus():
        try:
            rep = verify_two_basics(A)
        except NonSplit:
            continue
        assert rep.verdict, name


def test_two_basics_on_graded_input():
    for name, G in graded_corpus()[:4]:
        assert verify_two_basics(G).verdict, name


def test_free_generator_map_drops_surplus():
    q = Quiver.from_matrix([1], [[2]])
    free = free_path_tensor_algebra(q, 2, GF3)
    T = TruncatedTensorAlgebra(GF3, (1,), ((1,),), 2)
    assert free_generator_map(free, T) == [0, -1]


def test_quiver_equality_on_basic_algebra():
    rep = verify_quiver_equality(loop_algebra(GF7))
    assert rep.verdict and rep.admissible
    assert rep.composite_kernel_dims[:2] == [0, 0]


def test_quiver_equality_not_applicable_for_paper_example(paper5):
    # the 2-block component of r/r^2 is not free, so the composite kills degree one
    with pytest.raises(NotApplicable):
        verify_quiver_equality(paper5.algebra)


def test_quiver_equality_with_semisimple_factor():
    A = direct_product([matrix_algebra(2, GF5), triangular(2, GF5)])
    assert verify_quiver_equality(A).verdict


def test_quiver_equality_with_free_matrix_component():
    # corner count 2 = n_i n_j over blocks of sizes 1 and 2: one free generator
    prof = GradedProfile((1, 2), ((0, 2), (0, 0)), 1, relations=0)
    G = random_radical_graded(4, prof, GF5)
    rep = verify_quiver_equality(G)
    assert rep.verdict and rep.natural_quiver_A.arrow_total == 1
