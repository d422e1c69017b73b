from __future__ import annotations

import numpy as np
import pytest

from conftest import GF2, GF3, GF5, GF7, QQ
from natquiver.algebra import radical, validate
from natquiver.constructions import (
    GradedProfile,
    GroupAction,
    QuiverSpec,
    base_field_algebra,
    check_action,
    direct_product,
    group_algebra_cyclic,
    matrix_algebra,
    paper_example,
    path_algebra,
    path_algebra_from_json,
    radical_times_group,
    random_acyclic_quiver,
    random_profile,
    random_radical_graded,
    random_relations,
    skew_group_algebra,
    spec_quiver,
    triangular,
)
from natquiver.errors import AlgebraError, BadCharacteristic, FormatError, InfiniteDimension
from natquiver.graded import is_radical_graded
from natquiver.quiver import isomorphism, natural_quiver


def test_path_algebra_labels_and_dimension():
    q = QuiverSpec.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    A = path_algebra(q, field=GF5)
    assert A.dim == 6 and validate(A).ok
    assert A.labels[:3] == ("e1", "e2", "e3") and "b*a" in A.labels


def test_path_algebra_relations_formats():
    q = QuiverSpec.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    A = path_algebra(q, [{"b*a": 1}], field=GF5)
    B = path_algebra(q, [[[1, "b*a"]]], field=GF5)
    C = path_algebra(q, [{"b*a": "2/3"}], field=GF5)
    assert A.dim == B.dim == C.dim == 5


def test_cyclic_quiver_needs_bound():
    q = QuiverSpec.build(["1"], [("x", "1", "1")])
    with pytest.raises(InfiniteDimension):
        path_algebra(q, field=GF7)
    assert path_algebra(q, max_len=3, field=GF7).dim == 4


def test_quiver_spec_validation():
    with pytest.raises((FormatError, ValueError)):
        QuiverSpec.build(["1"], [("a", "1", "2")])
    with pytest.raises((FormatError, ValueError)):
        QuiverSpec.build(["1", "2"], [("a", "1", "2"), ("a", "2", "1")])
    with pytest.raises((FormatError, ValueError)):
        QuiverSpec.build(["1", "2"], [("e1", "1", "2")])


def test_quiver_spec_json_roundtrip():
    q = QuiverSpec.build(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    doc = q.to_json()
    assert QuiverSpec.from_json(doc) == q
    A = path_algebra_from_json({**doc, "relations": []}, GF3)
    assert A.dim == 4


def test_path_algebra_quiver_is_its_quiver():
    rng = np.random.default_rng(7)
    for _ in range(15):
        q = random_acyclic_quiver(rng)
        A = path_algebra(q, random_relations(rng, q, GF5), field=GF5)
        nat = natural_quiver(A)
        # admissible relations (length >= 2) leave the arrows untouched
        assert isomorphism(nat, spec_quiver(q)) is not None


def test_matrix_and_triangular():
    assert matrix_algebra(3, GF5).dim == 9
    assert triangular(3, GF5).dim == 6
    assert matrix_algebra(10, GF2).labels[0] == "E1,1"
    P = direct_product([triangular(2, GF3), base_field_algebra(GF3)])
    assert P.dim == 4 and validate(P).ok and P.labels[-1].endswith("@2")


def test_group_action_checks():
    L = direct_product([base_field_algebra(GF5), base_field_algebra(GF5)])
    swap = GroupAction(2, GF5.array([[0, 1], [1, 0]]))
    check_action(L, swap)
    LG = skew_group_algebra(L, swap)
    assert LG.dim == 4 and validate(LG).ok
    # (k x k) * C2 with the swap is M_2(k)
    assert radical(LG).dim == 0 and natural_quiver(LG).sizes == (2,)
    with pytest.raises(AlgebraError):
        check_action(L, GroupAction(3, GF5.array([[0, 1], [1, 0]])))
    with pytest.raises(AlgebraError):
        check_action(L, GroupAction(1, GF5.array([[1, 1], [0, 1]])))


def test_bad_characteristic():
    with pytest.raises(BadCharacteristic):
        paper_example(GF2)
    L = base_field_algebra(GF3)
    with pytest.raises(BadCharacteristic):
        skew_group_algebra(L, GroupAction(3, GF3.eye(1)))


def test_action_from_images_and_json(paper5):
    doc = paper5.action.to_json(paper5.base)
    again = GroupAction.from_json(paper5.base, doc)
    assert np.array_equal(again.generator, paper5.action.generator)
    with pytest.raises(FormatError):
        GroupAction.from_json(paper5.base, {"order": 2, "generator": {"e1": "nope"}})


@pytest.mark.parametrize("field", [GF3, GF5, GF7, QQ], ids=["GF3", "GF5", "GF7", "Q"])
def test_paper_example_radical_is_radical_times_group(field):
    ex = paper_example(field)
    assert ex.algebra.dim == 22
    assert radical(ex.algebra) == radical_times_group(ex)


def test_group_algebra_cyclic_semisimple_when_coprime():
    assert radical(group_algebra_cyclic(4, GF5)).dim == 0


def test_random_profile_and_graded_instance():
    rng = np.random.default_rng(3)
    for k in range(10):
        prof = random_profile(rng, max_dim=30)
        assert any(any(row) for row in prof.corner_counts)
        G = random_radical_graded(k, prof, GF7)
        assert is_radical_graded(G) and validate(G.presentation).ok


def test_graded_profile_component_dims():
    prof = GradedProfile((1, 2), ((0, 1), (0, 0)), 2)
    assert prof.component_dims() == [[0, 2], [0, 0]]
