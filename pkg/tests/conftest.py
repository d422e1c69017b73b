from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np
import pytest

from natquiver.constructions import (
    QuiverSpec,
    direct_product,
    group_algebra,
    group_algebra_cyclic,
    matrix_algebra,
    paper_example,
    path_algebra,
    random_profile,
    random_radical_graded,
    triangular,
)
from natquiver.exact_linalg import prime_field, rationals

GF2, GF3, GF5, GF7 = (prime_field(p) for p in (2, 3, 5, 7))
QQ = rationals()


def loop_algebra(field, power: int = 3):
    """k[x]/(x^power) as a path algebra."""
    q = QuiverSpec.build(["1"], [("x", "1", "1")])
    return path_algebra(q, [{"*".join(["x"] * power): 1}], max_len=power + 1, field=field)


def a2_algebra(field):
    return path_algebra(QuiverSpec.build(["1", "2"], [("a", "1", "2")]), field=field)


def kronecker_with_relation(field):
    q = QuiverSpec.build(["1", "2", "3"], [("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3")])
    return path_algebra(q, [{"c*a": 1, "c*b": -1}], field=field)


def symmetric_group3(field):
    perms = list(itertools.permutations(range(3)))
    return group_algebra(perms, lambda a, b: tuple(a[b[i]] for i in range(3)), field, (0, 1, 2))


@lru_cache(maxsize=None)
def fixed_corpus() -> tuple[tuple[str, object], ...]:
    """Hand-picked split algebras over several fields."""
    items = [
        ("k[x]/x^3 GF7", loop_algebra(GF7)),
        ("k[x]/x^2 GF2", loop_algebra(GF2, 2)),
        ("k[x]/x^3 Q", loop_algebra(QQ)),
        ("A2 GF5", a2_algebra(GF5)),
        ("T3 GF3", triangular(3, GF3)),
        ("T2 Q", triangular(2, QQ)),
        ("M2 GF5", matrix_algebra(2, GF5)),
        ("M2xT2 GF7", direct_product([matrix_algebra(2, GF7), triangular(2, GF7)])),
        ("GF2[C4]", group_algebra_cyclic(4, GF2)),
        ("GF7[C3]", group_algebra_cyclic(3, GF7)),
        ("GF3[S3]", symmetric_group3(GF3)),
        ("GF2[S3]", symmetric_group3(GF2)),
        ("kronecker+rel GF7", kronecker_with_relation(GF7)),
        ("paper GF3", paper_example(GF3).algebra),
        ("paper GF5", paper_example(GF5).algebra),
    ]
    return tuple(items)


@lru_cache(maxsize=None)
def graded_corpus(count: int = 12, seed: int = 2024) -> tuple:
    """Random radical-graded algebras over GF(7) (scrambled bases)."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        prof = random_profile(rng, max_dim=30)
        out.append((f"random-graded #{k}", random_radical_graded(seed + k, prof, GF7)))
    return tuple(out)


def corpus() -> list[tuple[str, object]]:
    return list(fixed_corpus()) + [(name, G.presentation) for name, G in graded_corpus()]


@pytest.fixture(scope="session")
def paper5():
    return paper_example(GF5)
