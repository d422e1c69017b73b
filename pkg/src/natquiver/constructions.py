"""Instance factory: path algebras, matrix algebras, skew group algebras.

Paths compose like functions: for arrows a: u -> v and b: v -> w the
product ``b*a`` is the path "a then b", and a path from i to j lives in
the corner e_j A e_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import (
    AlgebraPresentation,
    Subspace,
    algebra_to_json,
    change_basis,
    ideal_generated,
    quotient,
    radical,
    validate,
)
from .errors import AlgebraError, BadCharacteristic, FormatError, InfiniteDimension
from .exact_linalg import FieldSpec, inverse, is_zero, rank
from .graded import GradedAlgebra, TruncatedTensorAlgebra
from .quiver import Bimodule, Quiver, Vertex, all_components
from .wedderburn import decompose_semisimple


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class QuiverSpec:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self) -> None:
        names = set(self.vertices)
        if len(names) != len(self.vertices):
            raise FormatError("duplicate vertex label")
        seen = set()
        for a in self.arrows:
            if a.source not in names or a.target not in names:
                raise FormatError(f"arrow {a.name} has an endpoint outside the vertex set")
            if a.name in seen or a.name in {f"e{v}" for v in self.vertices}:
                raise FormatError(f"arrow name {a.name!r} is not unique")
            seen.add(a.name)

    @classmethod
    def build(cls, vertices: Iterable, arrows: Iterable[tuple[str, object, object]]) -> "QuiverSpec":
        return cls(tuple(str(v) for v in vertices), tuple(Arrow(str(n), str(s), str(t)) for n, s, t in arrows))

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        ready.append(a.target)
        return seen == len(self.vertices)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in self.arrows],
        }

    @classmethod
    def from_json(cls, doc) -> "QuiverSpec":
        try:
            return cls.build(doc["vertices"], [(a["name"], a["from"], a["to"]) for a in doc["arrows"]])
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad quiver spec: {exc}") from exc


# ---------------------------------------------------------------------------
# path algebras


@dataclass(frozen=True)
class _Path:
    source: str
    target: str
    arrows: tuple[int, ...]  # traversal order


def _enumerate_paths(q: QuiverSpec, max_len: int) -> list[_Path]:
    order = {v: k for k, v in enumerate(q.vertices)}
    layer = [_Path(v, v, ()) for v in q.vertices]
    paths = list(layer)
    for _ in range(max_len):
        nxt = []
        for p in layer:
            for k, a in enumerate(q.arrows):
                if a.source == p.target:
                    nxt.append(_Path(p.source, a.target, p.arrows + (k,)))
        if not nxt:
            break
        paths.extend(nxt)
        layer = nxt
    paths.sort(key=lambda p: (len(p.arrows), order[p.source] if not p.arrows else 0, p.arrows))
    return paths


def _path_label(q: QuiverSpec, p: _Path) -> str:
    if not p.arrows:
        return f"e{p.source}"
    return "*".join(q.arrows[k].name for k in reversed(p.arrows))


def _parse_path(q: QuiverSpec, text: str) -> _Path:
    text = text.strip()
    for v in q.vertices:
        if text == f"e{v}":
            return _Path(v, v, ())
    names = {a.name: k for k, a in enumerate(q.arrows)}
    parts = [s.strip() for s in text.split("*")]
    try:
        idx = [names[s] for s in reversed(parts)]
    except KeyError as exc:
        raise FormatError(f"unknown arrow {exc.args[0]!r} in path {text!r}") from None
    for a, b in zip(idx, idx[1:]):
        if q.arrows[a].target != q.arrows[b].source:
            raise FormatError(f"path {text!r} is not composable")
    return _Path(q.arrows[idx[0]].source, q.arrows[idx[-1]].target, tuple(idx))


def _relation_vector(q, rel, index, field) -> tuple[np.ndarray, tuple[str, str]]:
    terms = rel.items() if isinstance(rel, dict) else [(t[1], t[0]) for t in rel]
    vec = field.zeros(len(index))
    ends = None
    for text, coeff in terms:
        p = _parse_path(q, text)
        if ends is None:
            ends = (p.source, p.target)
        elif ends != (p.source, p.target):
            raise FormatError("relation mixes paths with different endpoints")
        if p in index:
            c = field.from_json(coeff) if isinstance(coeff, (int, str)) else field.scalar(coeff)
            vec[index[p]] = field.reduce(vec[index[p]] + c)
    return vec, ends


def path_algebra(
    q: QuiverSpec,
    relations: Sequence = (),
    max_len: int | None = None,
    field: FieldSpec | None = None,
) -> AlgebraPresentation:
    """kQ modulo the ideal generated by ``relations`` and by paths longer than ``max_len``.

    A relation is either a dict ``{path: coeff}`` or a list of
    ``[coeff, path]`` pairs; paths are written ``"b*a"`` (a first).
    """
    if field is None:
        raise ValueError("a base field is required")
    if max_len is None:
        if not q.is_acyclic():
            raise InfiniteDimension("cyclic quiver needs an explicit max_len")
        max_len = len(q.vertices)
    paths = _enumerate_paths(q, max_len)
    index = {p: k for k, p in enumerate(paths)}
    n = len(paths)
    table = field.zeros((n, n, n))
    for i, p in enumerate(paths):
        for j, r in enumerate(paths):
            if r.target != p.source:
                continue
            prod = _Path(r.source, p.target, r.arrows + p.arrows)
            k = index.get(prod)
            if k is not None:
                table[i, j, k] = 1
    unit = field.zeros(n)
    for v in q.vertices:
        unit[index[_Path(v, v, ())]] = 1
    free = AlgebraPresentation(field, tuple(_path_label(q, p) for p in paths), table, unit)
    if not relations:
        return free
    vecs = [_relation_vector(q, rel, index, field)[0] for rel in relations]
    I = ideal_generated(free, np.stack(vecs))
    A, _ = quotient(free, I)
    return A


def path_algebra_from_json(doc, field: FieldSpec) -> AlgebraPresentation:
    q = QuiverSpec.from_json(doc)
    return path_algebra(q, doc.get("relations", []), doc.get("max_len"), field)


# ---------------------------------------------------------------------------
# matrix-type algebras


def _unit_label(a: int, b: int, n: int) -> str:
    return f"E{a + 1}{b + 1}" if n < 10 else f"E{a + 1},{b + 1}"


def matrix_algebra(n: int, field: FieldSpec) -> AlgebraPresentation:
    return _matrix_units_algebra(n, field, [(a, b) for a in range(n) for b in range(n)])


def triangular(n: int, field: FieldSpec) -> AlgebraPresentation:
    return _matrix_units_algebra(n, field, [(a, b) for a in range(n) for b in range(n) if a <= b])


def _matrix_units_algebra(n: int, field: FieldSpec, units: list[tuple[int, int]]) -> AlgebraPresentation:
    if n < 1:
        raise ValueError("matrix size must be positive")
    index = {u: k for k, u in enumerate(units)}
    d = len(units)
    table = field.zeros((d, d, d))
    for i, (a, b) in enumerate(units):
        for j, (c, e) in enumerate(units):
            if b == c:
                table[i, j, index[(a, e)]] = 1
    unit = field.zeros(d)
    for a in range(n):
        unit[index[(a, a)]] = 1
    return AlgebraPresentation(field, tuple(_unit_label(a, b, n) for a, b in units), table, unit)


def direct_product(algebras: Sequence[AlgebraPresentation]) -> AlgebraPresentation:
    if not algebras:
        raise ValueError("empty product")
    field = algebras[0].field
    if any(A.field != field for A in algebras):
        raise ValueError("factors live over different fields")
    d = sum(A.dim for A in algebras)
    table = field.zeros((d, d, d))
    unit = field.zeros(d)
    labels = []
    off = 0
    for k, A in enumerate(algebras):
        sl = slice(off, off + A.dim)
        table[sl, sl, sl] = A.table
        unit[sl] = A.unit
        labels.extend(f"{s}@{k + 1}" for s in A.labels)
        off += A.dim
    return AlgebraPresentation(field, tuple(labels), table, unit)


def base_field_algebra(field: FieldSpec) -> AlgebraPresentation:
    return matrix_algebra(1, field)


# ---------------------------------------------------------------------------
# skew group algebras


@dataclass(frozen=True, eq=False)
class GroupAction:
    """Cyclic group of order ``order`` acting through ``generator``.

    ``generator`` is the matrix of sigma on the algebra's coordinates:
    column j holds sigma(b_j).
    """

    order: int
    generator: np.ndarray

    def power(self, t: int, field: FieldSpec) -> np.ndarray:
        out = field.eye(self.generator.shape[0])
        for _ in range(t % self.order):
            out = field.matmul(self.generator, out)
        return out

    @classmethod
    def from_images(cls, L: AlgebraPresentation, order: int, images: dict) -> "GroupAction":
        """Build from ``{label: {label: coeff}}`` (or ``{label: label}``)."""
        f = L.field
        pos = {s: k for k, s in enumerate(L.labels)}
        S = f.zeros((L.dim, L.dim))
        for src, img in images.items():
            if src not in pos:
                raise FormatError(f"unknown basis label {src!r} in action")
            if isinstance(img, str):
                img = {img: 1}
            for tgt, c in img.items():
                if tgt not in pos:
                    raise FormatError(f"unknown basis label {tgt!r} in action")
                S[pos[tgt], pos[src]] = f.from_json(c)
        missing = [s for s in L.labels if s not in images]
        if missing:
            raise FormatError(f"action does not specify images of {missing}")
        return cls(order, S)

    def to_json(self, L: AlgebraPresentation) -> dict:
        f = L.field
        images = {}
        for j, s in enumerate(L.labels):
            images[s] = {L.labels[i]: f.to_json(self.generator[i, j]) for i in range(L.dim) if self.generator[i, j] != 0}
        return {"order": self.order, "generator": images}

    @classmethod
    def from_json(cls, L: AlgebraPresentation, doc) -> "GroupAction":
        try:
            return cls.from_images(L, int(doc["order"]), doc["generator"])
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad group action: {exc}") from exc


def check_action(L: AlgebraPresentation, action: GroupAction) -> None:
    """Raise unless sigma is a unital algebra automorphism with sigma^order = 1."""
    f = L.field
    S = action.generator
    if S.shape != (L.dim, L.dim):
        raise AlgebraError("action matrix has the wrong size")
    try:
        inverse(S, f)
    except ZeroDivisionError:
        raise AlgebraError("action is not invertible") from None
    if not is_zero(f.reduce(S @ L.unit - L.unit)):
        raise AlgebraError("action does not fix the unit")
    lhs = f.reduce(np.tensordot(L.table, S.T, 1))  # sigma(b_i b_j)
    images = S.T
    rhs = L.products(images, images)
    if not is_zero(f.reduce(lhs - rhs)):
        raise AlgebraError("action is not multiplicative")
    full = f.eye(L.dim)
    for _ in range(action.order):
        full = f.matmul(S, full)
    if not is_zero(f.reduce(full - f.eye(L.dim))):
        raise AlgebraError("generator does not have the stated order")


def skew_group_algebra(L: AlgebraPresentation, action: GroupAction) -> AlgebraPresentation:
    """L G with (a g^s)(b g^t) = a sigma^s(b) g^(s+t); basis index t*dim(L) + i."""
    f = L.field
    g = action.order
    if f.p is not None and g % f.p == 0:
        raise BadCharacteristic(f"characteristic {f.p} divides the group order {g}")
    check_action(L, action)
    n = L.dim
    d = n * g
    powers = [action.power(s, f) for s in range(g)]
    table = f.zeros((d, d, d))
    for s in range(g):
        twisted = f.reduce(np.tensordot(L.table, powers[s], axes=([1], [1])))  # (i, k, j): b_i sigma^s(b_j)
        twisted = twisted.transpose(0, 2, 1)
        for t in range(g):
            u = (s + t) % g
            table[s * n : (s + 1) * n, t * n : (t + 1) * n, u * n : (u + 1) * n] = twisted
    unit = f.zeros(d)
    unit[:n] = L.unit
    labels = tuple(s if t == 0 else f"{s}*g{t}" for t in range(g) for s in L.labels)
    return AlgebraPresentation(f, labels, table, unit)


def group_algebra_cyclic(order: int, field: FieldSpec) -> AlgebraPresentation:
    """k[C_n] (no characteristic restriction)."""
    table = field.zeros((order, order, order))
    for s in range(order):
        for t in range(order):
            table[s, t, (s + t) % order] = 1
    unit = field.zeros(order)
    unit[0] = 1
    return AlgebraPresentation(field, tuple(f"g{s}" for s in range(order)), table, unit)


def group_algebra(elements: Sequence, mul, field: FieldSpec, identity) -> AlgebraPresentation:
    """k[G] for a finite group given by its elements and a multiplication."""
    index = {g: k for k, g in enumerate(elements)}
    n = len(elements)
    table = field.zeros((n, n, n))
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j, index[mul(a, b)]] = 1
    unit = field.zeros(n)
    unit[index[identity]] = 1
    return AlgebraPresentation(field, tuple(str(g) for g in elements), table, unit)


# ---------------------------------------------------------------------------
# the skew group algebra example


PAPER_QUIVER = QuiverSpec.build(
    ["1", "2", "3", "2'", "3'"],
    [("alpha", "1", "2"), ("beta", "2", "3"), ("alpha'", "1", "2'"), ("beta'", "2'", "3'")],
)

_PAPER_SIGMA = {
    "e1": "e1",
    "e2": "e2'",
    "e3": "e3'",
    "e2'": "e2",
    "e3'": "e3",
    "alpha": "alpha'",
    "beta": "beta'",
    "alpha'": "alpha",
    "beta'": "beta",
    "beta*alpha": "beta'*alpha'",
    "beta'*alpha'": "beta*alpha",
}


@dataclass(frozen=True, eq=False)
class PaperExample:
    base: AlgebraPresentation
    action: GroupAction
    algebra: AlgebraPresentation
    expected_quiver: object
    expected_block_sizes: tuple[int, ...]


def paper_example(field: FieldSpec) -> PaperExample:
    """Path algebra of the five-vertex quiver skewed by the order-2 symmetry.

    Expected answer: blocks of sizes (1, 1, 2, 2) and the quiver
    (2) -> (1), (3) -> (1), (1) -> (4), in which vertex (1) must be a
    2x2 block for the weighted dimension count of r/r^2 to come out at 8.
    """
    if field.char == 2:
        raise BadCharacteristic("the example needs characteristic different from 2")
    L = path_algebra(PAPER_QUIVER, field=field)
    action = GroupAction.from_images(L, 2, _PAPER_SIGMA)
    LG = skew_group_algebra(L, action)
    expected = Quiver(
        (Vertex(0, "(1)", 2), Vertex(1, "(2)", 1), Vertex(2, "(3)", 1), Vertex(3, "(4)", 2)),
        ((0, 0, 0, 1), (1, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0)),
    )
    return PaperExample(L, action, LG, expected, (1, 1, 2, 2))


def radical_times_group(example: PaperExample) -> Subspace:
    """Span of rad(L) (x) g^t inside L G, for comparison with rad(L G)."""
    L, LG = example.base, example.algebra
    r = radical(L)
    n = L.dim
    rows = []
    for t in range(example.action.order):
        for v in r.basis:
            w = LG.field.zeros(LG.dim)
            w[t * n : (t + 1) * n] = v
            rows.append(w)
    return Subspace.span(LG.field, LG.dim, np.stack(rows)) if rows else Subspace.zero(LG.field, LG.dim)


def check_constructed(A: AlgebraPresentation) -> AlgebraPresentation:
    rep = validate(A)
    if not rep.ok:
        raise AlgebraError(f"constructed algebra is invalid: {rep.describe()}")
    return A


# ---------------------------------------------------------------------------
# random instances


def spec_quiver(q: QuiverSpec):
    """The quiver of a QuiverSpec as a Quiver with all block sizes 1."""
    pos = {v: k for k, v in enumerate(q.vertices)}
    mat = [[0] * len(q.vertices) for _ in q.vertices]
    for a in q.arrows:
        mat[pos[a.source]][pos[a.target]] += 1
    return Quiver.from_matrix([1] * len(q.vertices), mat, list(q.vertices))


def random_acyclic_quiver(rng: np.random.Generator, max_vertices: int = 6, max_arrows: int = 8) -> QuiverSpec:
    v = int(rng.integers(1, max_vertices + 1))
    order = rng.permutation(v)
    n_arrows = int(rng.integers(0, max_arrows + 1)) if v > 1 else 0
    arrows = []
    for k in range(n_arrows):
        s, t = sorted(rng.choice(v, size=2, replace=False))
        arrows.append((f"a{k}", str(order[s] + 1), str(order[t] + 1)))
    return QuiverSpec.build([str(i + 1) for i in range(v)], arrows)


def random_relations(
    rng: np.random.Generator, q: QuiverSpec, field: FieldSpec, count: int = 2, max_len: int | None = None
) -> list[dict[str, int]]:
    """Random uniform combinations of paths of length >= 2 (admissible for acyclic q)."""
    max_len = len(q.vertices) if max_len is None else max_len
    long_paths = [p for p in _enumerate_paths(q, max_len) if len(p.arrows) >= 2]
    groups: dict[tuple[str, str], list[_Path]] = {}
    for p in long_paths:
        groups.setdefault((p.source, p.target), []).append(p)
    keys = sorted(groups)
    rels = []
    for _ in range(count if keys else 0):
        paths = groups[keys[int(rng.integers(len(keys)))]]
        k = int(rng.integers(1, min(3, len(paths)) + 1))
        chosen = rng.choice(len(paths), size=k, replace=False)
        coeffs = field.random(rng, k)
        rel = {_path_label(q, paths[c]): int(x) if field.p is not None else str(x) for c, x in zip(chosen, coeffs) if x != 0}
        if rel:
            rels.append(rel)
    return rels


@dataclass(frozen=True)
class GradedProfile:
    """Block sizes, corner dimensions c_ij = dim E^i_11 M E^j_11, top degree L.

    ``relations`` random homogeneous generators are drawn in every degree
    2..L for the graded ideal K.
    """

    sizes: tuple[int, ...]
    corner_counts: tuple[tuple[int, ...], ...]
    L: int
    relations: int = 1
    scramble: bool = True

    def component_dims(self) -> list[list[int]]:
        n = self.sizes
        return [[c * n[i] * n[j] for j, c in enumerate(row)] for i, row in enumerate(self.corner_counts)]


def random_profile(
    rng: np.random.Generator,
    block_sizes: Sequence[int] = (1, 2, 3),
    max_blocks: int = 3,
    max_L: int = 3,
    max_dim: int = 40,
    tries: int = 200,
) -> GradedProfile:
    for _ in range(tries):
        s = int(rng.integers(1, max_blocks + 1))
        sizes = tuple(int(x) for x in rng.choice(block_sizes, size=s))
        counts = tuple(
            tuple(int(rng.integers(1, 4)) if rng.random() < 0.5 else 0 for _ in range(s)) for _ in range(s)
        )
        if not any(any(row) for row in counts):
            continue
        L = int(rng.integers(1, max_L + 1))
        T = TruncatedTensorAlgebra(FieldSpec(2), sizes, counts, L)  # only the dimension is used
        if T.dim <= max_dim:
            return GradedProfile(sizes, counts, L, int(rng.integers(0, 3)))
    return GradedProfile((1,), ((1,),), 2, 0)


def random_radical_graded(seed: int, profile: GradedProfile, field: FieldSpec):
    """T(A0, M)/K with K a random graded ideal in degrees >= 2.

    A0 = prod M_{n_i}(k) and M has the profile's corner dimensions.  With
    ``scramble`` the basis is changed by a random invertible map inside each
    degree, so nothing downstream can rely on matrix-unit coordinates.
    Returns a GradedAlgebra.
    """
    rng = np.random.default_rng(seed)
    T = TruncatedTensorAlgebra(field, profile.sizes, profile.corner_counts, profile.L)
    P = T.to_presentation()
    gens = []
    for d in range(2, profile.L + 1):
        idx = T.degree_indices(d)
        for _ in range(profile.relations if idx else 0):
            v = field.zeros(T.dim)
            v[idx] = field.random(rng, len(idx))
            gens.append(v)
    if gens:
        K = ideal_generated(P, np.stack(gens))
        Q, _ = quotient(P, K)
        degrees = [T.degrees[c] for c in K.complement_indices()]
    else:
        Q, degrees = P, list(T.degrees)
    if profile.scramble and Q.dim:
        B = field.zeros((Q.dim, Q.dim))
        for d in set(degrees):
            idx = [k for k, e in enumerate(degrees) if e == d]
            B[np.ix_(idx, idx)] = _random_invertible(rng, len(idx), field)
        Q = change_basis(Q, B, [f"w{k}" for k in range(Q.dim)])
    return GradedAlgebra(Q, tuple(degrees))


def _random_invertible(rng: np.random.Generator, n: int, field: FieldSpec) -> np.ndarray:
    while True:
        m = field.random(rng, (n, n))
        if rank(m, field) == n:
            return m


def random_block_bimodule(rng: np.random.Generator, field: FieldSpec, max_dim: int = 24):
    """A random component n_i x n_j-matrices^m with a scrambled basis.

    Returns (component, n_left, n_right, multiplicity).
    """
    while True:
        n1, n2 = (int(x) for x in rng.choice((1, 2, 3), size=2))
        same = n1 == n2 and rng.random() < 0.3
        m_max = max_dim // (n1 * n2)
        if m_max >= 1:
            break
    m = int(rng.integers(1, m_max + 1))
    S = matrix_algebra(n1, field) if same else direct_product([matrix_algebra(n1, field), matrix_algebra(n2, field)])
    off2 = 0 if same else n1 * n1
    k = m * n1 * n2
    left = field.zeros((S.dim, k, k))
    right = field.zeros((S.dim, k, k))

    def pos(c, a, b):
        return (c * n1 + a) * n2 + b

    for c in range(m):
        for a in range(n1):
            for b in range(n2):
                for x in range(n1):
                    # E_{x a} . e_{ab} = e_{xb}
                    left[x * n1 + a, pos(c, x, b), pos(c, a, b)] = 1
                for y in range(n2):
                    # e_{ab} . E_{b y} = e_{ay}
                    right[off2 + b * n2 + y, pos(c, a, y), pos(c, a, b)] = 1
    P = _random_invertible(rng, k, field)
    Pinv = inverse(P, field)
    left = field.reduce(np.matmul(np.matmul(P, left), Pinv))
    right = field.reduce(np.matmul(np.matmul(P, right), Pinv))
    blocks = tuple(decompose_semisimple(S))
    M = Bimodule(S, blocks, left, right)
    comps = [c for c in all_components(M).values() if c.dims]
    (comp,) = comps
    return comp, n1, n2, m


__all__ = [
    "Arrow",
    "QuiverSpec",
    "GroupAction",
    "PaperExample",
    "path_algebra",
    "path_algebra_from_json",
    "matrix_algebra",
    "triangular",
    "direct_product",
    "base_field_algebra",
    "skew_group_algebra",
    "group_algebra",
    "group_algebra_cyclic",
    "paper_example",
    "radical_times_group",
    "check_action",
    "algebra_to_json",
    "GradedProfile",
    "random_acyclic_quiver",
    "random_relations",
    "random_profile",
    "random_radical_graded",
    "random_block_bimodule",
    "spec_quiver",
]
