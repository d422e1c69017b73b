"""r/r^2 as an A/r-bimodule, block components, ranks, and the two quivers.

Arrows compose like functions: a path i -> j lives in e_j A e_i, so the
arrows i -> j are counted on the component e_j (r/r^2) e_i.  The transpose
in ``_arrow_component`` is the only place this convention appears.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .algebra import AlgebraPresentation, RadicalChain, radical, radical_chain, subspace_product
from .errors import AlgebraError, MalformedBimodule, OracleLimit
from .exact_linalg import FieldSpec, Subspace, rank
from .wedderburn import Block, IdempotentFamily, WedderburnData, lift_idempotents, wedderburn

ORACLE_LIMIT = 24
ORACLE_TRIALS = 200
EXHAUSTIVE_BUDGET = 2**16


# ---------------------------------------------------------------------------
# bimodules over a split semisimple algebra


@dataclass(frozen=True, eq=False)
class Bimodule:
    """A finite-dimensional S-bimodule: left[s], right[s] are k x k matrices.

    ``left[s] @ v`` is b_s · v and ``right[s] @ v`` is v · b_s.
    """

    base: AlgebraPresentation
    blocks: tuple[Block, ...]
    left: np.ndarray
    right: np.ndarray

    @property
    def dim(self) -> int:
        return self.left.shape[1]

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    def left_op(self, x) -> np.ndarray:
        return self.field.reduce(np.tensordot(self.field.array(x), self.left, 1))

    def right_op(self, x) -> np.ndarray:
        return self.field.reduce(np.tensordot(self.field.array(x), self.right, 1))

    def check(self) -> bool:
        """Module axioms on all basis triples, unit acts trivially, actions commute."""
        f, S = self.field, self.base
        k = self.dim
        eye = f.eye(k)
        if k == 0:
            return True
        if not (np.array_equal(self.left_op(S.unit), eye) and np.array_equal(self.right_op(S.unit), eye)):
            return False
        # L(b_s b_t) = L(b_s) L(b_t);  R(b_s b_t) = R(b_t) R(b_s)
        Lprod = f.reduce(np.tensordot(S.table, self.left, 1))
        Rprod = f.reduce(np.tensordot(S.table, self.right, 1))
        L, R = self.left, self.right
        LL = f.reduce(np.matmul(L[:, None], L[None, :]))
        RR = f.reduce(np.matmul(R[None, :], R[:, None]))
        LR = f.reduce(np.matmul(L[:, None], R[None, :]))
        RL = f.reduce(np.matmul(R[None, :], L[:, None]))
        return bool(np.array_equal(Lprod, LL) and np.array_equal(Rprod, RR) and np.array_equal(LR, RL))

    def corner_operator(self, x, y) -> np.ndarray:
        """v -> x v y."""
        return self.field.matmul(self.left_op(x), self.right_op(y))


@dataclass(frozen=True, eq=False)
class RadicalBimodule(Bimodule):
    """r/r^2 with ``representatives`` (rows in A) for its basis cosets."""

    representatives: np.ndarray = None
    square: Subspace = None
    owner: WedderburnData = None

    def coordinates(self, x) -> np.ndarray:
        """Coordinates of (x + r^2) for x in r."""
        res = self.square.reduce(x)
        return self._rep_space.coordinates(res)

    @cached_property
    def _rep_space(self) -> Subspace:
        return Subspace.span(self.field, self.owner.algebra.dim, self.representatives)


def radical_bimodule(A: AlgebraPresentation, W: WedderburnData | None = None) -> RadicalBimodule:
    W = wedderburn(A) if W is None else W
    f, r = A.field, W.radical
    r2 = subspace_product(A, r, r)
    reps = r.quotient_basis(r2)
    k = reps.shape[0]
    S = W.semisimple_algebra
    lifts = W.projection.lift(f.eye(S.dim))  # row s = coset rep of b_s
    rep_space = Subspace.span(f, A.dim, reps) if k else Subspace.zero(f, A.dim)
    left = f.zeros((S.dim, k, k))
    right = f.zeros((S.dim, k, k))
    if k:
        Lp = A.products(lifts, reps)  # (s, c, n)
        Rp = A.products(reps, lifts).transpose(1, 0, 2)
        left = rep_space.coordinates(r2.reduce(Lp)).transpose(0, 2, 1)
        right = rep_space.coordinates(r2.reduce(Rp)).transpose(0, 2, 1)
        # changing a representative by an element of r changes products by r^2
        if r.dim and not (r2.contains(A.products(r.basis, reps)) and r2.contains(A.products(reps, r.basis))):
            raise AlgebraError("action on r/r^2 depends on coset representatives")
    M = RadicalBimodule(S, W.blocks, f.array(left), f.array(right), reps, r2, W)
    if not M.check():
        raise AlgebraError("r/r^2 actions fail the bimodule axioms")
    return M


# ---------------------------------------------------------------------------
# components and ranks


@dataclass(frozen=True, eq=False)
class BlockComponent:
    """e_i · M · e_j (left block i, right block j)."""

    i: int
    j: int
    basis: Subspace
    n_left: int
    n_right: int
    module: Bimodule

    @property
    def dims(self) -> int:
        return self.basis.dim

    def operators(self) -> np.ndarray:
        """Matrices of v -> u v w, u and w running over the two block bases."""
        Bi, Bj = self.module.blocks[self.i], self.module.blocks[self.j]
        ops = [
            self.module.corner_operator(u, w)
            for u in Bi.block_basis.basis
            for w in Bj.block_basis.basis
        ]
        return np.stack(ops)


def block_component(M: Bimodule, i: int, j: int) -> BlockComponent:
    P = M.corner_operator(M.blocks[i].central_idempotent, M.blocks[j].central_idempotent)
    space = Subspace.span(M.field, M.dim, P.T) if M.dim else Subspace.zero(M.field, 0)
    return BlockComponent(i, j, space, M.blocks[i].n, M.blocks[j].n, M)


def all_components(M: Bimodule) -> dict[tuple[int, int], BlockComponent]:
    s = len(M.blocks)
    comps = {(i, j): block_component(M, i, j) for i in range(s) for j in range(s)}
    total = sum(c.dims for c in comps.values())
    span = Subspace.zero(M.field, M.dim)
    for c in comps.values():
        span = span + c.basis
    if total != M.dim or span.dim != M.dim:
        raise AlgebraError("block components do not form a direct sum decomposition")
    return comps


def simple_multiplicity(dim: int, n_i: int, n_j: int) -> int:
    if dim % (n_i * n_j):
        raise MalformedBimodule(f"component of dimension {dim} over blocks of sizes {n_i}, {n_j}")
    return dim // (n_i * n_j)


def bimodule_rank(c: BlockComponent | int, n_i: int | None = None, n_j: int | None = None) -> int:
    """Least number of bimodule generators: ceil(m / (n_i n_j)), m the multiplicity."""
    if isinstance(c, BlockComponent):
        dim = c.dims
        n_i = c.n_left if n_i is None else n_i
        n_j = c.n_right if n_j is None else n_j
    else:
        dim = c
    m = simple_multiplicity(dim, n_i, n_j)
    return -(-m // (n_i * n_j))


def _generated(ops: np.ndarray, gens: np.ndarray, field: FieldSpec, ambient: int) -> Subspace:
    if gens.shape[0] == 0:
        return Subspace.zero(field, ambient)
    images = field.reduce(np.tensordot(gens, ops, axes=([1], [2])))  # (g, op, ambient)
    return Subspace.span(field, ambient, images.reshape(-1, ambient))


def min_generators_oracle(
    c: BlockComponent, limit: int = ORACLE_LIMIT, seed: int = 0, trials: int = ORACLE_TRIALS
) -> np.ndarray:
    """A generating set of least size, found by search (no closed formula used).

    The lower bound dim(c) / dim(span of the operators v -> u v w) is exact
    arithmetic on the actual action; a random or exhaustive search then
    either meets it or proves that fewer generators fail.
    """
    field = c.module.field
    d = c.dims
    if d > limit:
        raise OracleLimit(f"component of dimension {d} exceeds the oracle limit {limit}")
    if d == 0:
        return field.zeros((0, c.module.dim))
    ops = c.operators()
    k = c.module.dim
    op_span = rank(ops.reshape(ops.shape[0], -1), field)
    g = -(-d // op_span)
    rng = np.random.default_rng(seed)
    basis = c.basis.basis
    while g <= d:
        gens = _random_generators(ops, basis, g, field, rng, trials, k, d)
        if gens is None:
            gens = _exhaustive_generators(ops, basis, g, field, k, d)
        if gens is not None:
            return gens
        if not _exhaustive_feasible(field, d, g):
            raise OracleLimit("search could not certify a lower bound")
        g += 1
    return basis  # unreachable: a basis always generates


def _random_generators(ops, basis, g, field, rng, trials, k, d) -> np.ndarray | None:
    for _ in range(trials):
        coeffs = field.random(rng, (g, basis.shape[0]))
        gens = field.reduce(coeffs @ basis)
        if _generated(ops, gens, field, k).dim == d:
            return gens
    return None


def _exhaustive_feasible(field: FieldSpec, d: int, g: int) -> bool:
    return field.is_prime_field and field.p ** (d * g) <= EXHAUSTIVE_BUDGET


def _exhaustive_generators(ops, basis, g, field, k, d) -> np.ndarray | None:
    if not _exhaustive_feasible(field, d, g):
        return None
    coords = np.array(list(itertools.product(range(field.p), repeat=d)), dtype=np.int64)[1:]
    vecs = field.reduce(field.array(coords) @ basis)
    for combo in itertools.combinations(range(len(vecs)), g):
        gens = vecs[list(combo)]
        if _generated(ops, gens, field, k).dim == d:
            return gens
    return None


# ---------------------------------------------------------------------------
# quivers


@dataclass(frozen=True)
class Vertex:
    id: int
    label: str
    n: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[Vertex, ...]
    arrows: tuple[tuple[int, ...], ...]  # arrows[i][j] = number of arrows i -> j

    def __post_init__(self) -> None:
        s = len(self.vertices)
        if len(self.arrows) != s or any(len(row) != s for row in self.arrows):
            raise ValueError("arrow matrix does not match the vertex count")
        if any(c < 0 for row in self.arrows for c in row):
            raise ValueError("negative arrow count")

    @classmethod
    def from_matrix(cls, sizes: Sequence[int], matrix, labels: Sequence[str] | None = None) -> "Quiver":
        labels = labels or [f"A{i + 1}" for i in range(len(sizes))]
        verts = tuple(Vertex(i, labels[i], int(n)) for i, n in enumerate(sizes))
        return cls(verts, tuple(tuple(int(x) for x in row) for row in matrix))

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.arrows, dtype=np.int64).reshape(self.size, self.size)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(v.n for v in self.vertices)

    @property
    def arrow_total(self) -> int:
        return int(self.matrix.sum())

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v.id, "label": v.label, "n": v.n} for v in self.vertices],
            "arrows": [
                {"from": i, "to": j, "count": c}
                for i, row in enumerate(self.arrows)
                for j, c in enumerate(row)
                if c
            ],
        }

    @classmethod
    def from_json(cls, doc) -> "Quiver":
        verts = sorted(doc["vertices"], key=lambda v: v["id"])
        s = len(verts)
        mat = [[0] * s for _ in range(s)]
        for a in doc["arrows"]:
            mat[a["from"]][a["to"]] += int(a["count"])
        return cls(tuple(Vertex(v["id"], v["label"], v["n"]) for v in verts), tuple(map(tuple, mat)))


def is_dense_subquiver(sub: Quiver, sup: Quiver) -> bool:
    if sub.size != sup.size or [v.id for v in sub.vertices] != [v.id for v in sup.vertices]:
        return False
    a, b = sub.matrix, sup.matrix
    return bool(np.all((a > 0) == (b > 0)) and np.all(a <= b))


def isomorphism(q1: Quiver, q2: Quiver, match_sizes: bool = True) -> tuple[int, ...] | None:
    """A vertex bijection perm with q1[i][j] == q2[perm i][perm j], or None."""
    if q1.size != q2.size:
        return None
    A, B = q1.matrix, q2.matrix

    def sig(M, sizes, v):
        return (sizes[v] if match_sizes else 0, tuple(sorted(M[v])), tuple(sorted(M[:, v])), M[v, v])

    s1 = [sig(A, q1.sizes, v) for v in range(q1.size)]
    s2 = [sig(B, q2.sizes, v) for v in range(q2.size)]
    if sorted(s1) != sorted(s2):
        return None
    options = [[w for w in range(q2.size) if s2[w] == s1[v]] for v in range(q1.size)]

    def extend(partial: list[int]) -> tuple[int, ...] | None:
        v = len(partial)
        if v == q1.size:
            return tuple(partial)
        for w in options[v]:
            if w in partial:
                continue
            if all(A[v, u] == B[w, partial[u]] and A[u, v] == B[partial[u], w] for u in range(v)):
                found = extend(partial + [w])
                if found is not None:
                    return found
        return None

    return extend([])


def export_quiver(q: Quiver, fmt: str = "dot") -> str:
    if fmt == "json":
        return json.dumps(q.to_json(), indent=2) + "\n"
    if fmt != "dot":
        raise ValueError(f"unknown quiver format {fmt!r}")
    lines = ["digraph Q {"]
    for v in q.vertices:
        lines.append(f'  {v.id} [label="{v.id}:{v.label}(n={v.n})"];')
    for i, row in enumerate(q.arrows):
        for j, c in enumerate(row):
            lines.extend(f"  {q.vertices[i].id} -> {q.vertices[j].id};" for _ in range(c))
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# quivers of a bimodule


def _arrow_component(comps, i: int, j: int) -> BlockComponent:
    # arrows i -> j sit in e_j M e_i
    return comps[(j, i)]


def bimodule_natural_quiver(M: Bimodule, comps=None) -> Quiver:
    comps = all_components(M) if comps is None else comps
    s = len(M.blocks)
    mat = [[bimodule_rank(_arrow_component(comps, i, j)) for j in range(s)] for i in range(s)]
    return Quiver.from_matrix([b.n for b in M.blocks], mat)


def bimodule_ordinary_quiver(M: Bimodule, comps=None, primitives: Sequence[np.ndarray] | None = None) -> Quiver:
    """m_ij = dim(eps_j M eps_i), cross-checked against dim(component)/(n_i n_j)."""
    comps = all_components(M) if comps is None else comps
    s = len(M.blocks)
    eps = [b.primitive_idempotent for b in M.blocks] if primitives is None else primitives
    mat = [[0] * s for _ in range(s)]
    for i in range(s):
        for j in range(s):
            corner = rank(M.corner_operator(eps[j], eps[i]), M.field) if M.dim else 0
            c = _arrow_component(comps, i, j)
            if corner != simple_multiplicity(c.dims, c.n_left, c.n_right):
                raise AlgebraError(f"corner dimension {corner} disagrees with the component count for {i}->{j}")
            mat[i][j] = corner
    return Quiver.from_matrix([b.n for b in M.blocks], mat)


# ---------------------------------------------------------------------------
# cached analysis of one algebra


class Analysis:
    """Lazily computed invariants of one algebra, shared by every consumer."""

    def __init__(self, A: AlgebraPresentation, seed: int = 0):
        self.algebra = A
        self.seed = seed

    @cached_property
    def radical(self) -> Subspace:
        return radical(self.algebra)

    @cached_property
    def chain(self) -> RadicalChain:
        return radical_chain(self.algebra, self.radical)

    @property
    def loewy_length(self) -> int:
        return self.chain.loewy_length

    @cached_property
    def wedderburn(self) -> WedderburnData:
        return wedderburn(self.algebra, self.seed, self.radical)

    @cached_property
    def bimodule(self) -> RadicalBimodule:
        return radical_bimodule(self.algebra, self.wedderburn)

    @cached_property
    def components(self) -> dict[tuple[int, int], BlockComponent]:
        return all_components(self.bimodule)

    @cached_property
    def natural_quiver(self) -> Quiver:
        return bimodule_natural_quiver(self.bimodule, self.components)

    @cached_property
    def ordinary_quiver(self) -> Quiver:
        return bimodule_ordinary_quiver(self.bimodule, self.components)

    @cached_property
    def lifted_primitives(self) -> IdempotentFamily:
        """One primitive idempotent of A per block, lifted from E_11 in A/r."""
        W = self.wedderburn
        fam = W.primitive_family()
        return lift_idempotents(self.algebra, fam, W.projection, self.radical)

    @property
    def is_basic(self) -> bool:
        return all(n == 1 for n in self.wedderburn.sizes)

    def report(self) -> dict:
        W = self.wedderburn
        nat, ordi = self.natural_quiver, self.ordinary_quiver
        return {
            "dim": self.algebra.dim,
            "field": self.algebra.field.descriptor(),
            "radical_dim": self.radical.dim,
            "radical_chain_dims": list(self.chain.dims),
            "loewy_length": self.loewy_length,
            "blocks": [{"n": b.n, "dim": b.dim} for b in W.blocks],
            "rad_mod_rad2_dim": self.bimodule.dim,
            "natural_quiver": nat.to_json(),
            "ordinary_quiver": ordi.to_json(),
            "dense_subquiver": is_dense_subquiver(nat, ordi),
            "basic": self.is_basic,
        }


def natural_quiver(A: AlgebraPresentation, seed: int = 0) -> Quiver:
    return Analysis(A, seed).natural_quiver


def ordinary_quiver(A: AlgebraPresentation, seed: int = 0) -> Quiver:
    return Analysis(A, seed).ordinary_quiver


__all__ = [
    "Analysis",
    "Bimodule",
    "BlockComponent",
    "Quiver",
    "RadicalBimodule",
    "Vertex",
    "all_components",
    "bimodule_natural_quiver",
    "bimodule_ordinary_quiver",
    "bimodule_rank",
    "block_component",
    "export_quiver",
    "is_dense_subquiver",
    "isomorphism",
    "min_generators_oracle",
    "natural_quiver",
    "ordinary_quiver",
    "radical_bimodule",
    "simple_multiplicity",
]
