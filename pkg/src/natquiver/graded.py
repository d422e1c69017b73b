"""Associated graded algebras, tensor algebras over A/r, and the Gabriel cover.

Tensor powers of a bimodule M over a split semisimple A0 = prod M_{n_i}(k)
are realised by monomials

    E^{i}_{a1} x_1 x_2 ... x_m E^{j}_{1b},

where each x_t runs over a basis of a corner E^{p}_{11} M E^{q}_{11} and
consecutive corners share their middle block.  Two monomials multiply by
concatenation when the inner indices agree (E_{1b} E_{c1} = delta_bc E_11)
and vanish otherwise.  ``bimodule_tensor`` builds M (x)_{A0} N literally as a
quotient of the plain tensor product; the tests compare the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .algebra import (
    AlgebraPresentation,
    Projection,
    power_chain,
    radical,
    subalgebra,
    subspace_product,
)
from .errors import AlgebraError, NotRadicalGraded
from .exact_linalg import FieldSpec, Subspace, is_zero, kernel_basis, rank
from .quiver import Bimodule
from .wedderburn import Block, decompose_semisimple


# ---------------------------------------------------------------------------
# graded algebras


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    presentation: AlgebraPresentation
    degrees: tuple[int, ...]
    layers: tuple[np.ndarray, ...] | None = None  # coset representatives (gr A only)
    powers: tuple[Subspace, ...] | None = None  # r^0 = A, r, r^2, ... (gr A only)

    def __post_init__(self) -> None:
        if len(self.degrees) != self.presentation.dim:
            raise ValueError("one degree per basis vector required")
        if any(d < 0 for d in self.degrees):
            raise ValueError("degrees must be non-negative")

    @property
    def dim(self) -> int:
        return self.presentation.dim

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def indices(self, d: int) -> list[int]:
        return [k for k, e in enumerate(self.degrees) if e == d]

    def component(self, d: int) -> Subspace:
        f = self.presentation.field
        idx = self.indices(d)
        return Subspace.span(f, self.dim, f.eye(self.dim)[idx]) if idx else Subspace.zero(f, self.dim)

    def respects_grading(self) -> bool:
        T = self.presentation.table
        deg = np.array(self.degrees, dtype=np.int64)
        target = deg[:, None, None] + deg[None, :, None]
        wrong = (T != 0) & (deg[None, None, :] != target)
        return not bool(np.any(wrong))


def associated_graded(A: AlgebraPresentation, rad: Subspace | None = None) -> GradedAlgebra:
    """gr A = A/r + r/r^2 + ... with the canonical coset bases."""
    f, n = A.field, A.dim
    r = radical(A) if rad is None else rad
    chain = power_chain(A, r)
    if chain[-1].dim:
        raise AlgebraError("radical is not nilpotent")
    powers = [Subspace.full(f, n)] + (chain if r.dim else [])
    if powers[-1].dim:
        powers.append(Subspace.zero(f, n))
    layers = [powers[d].quotient_basis(powers[d + 1]) for d in range(len(powers) - 1)]
    spaces = [Subspace.span(f, n, L) if L.shape[0] else Subspace.zero(f, n) for L in layers]
    offsets = np.cumsum([0] + [L.shape[0] for L in layers])
    total = int(offsets[-1])
    if total != n:
        raise AlgebraError("layers of the radical filtration do not add up to dim A")
    table = f.zeros((n, n, n))
    degrees = []
    for a, La in enumerate(layers):
        degrees.extend([a] * La.shape[0])
        for b, Lb in enumerate(layers):
            c = a + b
            if c >= len(layers) or La.shape[0] == 0 or Lb.shape[0] == 0:
                continue
            prods = A.products(La, Lb)
            res = powers[c + 1].reduce(prods)
            if not spaces[c].contains(res.reshape(-1, n)):
                raise AlgebraError("radical filtration is not multiplicative")
            table[offsets[a] : offsets[a + 1], offsets[b] : offsets[b + 1], offsets[c] : offsets[c + 1]] = (
                spaces[c].coordinates(res)
            )
    # independence of coset representatives: r^a r^(b+1) lies in r^(a+b+1)
    for a in range(len(layers)):
        for b in range(len(layers)):
            c = min(a + b + 1, len(powers) - 1)
            if not powers[c].contains_space(subspace_product(A, powers[a], powers[min(b + 1, len(powers) - 1)])):
                raise AlgebraError("product on gr A depends on representatives")
    unit = spaces[0].coordinates(powers[1].reduce(A.unit)) if layers else f.zeros(0)
    unit = np.concatenate([unit, f.zeros(n - unit.shape[0])])
    labels = []
    for d, L in enumerate(layers):
        for row in L:
            piv = int(np.nonzero(row)[0][0])
            labels.append(A.labels[piv] if d == 0 else f"{A.labels[piv]}'{d}")
    P = AlgebraPresentation(f, tuple(labels), table, f.array(unit))
    return GradedAlgebra(P, tuple(degrees), tuple(layers), tuple(powers))


def is_radical_graded(G: GradedAlgebra) -> bool:
    """Grading respected, A_0 semisimple, A_i = (A_1)^i for i >= 1."""
    A = G.presentation
    if not G.respects_grading():
        return False
    deg0 = G.component(0)
    if A.dim == 0:
        return True
    if not deg0.contains(A.unit):
        return False
    try:
        A0, _ = subalgebra(A, deg0)
    except AlgebraError:
        return False
    if radical(A0).dim:
        return False
    A1 = G.component(1)
    current = A1
    for d in range(2, G.max_degree + 2):
        current = subspace_product(A, current, A1)
        if current != G.component(d):
            return False
    return True


def graded_isomorphism(G: GradedAlgebra) -> np.ndarray | None:
    """Matrix of the degree-preserving map A -> gr A, if it is an isomorphism.

    A basis vector of degree i goes to its class in r^i / r^(i+1).
    """
    A = G.presentation
    f, n = A.field, A.dim
    gr = associated_graded(A)
    offsets = np.cumsum([0] + [L.shape[0] for L in gr.layers])
    Phi = f.zeros((n, n))
    for t, d in enumerate(G.degrees):
        if d >= len(gr.layers):
            return None
        v = A.basis_vector(t)
        if not gr.powers[d].contains(v):
            return None
        res = gr.powers[d + 1].reduce(v)
        space = Subspace.span(f, n, gr.layers[d])
        if not space.contains(res):
            return None
        Phi[t, offsets[d] : offsets[d + 1]] = space.coordinates(res)
    if rank(Phi, f) != n:
        return None
    lhs = f.reduce(np.tensordot(A.table, Phi, 1))
    rhs = gr.presentation.products(Phi, Phi)
    if not is_zero(f.reduce(lhs - rhs)):
        return None
    return Phi


# ---------------------------------------------------------------------------
# literal tensor product of bimodules


@dataclass(frozen=True, eq=False)
class TensorProduct:
    module: Bimodule
    projection: Projection  # plain tensor coordinates -> quotient coordinates


def bimodule_tensor(M: Bimodule, N: Bimodule) -> TensorProduct:
    """M (x)_{A0} N as the quotient of M (x)_k N by x b (x) y - x (x) b y."""
    f, S = M.field, M.base
    km, kn = M.dim, N.dim
    d = km * kn
    Im, In = f.eye(km), f.eye(kn)
    cols = [f.reduce(np.kron(M.right[t], In) - np.kron(Im, N.left[t])) for t in range(S.dim)]
    rel = Subspace.span(f, d, np.concatenate([c.T for c in cols], axis=0)) if d else Subspace.zero(f, 0)
    keep = rel.complement_indices()
    q = len(keep)
    P = f.zeros((q, d))
    for k, c in enumerate(keep):
        P[k, c] = 1
    for r_, c in enumerate(rel.pivots):
        P[:, c] = f.reduce(-rel.basis[r_, keep]) if q else P[:, c]
    Sec = f.zeros((d, q))
    for k, c in enumerate(keep):
        Sec[c, k] = 1
    left = np.stack([f.reduce(P @ np.kron(M.left[s], In) @ Sec) for s in range(S.dim)]) if S.dim else f.zeros((0, q, q))
    right = np.stack([f.reduce(P @ np.kron(Im, N.right[s]) @ Sec) for s in range(S.dim)]) if S.dim else f.zeros((0, q, q))
    out = Bimodule(S, M.blocks, f.array(left), f.array(right))
    if not out.check():
        raise AlgebraError("induced actions on the tensor product are not bimodule actions")
    return TensorProduct(out, Projection(P, Sec, f))


# ---------------------------------------------------------------------------
# monomial model of truncated tensor algebras


class TruncatedTensorAlgebra:
    """T(A0, M) through degree L, with A0 = prod M_{n_i}(k).

    ``corner_counts[i][j]`` is dim E^i_11 M E^j_11; generator g has left
    block ``gen_blocks[g][0]`` and right block ``gen_blocks[g][1]``.
    Monomials are tuples (start, a, word, end, b).
    """

    def __init__(self, field: FieldSpec, sizes: Sequence[int], corner_counts, L: int):
        if L < 0:
            raise ValueError("truncation must be non-negative")
        self.field = field
        self.sizes = tuple(int(n) for n in sizes)
        s = len(self.sizes)
        self.corner_counts = tuple(tuple(int(c) for c in row) for row in corner_counts)
        if len(self.corner_counts) != s or any(len(row) != s for row in self.corner_counts):
            raise ValueError("corner count matrix does not match the block count")
        self.L = L
        self.gen_blocks = [(i, j) for i in range(s) for j in range(s) for _ in range(self.corner_counts[i][j])]
        words: list[list[tuple[tuple[int, ...], int, int]]] = [[((), i, i) for i in range(s)]]
        for m in range(1, L + 1):
            if m == 1:
                layer = [((g,), i, j) for g, (i, j) in enumerate(self.gen_blocks)]
            else:
                layer = [
                    (w + (g,), st, j)
                    for (w, st, en) in words[-1]
                    for g, (i, j) in enumerate(self.gen_blocks)
                    if i == en
                ]
            words.append(layer)
        self.words = words
        self.monomials: list[tuple] = []
        self.degrees: list[int] = []
        for m, layer in enumerate(words):
            for w, st, en in layer:
                for a in range(self.sizes[st]):
                    for b in range(self.sizes[en]):
                        self.monomials.append((st, a, w, en, b))
                        self.degrees.append(m)
        self.index = {mono: k for k, mono in enumerate(self.monomials)}
        self._pairs: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def degree_dims(self) -> list[int]:
        return [self.degrees.count(m) for m in range(self.L + 1)]

    def degree_indices(self, m: int) -> list[int]:
        return [k for k, d in enumerate(self.degrees) if d == m]

    def product_index(self, u: int, v: int) -> int:
        st, a, w1, e1, b1 = self.monomials[u]
        s2, a2, w2, en, b = self.monomials[v]
        if e1 != s2 or b1 != a2 or len(w1) + len(w2) > self.L:
            return -1
        return self.index[(st, a, w1 + w2, en, b)]

    def pair_table(self) -> np.ndarray:
        """pairs[u, v] = index of the product monomial, or -1."""
        if self._pairs is None:
            N = self.dim
            pairs = np.full((N, N), -1, dtype=np.int64)
            by_start: dict[tuple[int, int], list[int]] = {}
            for v, (st, a, _, _, _) in enumerate(self.monomials):
                by_start.setdefault((st, a), []).append(v)
            for u, (_, _, w1, e1, b1) in enumerate(self.monomials):
                for v in by_start.get((e1, b1), ()):
                    k = self.product_index(u, v)
                    pairs[u, v] = k
            self._pairs = pairs
        return self._pairs

    def label(self, k: int) -> str:
        st, a, w, en, b = self.monomials[k]
        if not w:
            return f"E{st + 1}_{a + 1}{b + 1}"
        return f"E{st + 1}_{a + 1}1*" + "*".join(f"y{g}" for g in w) + f"*E{en + 1}_1{b + 1}"

    def unit(self) -> np.ndarray:
        u = self.field.zeros(self.dim)
        for i, n in enumerate(self.sizes):
            for a in range(n):
                u[self.index[(i, a, (), i, a)]] = 1
        return u

    def to_presentation(self) -> AlgebraPresentation:
        N = self.dim
        table = self.field.zeros((N, N, N))
        pairs = self.pair_table()
        us, vs = np.nonzero(pairs >= 0)
        table[us, vs, pairs[us, vs]] = 1
        return AlgebraPresentation(self.field, tuple(self.label(k) for k in range(N)), table, self.unit())

    def graded(self) -> GradedAlgebra:
        return GradedAlgebra(self.to_presentation(), tuple(self.degrees))

    def corner_monomials(self) -> list[int]:
        """Indices of monomials E^i_11 ... E^j_11: the basic corner sum."""
        return [k for k, (_, a, _, _, b) in enumerate(self.monomials) if a == 0 and b == 0]

    def basic(self) -> "TruncatedTensorAlgebra":
        return TruncatedTensorAlgebra(self.field, [1] * len(self.sizes), self.corner_counts, self.L)


@dataclass(frozen=True, eq=False)
class TensorRealization:
    """A monomial model together with the data that ties it to (A0, M)."""

    tensor: TruncatedTensorAlgebra
    base: AlgebraPresentation
    blocks: tuple[Block, ...]
    module: Bimodule
    generators: np.ndarray  # row g = corner generator g in M coordinates

    def psi(self, v) -> np.ndarray:
        """M -> T_1: v = sum E_{a1} (E_{1a} v E_{b1}) E_{1b}, corners in coordinates."""
        T, M, f = self.tensor, self.module, self.module.field
        out = f.zeros(T.dim)
        v = f.array(v)
        for i, Bi in enumerate(self.blocks):
            for j, Bj in enumerate(self.blocks):
                gens = [g for g, blk in enumerate(T.gen_blocks) if blk == (i, j)]
                if not gens:
                    continue
                corner = Subspace.span(f, M.dim, self.generators[gens])
                for a in range(Bi.n):
                    for b in range(Bj.n):
                        w = f.reduce(M.corner_operator(Bi.matrix_units[0, a], Bj.matrix_units[b, 0]) @ v)
                        coords = corner.coordinates(w)
                        for k, g in enumerate(gens):
                            out[T.index[(i, a, (g,), j, b)]] = coords[k]
        return out

    def embed_base(self, x) -> np.ndarray:
        """A0 -> T_0 via the matrix units of each block."""
        T, f = self.tensor, self.base.field
        out = f.zeros(T.dim)
        for i, B in enumerate(self.blocks):
            m = B.represent(self.base, x)
            for a in range(B.n):
                for b in range(B.n):
                    out[T.index[(i, a, (), i, b)]] = m[a, b]
        return out


def truncated_tensor_algebra(
    base: AlgebraPresentation, blocks: Sequence[Block], M: Bimodule, L: int
) -> TensorRealization:
    f = base.field
    s = len(blocks)
    counts = [[0] * s for _ in range(s)]
    gens = []
    for i in range(s):
        for j in range(s):
            op = M.corner_operator(blocks[i].matrix_units[0, 0], blocks[j].matrix_units[0, 0])
            corner = Subspace.span(f, M.dim, op.T) if M.dim else Subspace.zero(f, 0)
            counts[i][j] = corner.dim
            gens.extend(corner.basis)
    T = TruncatedTensorAlgebra(f, [b.n for b in blocks], counts, L)
    G = np.stack(gens) if gens else f.zeros((0, M.dim))
    return TensorRealization(T, base, tuple(blocks), M, G)


def free_path_tensor_algebra(q, L: int, field: FieldSpec | None = None, blocks=None) -> TruncatedTensorAlgebra:
    """Free realization of k(q, A): t_ij free A_j-A_i generators per arrow i -> j.

    A free bimodule on one generator over blocks of sizes n_j, n_i has
    dimension n_i^2 n_j^2; its E_11 corner has dimension n_i n_j.
    """
    sizes = [v.n for v in q.vertices] if blocks is None else [b.n for b in blocks]
    if field is None:
        if blocks is None:
            raise ValueError("a field is required when no blocks are given")
        field = blocks[0].field
    s = len(sizes)
    counts = [[0] * s for _ in range(s)]
    for i in range(s):
        for j in range(s):
            # arrows i -> j live in e_j M e_i
            counts[j][i] = q.arrows[i][j] * sizes[i] * sizes[j]
    return TruncatedTensorAlgebra(field, sizes, counts, L)


# ---------------------------------------------------------------------------
# the Gabriel cover


@dataclass(eq=False)
class CoverReport:
    verdict: bool
    loewy_length: int
    degree_dims: list[int]
    image_dims: list[int]
    kernel_dims: list[int]
    s_lower: int
    containment_in_J: bool
    multiplicative: bool
    surjective: bool
    well_defined: bool
    graded: GradedAlgebra = dc_field(repr=False)
    realization: TensorRealization = dc_field(repr=False)
    images: np.ndarray = dc_field(repr=False)  # row k = f(monomial k) in the graded algebra
    kernel_bases: list[np.ndarray] = dc_field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "loewy_length": self.loewy_length,
            "degree_dims": self.degree_dims,
            "kernel_dims": self.kernel_dims,
            "s_lower": self.s_lower,
        }


def _as_graded(A) -> GradedAlgebra:
    if isinstance(A, GradedAlgebra):
        if not is_radical_graded(A):
            raise NotRadicalGraded("supplied grading is not a radical grading")
        return A
    return associated_graded(A)


def degree_zero_data(G: GradedAlgebra, seed: int = 0):
    """(A0, embedding, blocks, M = A_1 as an A0-bimodule)."""
    A = G.presentation
    f = A.field
    A0, emb0 = subalgebra(A, G.component(0))
    blocks = tuple(decompose_semisimple(A0, seed))
    deg1 = G.indices(1)
    k = len(deg1)
    E1 = f.eye(A.dim)[deg1] if k else f.zeros((0, A.dim))
    if k:
        left = A.products(emb0, E1)[..., deg1].transpose(0, 2, 1)
        right = A.products(E1, emb0).transpose(1, 0, 2)[..., deg1].transpose(0, 2, 1)
    else:
        left = right = f.zeros((A0.dim, 0, 0))
    M = Bimodule(A0, blocks, f.array(left), f.array(right))
    if not M.check():
        raise AlgebraError("degree-one part is not an A0-bimodule")
    return A0, emb0, blocks, M


def cover_images(G: GradedAlgebra, R: TensorRealization, emb0: np.ndarray) -> np.ndarray:
    """f(monomial) in G for every monomial of the realization."""
    A = G.presentation
    f = A.field
    T = R.tensor
    deg1 = G.indices(1)
    units = [f.reduce(np.tensordot(B.matrix_units, emb0, 1)) for B in R.blocks]  # (n, n, dim A)
    gen_vecs = f.zeros((len(T.gen_blocks), A.dim))
    if len(T.gen_blocks):
        gen_vecs[:, deg1] = R.generators
    F = f.zeros((T.dim, A.dim))
    core: dict[tuple[int, ...], np.ndarray] = {}
    for m, layer in enumerate(T.words):
        for w, st, en in layer:
            if m == 0:
                c = units[st][0, 0]
            elif m == 1:
                c = gen_vecs[w[0]]
            else:
                c = A.mul(core[w[:-1]], gen_vecs[w[-1]])
            core[w] = c
            left = units[st][:, 0]  # E_{a1}
            right = units[en][0, :]  # E_{1b}
            X = A.products(left, c[None, :])[:, 0]
            Y = A.products(X, right)  # (a, b, dim)
            for a in range(T.sizes[st]):
                for b in range(T.sizes[en]):
                    F[T.index[(st, a, w, en, b)]] = Y[a, b]
    return F


def check_multiplicative(T: TruncatedTensorAlgebra, A: AlgebraPresentation, F: np.ndarray) -> bool:
    f = A.field
    pairs = T.pair_table()
    P = A.products(F, F)
    expect = F[np.maximum(pairs, 0)]
    expect[pairs < 0] = 0
    return not bool(np.any(f.reduce(P - expect) != 0))


def gabriel_cover(A, seed: int = 0, kernel_bases: bool = False, truncate: int | None = None) -> CoverReport:
    """T(A0, A_1) truncated at L = rl(A) (or ``truncate``), mapped onto a radical-graded A.

    ``A`` is either a GradedAlgebra passing is_radical_graded or a plain
    presentation, which is replaced by its associated graded algebra.
    """
    G = _as_graded(A)
    Ap = G.presentation
    f = Ap.field
    rl = G.max_degree + 1 if Ap.dim else 0
    L = rl if truncate is None else truncate
    if L < 0:
        raise ValueError("truncation must be non-negative")
    A0, emb0, blocks, M = degree_zero_data(G, seed)
    R = truncated_tensor_algebra(A0, blocks, M, L)
    T = R.tensor
    F = cover_images(G, R, emb0)
    degree_dims, image_dims, kernel_dims, kbases = [], [], [], []
    graded_ok = surjective = True
    for m in range(L + 1):
        idx = T.degree_indices(m)
        comp = G.component(m)
        Fm = F[idx]
        if idx and not comp.contains(Fm):
            graded_ok = False
        rk = rank(Fm, f) if idx else 0
        if rk != comp.dim:
            surjective = False
        degree_dims.append(len(idx))
        image_dims.append(rk)
        kernel_dims.append(len(idx) - rk)
        if kernel_bases:
            kbases.append(kernel_basis(Fm.T, f) if idx else f.zeros((0, 0)))
    # f_1 o psi is the inclusion of A_1: the model's middle relations match A's
    deg1 = G.indices(1)
    well_defined = graded_ok
    if deg1:
        for c, t in enumerate(deg1):
            v = f.zeros(len(deg1))
            v[c] = 1
            img = f.reduce(R.psi(v) @ F)
            if not np.array_equal(img, Ap.basis_vector(t)):
                well_defined = False
                break
    if Ap.dim and not np.array_equal(f.reduce(T.unit() @ F), Ap.unit):
        well_defined = False
    multiplicative = check_multiplicative(T, Ap, F)
    containment = kernel_dims[0] == 0 and (L < 1 or kernel_dims[1] == 0)
    top_vanishes = all(kernel_dims[m] == degree_dims[m] for m in range(rl, L + 1))
    verdict = bool(
        well_defined
        and multiplicative
        and surjective
        and containment
        and top_vanishes
        and sum(image_dims) == Ap.dim
    )
    return CoverReport(
        verdict,
        rl,
        degree_dims,
        image_dims,
        kernel_dims,
        rl,
        containment,
        multiplicative,
        surjective,
        well_defined,
        G,
        R,
        F,
        kbases,
    )


__all__ = [
    "CoverReport",
    "GradedAlgebra",
    "TensorProduct",
    "TensorRealization",
    "TruncatedTensorAlgebra",
    "associated_graded",
    "bimodule_tensor",
    "check_multiplicative",
    "cover_images",
    "degree_zero_data",
    "free_path_tensor_algebra",
    "gabriel_cover",
    "graded_isomorphism",
    "is_radical_graded",
    "truncated_tensor_algebra",
]
