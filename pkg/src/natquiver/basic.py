"""Basic algebras B = (+) eps_i A eps_j and the comparisons through the cover."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import AlgebraPresentation, subalgebra
from .errors import AlgebraError, NotApplicable
from .exact_linalg import Subspace, rank
from .graded import (
    GradedAlgebra,
    TruncatedTensorAlgebra,
    free_path_tensor_algebra,
    gabriel_cover,
)
from .quiver import Analysis, Quiver, bimodule_natural_quiver, isomorphism
from .wedderburn import IdempotentFamily, wedderburn


@dataclass(frozen=True, eq=False)
class BasicAlgebraData:
    algebra: AlgebraPresentation
    idempotents: IdempotentFamily
    embedding: np.ndarray  # row t = image of basis vector t in the ambient algebra
    space: Subspace | None = None

    @property
    def dim(self) -> int:
        return self.algebra.dim


def _corner_sum(A: AlgebraPresentation, idempotents) -> Subspace:
    f = A.field
    E = f.reduce(np.sum(np.stack(idempotents), axis=0))
    left = A.products(E[None, :], f.eye(A.dim))[0]
    return Subspace.span(f, A.dim, A.products(left, E[None, :])[:, 0]), E


def _is_basic(B: AlgebraPresentation, seed: int = 0) -> bool:
    return all(n == 1 for n in wedderburn(B, seed).sizes)


def basic_algebra(A: AlgebraPresentation, seed: int = 0, analysis: Analysis | None = None) -> BasicAlgebraData:
    """Corner sum over lifted primitive idempotents, one per block."""
    an = Analysis(A, seed) if analysis is None else analysis
    fam = an.lifted_primitives
    if len(fam) == 0:
        f = A.field
        return BasicAlgebraData(AlgebraPresentation(f, (), f.zeros((0, 0, 0)), f.zeros(0)), fam, f.zeros((0, A.dim)))
    space, E = _corner_sum(A, fam.elements)
    B, emb = subalgebra(A, space, unit=E)
    if not _is_basic(B, seed):
        raise AlgebraError("corner algebra is not basic")
    local = tuple(space.coordinates(e) for e in fam.elements)
    return BasicAlgebraData(B, IdempotentFamily(local, True), emb, space)


def gpa_basic_algebra(A, L: int | None = None, seed: int = 0) -> BasicAlgebraData:
    """Basic algebra C of the truncated realization T(A/r, r/r^2).

    ``A`` is a presentation (its associated graded algebra is used) or a
    TruncatedTensorAlgebra.  C is spanned by the monomials starting and
    ending at E_11 units and is itself a monomial algebra with all block
    sizes 1.
    """
    if isinstance(A, TruncatedTensorAlgebra):
        T = A if L is None else TruncatedTensorAlgebra(A.field, A.sizes, A.corner_counts, L)
    else:
        cover = gabriel_cover(A, seed)
        T = cover.realization.tensor
        if L is not None:
            T = TruncatedTensorAlgebra(T.field, T.sizes, T.corner_counts, L)
    f = T.field
    C = T.basic().to_presentation()
    if C.dim and not _is_basic(C, seed):
        raise AlgebraError("corner algebra of the tensor realization is not basic")
    corner = T.corner_monomials()
    emb = f.eye(T.dim)[corner] if T.dim else f.zeros((0, 0))
    idems = tuple(C.basis_vector(k) for k in range(len(T.sizes)))
    return BasicAlgebraData(C, IdempotentFamily(idems, True), emb)


# ---------------------------------------------------------------------------
# the two basic algebras through the cover


@dataclass(eq=False)
class TwoBasicsReport:
    verdict: bool
    dim_B: int
    dim_C: int
    dim_image: int
    basic: bool
    image_equals_B: bool
    same_ordinary_quiver: bool
    generic_dim: int
    details: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "dim_B": self.dim_B,
            "dim_C": self.dim_C,
            "dim_image_of_C": self.dim_image,
            "basic": self.basic,
            "image_equals_B": self.image_equals_B,
            "same_ordinary_quiver": self.same_ordinary_quiver,
        }


def verify_two_basics(A, seed: int = 0) -> TwoBasicsReport:
    """Image of C under the cover equals B = (+) eps_i A eps_j with eps_i = f(E^i_11).

    ``A`` is a presentation (analysed through gr A) or a radical-graded
    GradedAlgebra.  B is also recomputed from generically lifted idempotents
    and compared by dimension and ordinary quiver.
    """
    cover = gabriel_cover(A, seed)
    G = cover.graded.presentation
    f = G.field
    T = cover.realization.tensor
    F = cover.images
    s = len(T.sizes)
    if G.dim == 0:
        return TwoBasicsReport(True, 0, 0, 0, True, True, True, 0)
    eps = [F[T.index[(i, 0, (), i, 0)]] for i in range(s)]
    fam = IdempotentFamily(tuple(eps), False)
    family_ok = fam.check(G)
    space, E = _corner_sum(G, eps)
    B, _ = subalgebra(G, space, unit=E)
    basic = _is_basic(B, seed)
    corner = T.corner_monomials()
    image = Subspace.span(f, G.dim, F[corner]) if corner else Subspace.zero(f, G.dim)
    image_ok = image == space
    original = A.presentation if isinstance(A, GradedAlgebra) else A
    gamma_A = Analysis(original, seed).ordinary_quiver
    gamma_B = Analysis(B, seed).ordinary_quiver
    same = isomorphism(gamma_A, gamma_B, match_sizes=False) is not None
    generic = basic_algebra(G, seed)
    verdict = bool(cover.verdict and family_ok and basic and image_ok and same and generic.dim == B.dim)
    return TwoBasicsReport(
        verdict,
        B.dim,
        len(corner),
        image.dim,
        basic,
        image_ok,
        same,
        generic.dim,
        {"cover_verdict": cover.verdict, "family_ok": family_ok},
    )


# ---------------------------------------------------------------------------
# quiver of the generalized path algebra


def free_generator_map(free: TruncatedTensorAlgebra, T: TruncatedTensorAlgebra) -> list[int]:
    """pi on corner generators: free generator -> generator of T, or -1.

    The k-th free generator of a component is sent to
    g_k = sum_(a,b) E_{a1} y_(k n_l n_r + a n_r + b) E_{1b}, so the corner
    element E_{1a} F_k E_{b1} goes to the single corner basis vector y with
    that index (or to 0 once the corner basis is used up).
    """
    out = []
    local: dict[tuple[int, int], int] = {}
    starts: dict[tuple[int, int], int] = {}
    for g, blk in enumerate(T.gen_blocks):
        starts.setdefault(blk, g)
    for blk in free.gen_blocks:
        t = local.get(blk, 0)
        local[blk] = t + 1
        i, j = blk
        out.append(starts[blk] + t if t < T.corner_counts[i][j] else -1)
    return out


def map_monomials(free: TruncatedTensorAlgebra, T: TruncatedTensorAlgebra, gen_map: list[int]) -> np.ndarray:
    """Index of pi(monomial) in T for each free monomial, -1 for zero."""
    out = np.full(free.dim, -1, dtype=np.int64)
    for k, (st, a, w, en, b) in enumerate(free.monomials):
        word = tuple(gen_map[g] for g in w)
        if any(g < 0 for g in word) or len(word) > T.L:
            continue
        out[k] = T.index[(st, a, word, en, b)]
    return out


@dataclass(eq=False)
class QuiverEqualityReport:
    verdict: bool
    natural_quiver_A: Quiver
    natural_quiver_realization: Quiver
    composite_kernel_dims: list[int]
    admissible: bool

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "admissible": self.admissible,
            "composite_kernel_dims": self.composite_kernel_dims,
            "natural_quiver_A": self.natural_quiver_A.to_json(),
            "natural_quiver_realization": self.natural_quiver_realization.to_json(),
        }


def verify_quiver_equality(A, seed: int = 0) -> QuiverEqualityReport:
    """Delta of the free realization k(Delta_A, A) equals Delta_A.

    The composite k(Delta_A, A) -> T(A0, r/r^2) -> A must have its kernel in
    degrees >= 2; otherwise NotApplicable is raised.
    """
    cover = gabriel_cover(A, seed)
    G = cover.graded.presentation
    f = G.field
    R = cover.realization
    T = R.tensor
    delta = bimodule_natural_quiver(R.module)
    L = max(T.L, 1)
    free = free_path_tensor_algebra(delta, L, f, R.blocks)
    gen_map = free_generator_map(free, T)
    if any(g < 0 for g in gen_map):
        raise NotApplicable("the composite cover has a kernel in degree one (a component is not free)")
    mono = map_monomials(free, T, gen_map)
    images = cover.images[np.maximum(mono, 0)]
    images[mono < 0] = 0
    kernel_dims = []
    for m in range(L + 1):
        idx = free.degree_indices(m)
        kernel_dims.append(len(idx) - (rank(images[idx], f) if idx else 0))
    admissible = kernel_dims[0] == 0 and kernel_dims[1] == 0
    if not admissible:
        raise NotApplicable("the composite cover has a kernel in degree one")
    # r/r^2 of the truncated realization is its degree-one part for any L >= 1
    small = TruncatedTensorAlgebra(f, free.sizes, free.corner_counts, min(L, 2))
    delta_T = Analysis(small.to_presentation(), seed).natural_quiver
    original = A.presentation if isinstance(A, GradedAlgebra) else A
    delta_A = Analysis(original, seed).natural_quiver
    verdict = isomorphism(delta_A, delta_T) is not None
    return QuiverEqualityReport(verdict, delta_A, delta_T, kernel_dims, admissible)


__all__ = [
    "BasicAlgebraData",
    "QuiverEqualityReport",
    "TwoBasicsReport",
    "basic_algebra",
    "free_generator_map",
    "gpa_basic_algebra",
    "map_monomials",
    "verify_quiver_equality",
    "verify_two_basics",
]
