"""Block decomposition of A/r, matrix units, and idempotent lifting."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraPresentation,
    Projection,
    center,
    quotient,
    radical,
    radical_chain,
    subalgebra,
)
from .errors import AlgebraError, NonSplit, NotSemisimple, SearchExhausted
from .exact_linalg import FieldSpec, Polynomial, Subspace, is_zero, minimal_polynomial, rank, solve, split_roots

DEFAULT_TRIALS = 64
EXHAUSTIVE_MAX_DIM = 16


@dataclass(frozen=True, eq=False)
class IdempotentFamily:
    elements: tuple[np.ndarray, ...]
    complete: bool

    def __len__(self) -> int:
        return len(self.elements)

    def check(self, A: AlgebraPresentation) -> bool:
        """Idempotent, pairwise orthogonal, and summing to 1 when complete."""
        E = A.field.array(np.stack(self.elements)) if self.elements else A.field.zeros((0, A.dim))
        P = A.products(E, E)
        for i in range(len(E)):
            for j in range(len(E)):
                target = E[i] if i == j else A.field.zeros(A.dim)
                if not np.array_equal(P[i, j], target):
                    return False
        if self.complete:
            total = A.field.reduce(E.sum(axis=0)) if len(E) else A.field.zeros(A.dim)
            return bool(np.array_equal(total, A.unit))
        return True


@dataclass(frozen=True, eq=False)
class Block:
    """One simple block of a split semisimple algebra S, with matrix units.

    ``matrix_units[a, b]`` is the element of S mapped to the (a, b) unit by
    ``representation``; ``left_ideal`` is the minimal left ideal S·E_11.
    """

    central_idempotent: np.ndarray
    block_basis: Subspace
    n: int
    primitive_idempotent: np.ndarray
    matrix_units: np.ndarray
    left_ideal: Subspace
    field: FieldSpec

    @property
    def dim(self) -> int:
        return self.block_basis.dim

    def represent(self, S: AlgebraPresentation, x) -> np.ndarray:
        """n x n matrix of left multiplication by x on the minimal left ideal."""
        images = S.products(np.asarray(x)[None, :], self.left_ideal.basis)[0]
        return self.left_ideal.coordinates(images).T

    def from_matrix(self, m) -> np.ndarray:
        m = self.field.array(m)
        return self.field.reduce(np.tensordot(m, self.matrix_units, axes=([0, 1], [0, 1])))


@dataclass(frozen=True, eq=False)
class WedderburnData:
    blocks: tuple[Block, ...]
    semisimple_algebra: AlgebraPresentation
    projection: Projection
    radical: Subspace
    algebra: AlgebraPresentation

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(b.n for b in self.blocks)

    def primitive_family(self) -> IdempotentFamily:
        """One primitive idempotent E_11 per block, in A/r."""
        return IdempotentFamily(tuple(b.primitive_idempotent for b in self.blocks), len(self.blocks) == 0)

    def complete_family(self) -> IdempotentFamily:
        """All diagonal matrix units, in A/r (sums to 1)."""
        elems = tuple(b.matrix_units[a, a] for b in self.blocks for a in range(b.n))
        return IdempotentFamily(elems, True)

    def central_family(self) -> IdempotentFamily:
        return IdempotentFamily(tuple(b.central_idempotent for b in self.blocks), True)


# ---------------------------------------------------------------------------
# central idempotents


def _power_sequence(S: AlgebraPresentation, y: np.ndarray, unit: np.ndarray, count: int) -> list[np.ndarray]:
    seq = [unit]
    for _ in range(count):
        seq.append(S.mul(seq[-1], y))
    return seq


def _min_poly(S: AlgebraPresentation, y: np.ndarray, unit: np.ndarray, bound: int) -> Polynomial:
    return minimal_polynomial(_power_sequence(S, y, unit, bound + 1), S.field)


def _evaluate(S: AlgebraPresentation, poly: Polynomial, y: np.ndarray, unit: np.ndarray) -> np.ndarray:
    f = S.field
    out = f.zeros(S.dim)
    for c in reversed(poly.coeffs):
        out = f.reduce(S.mul(out, y) + f.reduce(unit * c))
    return out


def _spectral_idempotents(S, y, unit, bound, seed) -> list[np.ndarray]:
    """Split ``unit`` along the eigenvalues of y inside the algebra with that unit."""
    f = S.field
    mp = _min_poly(S, y, unit, bound)
    roots = split_roots(mp, seed)
    if len(set(roots)) != len(roots):
        raise NotSemisimple("central element with a repeated eigenvalue: the algebra has a radical")
    if len(roots) == 1:
        return [unit]
    out = []
    for lam in roots:
        others = [mu for mu in roots if mu != lam]
        num = Polynomial.from_roots(others, f)
        denom = num(f.scalar(lam))
        out.append(_evaluate(S, num.scale(f.inv(denom)), y, unit))
    return out


def central_idempotents(S: AlgebraPresentation, seed: int = 0, check_semisimple: bool = True) -> list[np.ndarray]:
    """Primitive central idempotents of a split semisimple algebra."""
    if check_semisimple and radical(S).dim:
        raise NotSemisimple("algebra has a nonzero radical")
    if S.dim == 0:
        return []
    Z = center(S)
    family = [S.unit]
    for z in Z.basis:
        if len(family) == Z.dim:
            break
        refined = []
        for e in family:
            y = S.mul(z, e)
            refined.extend(_spectral_idempotents(S, y, e, Z.dim, seed))
        family = refined
    if len(family) != Z.dim:
        raise NonSplit("center is not a product of copies of the base field")
    return family


# ---------------------------------------------------------------------------
# primitive idempotents and matrix units inside one simple block


def _right_identity(C: AlgebraPresentation, ideal: Subspace) -> np.ndarray | None:
    """Idempotent f in the left ideal with x f = x for all x in it."""
    f = C.field
    V = ideal.basis
    P = C.products(V, V)  # (k, t, dim): v_k v_t
    k = V.shape[0]
    # sum_t c_t v_k v_t = v_k  for all k
    lhs = P.transpose(0, 2, 1).reshape(k * C.dim, k)
    rhs = V.reshape(k * C.dim)
    c = solve(lhs, rhs, f)
    if c is None:
        return None
    return f.reduce(c @ V)


def _zero_divisor_candidates(C: AlgebraPresentation, rng: np.random.Generator, trials: int):
    f = C.field
    for i in range(C.dim):
        yield C.basis_vector(i)
    for _ in range(trials):
        y = f.random(rng, C.dim)
        yield y
        try:
            roots = split_roots(_min_poly(C, y, C.unit, C.dim), int(rng.integers(2**31)))
        except NonSplit:
            continue
        if roots:
            yield f.reduce(y - f.reduce(C.unit * roots[0]))


def _exhaustive_candidates(C: AlgebraPresentation):
    f = C.field
    if C.dim > EXHAUSTIVE_MAX_DIM:
        return
    coeffs = list(f.elements()) if f.is_prime_field else [-1, 1, 2]
    for i, j in itertools.combinations(range(C.dim), 2):
        for c in coeffs:
            v = C.basis_vector(i).copy()
            v[j] = f.scalar(c)
            yield v


def _proper_left_ideal(C: AlgebraPresentation, w: np.ndarray) -> Subspace | None:
    if is_zero(w):
        return None
    L = Subspace.span(C.field, C.dim, C.products(C.field.eye(C.dim), w[None, :])[:, 0])
    return L if 0 < L.dim < C.dim else None


def primitive_idempotent(C: AlgebraPresentation, seed: int = 0, trials: int = DEFAULT_TRIALS) -> np.ndarray:
    """A primitive idempotent of a split simple algebra C (unit = C.unit)."""
    rng = np.random.default_rng(seed)
    f = C.field
    current, embed = C, f.eye(C.dim)  # embed: rows = images of current basis in C
    while current.dim > 1:
        found = None
        for w in itertools.chain(_zero_divisor_candidates(current, rng, trials), _exhaustive_candidates(current)):
            L = _proper_left_ideal(current, w)
            if L is None:
                continue
            e = _right_identity(current, L)
            if e is not None and not is_zero(e) and not np.array_equal(e, current.unit):
                found = e
                break
        if found is None:
            raise SearchExhausted(f"no zero divisor found in a simple algebra of dimension {current.dim}")
        corner = Subspace.span(
            f, current.dim, current.products(current.products(found[None, :], f.eye(current.dim))[0], found[None, :])[:, 0]
        )
        sub, emb = subalgebra(current, corner, unit=found)
        embed = f.reduce(emb @ embed)
        current = sub
    return f.reduce(current.unit @ embed)


def minimal_left_ideal(
    S: AlgebraPresentation, block: Subspace, unit=None, seed: int = 0, trials: int = DEFAULT_TRIALS, start=None
) -> Subspace:
    """A minimal left ideal of S inside ``block`` (a simple two-sided ideal).

    ``start``, if given and already generating a left ideal of dimension
    n = sqrt(dim block), is returned as block·start.
    """
    n = math.isqrt(block.dim)
    if n * n != block.dim:
        raise NonSplit(f"block of dimension {block.dim} is not a full matrix algebra")
    full = S.field.eye(S.dim)
    if start is not None:
        L = Subspace.span(S.field, S.dim, S.products(full, S.field.array(start)[None, :])[:, 0])
        if L.dim == n:
            return L
    if unit is None:
        unit = _block_unit(S, block)
    C, emb = subalgebra(S, block, unit=unit)
    eps = S.field.reduce(primitive_idempotent(C, seed, trials) @ emb)
    L = Subspace.span(S.field, S.dim, S.products(full, eps[None, :])[:, 0])
    if L.dim != n:
        raise AlgebraError("left ideal of a primitive idempotent has the wrong dimension")
    return L


def _block_unit(S: AlgebraPresentation, block: Subspace) -> np.ndarray:
    """The central idempotent of S lying in ``block`` (its identity)."""
    for e in central_idempotents(S, check_semisimple=False):
        if block.contains(e) and not is_zero(e):
            return e
    raise AlgebraError("block does not contain a central idempotent")


def block_data(S: AlgebraPresentation, e: np.ndarray, seed: int = 0, trials: int = DEFAULT_TRIALS) -> Block:
    f = S.field
    full = f.eye(S.dim)
    B = Subspace.span(f, S.dim, S.products(full, e[None, :])[:, 0])
    n = math.isqrt(B.dim)
    if n * n != B.dim:
        raise NonSplit(f"block of dimension {B.dim} is not a full matrix algebra")
    L = B if n == 1 else minimal_left_ideal(S, B, unit=e, seed=seed, trials=trials)
    # left action of the block on L: one n x n matrix per block basis vector
    images = S.products(B.basis, L.basis)  # (d, n, dim)
    reps = L.coordinates(images)  # (d, n, n) -> [x, c, r] = row r of x * l_c
    flat = reps.transpose(0, 2, 1).reshape(B.dim, n * n)  # row-major n x n of each x
    if rank(flat, f) != B.dim:
        raise NonSplit("block does not act faithfully on its minimal left ideal")
    # inverse of the representation: coordinates (w.r.t. B.basis) of each matrix unit
    coeffs = np.stack([solve(flat.T, f.eye(n * n)[u], f) for u in range(n * n)])
    units = f.reduce(coeffs @ B.basis).reshape(n, n, S.dim)
    _check_matrix_units(S, units, e)
    return Block(e, B, n, units[0, 0].copy(), units, L, f)


def _check_matrix_units(S: AlgebraPresentation, units: np.ndarray, e: np.ndarray) -> None:
    f = S.field
    n = units.shape[0]
    flat = units.reshape(n * n, S.dim)
    P = S.products(flat, flat).reshape(n, n, n, n, S.dim)
    zero = f.zeros(S.dim)
    for a, b, c, d in itertools.product(range(n), repeat=4):
        want = units[a, d] if b == c else zero
        if not np.array_equal(P[a, b, c, d], want):
            raise AlgebraError("representation is not multiplicative on the block")
    if not np.array_equal(f.reduce(sum(units[a, a] for a in range(n))), e):
        raise AlgebraError("diagonal matrix units do not sum to the block unit")


# ---------------------------------------------------------------------------
# full decomposition


def decompose_semisimple(S: AlgebraPresentation, seed: int = 0, trials: int = DEFAULT_TRIALS) -> list[Block]:
    blocks = [block_data(S, e, seed, trials) for e in central_idempotents(S, seed)]
    blocks.sort(key=lambda b: (b.n, b.block_basis.pivots, tuple(b.central_idempotent.tolist())))
    return blocks


def wedderburn(A: AlgebraPresentation, seed: int = 0, rad: Subspace | None = None) -> WedderburnData:
    r = radical(A) if rad is None else rad
    S, proj = quotient(A, r)
    blocks = decompose_semisimple(S, seed)
    if sum(b.n**2 for b in blocks) != S.dim:
        raise AlgebraError("block sizes do not add up to dim A/r")
    return WedderburnData(tuple(blocks), S, proj, r, A)


# ---------------------------------------------------------------------------
# lifting


def lift_idempotents(
    A: AlgebraPresentation,
    family: IdempotentFamily,
    projection: Projection,
    rad: Subspace | None = None,
) -> IdempotentFamily:
    """Lift orthogonal idempotents of A/r to orthogonal idempotents of A.

    Each coset representative is cut down to the corner of 1 minus the
    previous lifts and then iterated through e <- 3e^2 - 2e^3.
    """
    f = A.field
    r = radical(A) if rad is None else rad
    steps = math.ceil(math.log2(max(radical_chain(A, r).loewy_length, 1))) + 1
    lifted: list[np.ndarray] = []
    rest = A.unit.copy()
    for e_bar in family.elements:
        x = projection.lift(e_bar)
        x = A.mul(A.mul(rest, x), rest)
        for _ in range(steps + 64):
            x2 = A.mul(x, x)
            if np.array_equal(x2, x):
                break
            x = f.reduce(3 * x2 - 2 * A.mul(x2, x))
        else:
            raise AlgebraError("idempotent lifting did not converge")
        lifted.append(x)
        rest = f.reduce(rest - x)
    out = IdempotentFamily(tuple(lifted), family.complete)
    if not out.check(A):
        raise AlgebraError("lifted family fails the idempotent checks")
    for e, e_bar in zip(lifted, family.elements):
        if not np.array_equal(projection(e), f.array(e_bar)):
            raise AlgebraError("lifted idempotent does not project to its target")
    return out


def lifting_properties(A: AlgebraPresentation, family: IdempotentFamily, lifted: IdempotentFamily, projection: Projection) -> dict[str, bool]:
    """The four lifting properties, checked independently."""
    f = A.field
    E = lifted.elements
    idem = all(np.array_equal(A.mul(e, e), e) for e in E)
    orth = all(is_zero(A.mul(E[i], E[j])) for i in range(len(E)) for j in range(len(E)) if i != j)
    proj = len(E) == len(family.elements) and all(
        np.array_equal(projection(e), f.array(t)) for e, t in zip(E, family.elements)
    )
    total = f.reduce(np.sum(np.stack(E), axis=0)) if E else f.zeros(A.dim)
    summ = (not family.complete) or np.array_equal(total, A.unit)
    return {"idempotent": idem, "orthogonal": orth, "projects": proj, "sums_to_one": bool(summ)}


__all__ = [
    "Block",
    "IdempotentFamily",
    "WedderburnData",
    "central_idempotents",
    "block_data",
    "minimal_left_ideal",
    "primitive_idempotent",
    "decompose_semisimple",
    "wedderburn",
    "lift_idempotents",
    "lifting_properties",
]
