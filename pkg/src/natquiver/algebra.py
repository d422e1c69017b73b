"""Finite-dimensional associative algebras given by structure constants."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AlgebraError, FormatError, NotAnIdeal, OracleLimit
from .exact_linalg import FieldSpec, Subspace, inverse, is_zero, kernel_basis, rank

ORACLE_MAX_DIM = 12
ORACLE_MAX_ELEMENTS = 2**18


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    """Basis labels plus the tensor ``table[i, j] = b_i * b_j``.

    ``table`` has shape (dim, dim, dim); ``unit`` holds the coordinates of
    the identity element.
    """

    field: FieldSpec
    labels: tuple[str, ...]
    table: np.ndarray
    unit: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.labels)
        if self.table.shape != (n, n, n):
            raise FormatError(f"structure tensor has shape {self.table.shape}, expected {(n, n, n)}")
        if self.unit.shape != (n,):
            raise FormatError(f"unit has length {self.unit.shape[0]}, expected {n}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"AlgebraPresentation(dim={self.dim}, field={self.field})"

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = 1
        return v

    def element(self, coords) -> np.ndarray:
        v = self.field.array(coords)
        if v.shape[-1] != self.dim:
            raise ValueError(f"element has {v.shape[-1]} coordinates, algebra has dimension {self.dim}")
        return v

    def mul(self, a, b) -> np.ndarray:
        a = self.element(a)
        b = self.element(b)
        return self.field.reduce(b @ self.field.reduce(np.tensordot(a, self.table, 1)))

    def left_matrix(self, a) -> np.ndarray:
        """Matrix of x -> a x (columns are images of basis vectors)."""
        return self.field.reduce(np.tensordot(self.element(a), self.table, 1)).T

    def right_matrix(self, b) -> np.ndarray:
        """Matrix of x -> x b."""
        return self.field.reduce(np.tensordot(self.table, self.element(b), axes=([1], [0]))).T

    def products(self, U, V) -> np.ndarray:
        """All products u_a v_b, shape (len(U), len(V), dim)."""
        U = self.field.array(U).reshape(-1, self.dim)
        V = self.field.array(V).reshape(-1, self.dim)
        if U.shape[0] == 0 or V.shape[0] == 0:
            return self.field.zeros((U.shape[0], V.shape[0], self.dim))
        X = self.field.reduce(np.tensordot(U, self.table, 1))  # (a, j, m)
        P = self.field.reduce(np.tensordot(X, V, axes=([1], [1])))  # (a, m, b)
        return P.transpose(0, 2, 1)

    def power(self, a, k: int) -> np.ndarray:
        out = self.unit.copy()
        for _ in range(k):
            out = self.mul(out, a)
        return out


def multiply(A: AlgebraPresentation, a, b) -> np.ndarray:
    return A.mul(a, b)


def make_algebra(field: FieldSpec, labels: Sequence[str], table, unit) -> AlgebraPresentation:
    return AlgebraPresentation(field, tuple(labels), field.array(table), field.array(unit))


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    associative: bool
    unital: bool
    failing_triple: tuple[int, int, int] | None = None
    failing_labels: tuple[str, str, str] | None = None
    failing_unit_index: int | None = None

    @property
    def ok(self) -> bool:
        return self.associative and self.unital

    def describe(self) -> str:
        if self.ok:
            return "valid"
        parts = []
        if not self.associative:
            parts.append(f"associativity fails on basis triple {self.failing_labels}")
        if not self.unital:
            parts.append(f"unit law fails on basis element {self.failing_unit_index}")
        return "; ".join(parts)


def validate(A: AlgebraPresentation) -> ValidationReport:
    n, f, T = A.dim, A.field, A.table
    failing = None
    for i in range(n):
        # (b_i b_j) b_k  vs  b_i (b_j b_k), for all j, k at once
        lhs = f.reduce(np.tensordot(T[i], T, axes=([1], [0])))  # (j, k, out)
        rhs = f.reduce(np.tensordot(T, T[i], axes=([2], [0])))  # (j, k, out)
        bad = np.nonzero(np.count_nonzero(f.reduce(lhs - rhs), axis=2))
        if bad[0].size:
            failing = (i, int(bad[0][0]), int(bad[1][0]))
            break
    unit_bad = None
    u = A.unit
    left = f.reduce(np.tensordot(u, T, 1))
    right = f.reduce(np.tensordot(T, u, axes=([1], [0])))
    ident = f.eye(n)
    for i in range(n):
        if not (is_zero(f.reduce(left[i] - ident[i])) and is_zero(f.reduce(right[i] - ident[i]))):
            unit_bad = i
            break
    return ValidationReport(
        associative=failing is None,
        unital=unit_bad is None,
        failing_triple=failing,
        failing_labels=None if failing is None else tuple(A.labels[k] for k in failing),
        failing_unit_index=unit_bad,
    )


# ---------------------------------------------------------------------------
# subspaces, ideals, quotients


def subspace_product(A: AlgebraPresentation, U: Subspace, V: Subspace) -> Subspace:
    if U.dim == 0 or V.dim == 0:
        return Subspace.zero(A.field, A.dim)
    return Subspace.span(A.field, A.dim, A.products(U.basis, V.basis))


def is_ideal(A: AlgebraPresentation, I: Subspace) -> bool:
    if I.dim == 0:
        return True
    full = A.field.eye(A.dim)
    return I.contains(A.products(full, I.basis)) and I.contains(A.products(I.basis, full))


def ideal_generated(A: AlgebraPresentation, vectors) -> Subspace:
    J = Subspace.span(A.field, A.dim, vectors)
    full = A.field.eye(A.dim)
    while True:
        if J.dim == 0:
            return J
        grown = J.extend(A.products(full, J.basis)).extend(A.products(J.basis, full))
        if grown.dim == J.dim:
            return J
        J = grown


def power_chain(A: AlgebraPresentation, I: Subspace) -> list[Subspace]:
    """[I, I^2, I^3, ...] ending at the first zero power or the first repeat."""
    chain = [I]
    while chain[-1].dim > 0:
        nxt = subspace_product(A, chain[-1], I)
        if nxt.dim == chain[-1].dim:
            break
        chain.append(nxt)
    return chain


def is_nilpotent(A: AlgebraPresentation, I: Subspace) -> bool:
    return power_chain(A, I)[-1].dim == 0


@dataclass(frozen=True, eq=False)
class Projection:
    """Linear data of the canonical map A -> A/I.

    ``matrix`` (q x n) sends coordinates in A to coordinates in A/I;
    ``section`` (n x q) lifts each quotient basis vector to the standard
    basis vector it came from.
    """

    matrix: np.ndarray
    section: np.ndarray
    field: FieldSpec

    def __call__(self, v) -> np.ndarray:
        return self.field.reduce(self.field.array(v) @ self.matrix.T)

    def lift(self, v) -> np.ndarray:
        return self.field.reduce(self.field.array(v) @ self.section.T)


def quotient(A: AlgebraPresentation, I: Subspace, check: bool = True) -> tuple[AlgebraPresentation, Projection]:
    f, n = A.field, A.dim
    if check and not is_ideal(A, I):
        raise NotAnIdeal("subspace is not a two-sided ideal")
    keep = I.complement_indices()
    q = len(keep)
    P = f.zeros((q, n))
    for k, c in enumerate(keep):
        P[k, c] = 1
    for r, c in enumerate(I.pivots):
        P[:, c] = f.reduce(-I.basis[r, keep]) if f.p is not None else -I.basis[r, keep]
    S = f.zeros((n, q))
    for k, c in enumerate(keep):
        S[c, k] = 1
    sub = A.table[np.ix_(keep, keep)]
    table = f.reduce(np.tensordot(sub, P.T, 1))
    Q = AlgebraPresentation(f, tuple(A.labels[c] for c in keep), table, f.reduce(P @ A.unit))
    proj = Projection(P, S, f)
    if check:
        images = P.T  # row i = image of b_i
        lhs = f.reduce(np.tensordot(A.table, P.T, 1))
        rhs = Q.products(images, images)
        if not is_zero(f.reduce(lhs - rhs)):
            raise AlgebraError("quotient map is not multiplicative")
    return Q, proj


def center(A: AlgebraPresentation) -> Subspace:
    n, f = A.dim, A.field
    D = f.reduce(A.table - A.table.transpose(1, 0, 2))  # D[i, k] = b_i b_k - b_k b_i
    system = D.transpose(1, 2, 0).reshape(n * n, n)
    return Subspace.span(f, n, kernel_basis(system, f))


def subalgebra(A: AlgebraPresentation, U: Subspace, unit=None) -> tuple[AlgebraPresentation, np.ndarray]:
    """Presentation of a subspace closed under multiplication.

    ``unit`` defaults to the unit of A; it must lie in ``U`` and act as the
    identity on it.  Returns the presentation and the embedding (rows are the
    images of the new basis vectors in A).
    """
    f = A.field
    unit = A.unit if unit is None else f.array(unit)
    prods = A.products(U.basis, U.basis)
    if not U.contains(prods):
        raise AlgebraError("subspace is not closed under multiplication")
    if not U.contains(unit):
        raise AlgebraError("unit does not lie in the subspace")
    table = U.coordinates(prods)
    B = AlgebraPresentation(f, tuple(A.labels[c] for c in U.pivots), table, U.coordinates(unit))
    rep = validate(B)
    if not rep.unital:
        raise AlgebraError("proposed unit does not act as the identity on the subalgebra")
    return B, U.basis.copy()


# ---------------------------------------------------------------------------
# radical


def trace_vector(A: AlgebraPresentation) -> np.ndarray:
    """tau[t] = trace of left multiplication by b_t."""
    return A.field.reduce(np.einsum("tjj->t", A.table) if A.field.dtype is not object else
                          np.array([sum(A.table[t, j, j] for j in range(A.dim)) for t in range(A.dim)], dtype=object))


def trace_form(A: AlgebraPresentation) -> np.ndarray:
    """Gram matrix of (x, y) -> trace(L_{xy})."""
    tau = trace_vector(A)
    return A.field.reduce(np.tensordot(A.table, tau, axes=([2], [0])))


def _radical_depth(A: AlgebraPresentation) -> int:
    p = A.field.p
    if p is None or p > A.dim:
        return 0
    return int(math.floor(math.log(A.dim, p) + 1e-9))


def _lifted_trace_of_power(A: AlgebraPresentation, X: np.ndarray, i: int) -> np.ndarray:
    """(trace(L~^(p^i)) mod p^(i+1)) / p^i for each row of X, L~ the 0..p-1 lift of L_x."""
    p = A.field.p
    q = p ** (i + 1)
    Ls = A.table.transpose(0, 2, 1).astype(object if A.field.dtype is object else np.int64)
    out = []
    for start in range(0, X.shape[0], 256):
        chunk = X[start : start + 256]
        M = np.mod(np.tensordot(chunk, Ls, 1), p)
        result = None
        base = M
        e = p**i
        while e:
            if e & 1:
                result = base if result is None else np.mod(np.matmul(result, base), q)
            e >>= 1
            if e:
                base = np.mod(np.matmul(base, base), q)
        tr = np.mod(np.trace(result, axis1=1, axis2=2), q)
        if np.any(np.mod(tr, p**i) != 0):
            raise AlgebraError("lifted trace not divisible by p^i; radical iteration inconsistent")
        out.append(np.mod(tr // p**i, p))
    return np.concatenate(out).astype(A.field.dtype)


def radical(A: AlgebraPresentation, certify: bool = True) -> Subspace:
    """Jacobson radical.

    Over Q and over GF(p) with p > dim this is the kernel of the trace form.
    In small characteristic the trace condition is refined by the lifted
    traces of p^i-th powers, i = 1..floor(log_p dim) (Ronyai / Cohen,
    Ivanyos, Wales); each step keeps the x in the previous ideal with
    g_i(x y) = 0 for every basis vector y.
    """
    f, n = A.field, A.dim
    if n == 0:
        return Subspace.zero(f, 0)
    I = Subspace.full(f, n)
    full = f.eye(n)
    for i in range(_radical_depth(A) + 1):
        if I.dim == 0:
            break
        P = A.products(I.basis, full)  # (t, y, n): u_t * b_y
        if i == 0:
            G = f.reduce(np.tensordot(P, trace_vector(A), axes=([2], [0])))
        else:
            flat = P.reshape(-1, n)
            G = _lifted_trace_of_power(A, flat, i).reshape(I.dim, n)
        ker = kernel_basis(G.T, f)
        I = Subspace.span(f, n, f.reduce(ker @ I.basis)) if ker.shape[0] else Subspace.zero(f, n)
    if certify:
        if not is_ideal(A, I) or not is_nilpotent(A, I):
            raise AlgebraError("computed radical is not a nilpotent ideal")
        if _radical_depth(A) == 0 and I.dim < n:
            Q, _ = quotient(A, I, check=False)
            if rank(trace_form(Q), f) != Q.dim:
                raise AlgebraError("trace form degenerate on A/rad A")
    return I


def _nilpotent_mask(A: AlgebraPresentation, X: np.ndarray) -> np.ndarray:
    f, n = A.field, A.dim
    Ls = A.table.transpose(0, 2, 1)
    mask = []
    for start in range(0, X.shape[0], 4096):
        M = f.reduce(np.tensordot(X[start : start + 4096], Ls, 1))
        k = 1
        while k < n:
            M = f.reduce(np.matmul(M, M))
            k *= 2
        mask.append(np.count_nonzero(M.reshape(M.shape[0], -1), axis=1) == 0)
    return np.concatenate(mask)


def radical_oracle(
    A: AlgebraPresentation,
    max_dim: int = ORACLE_MAX_DIM,
    max_elements: int = ORACLE_MAX_ELEMENTS,
) -> Subspace:
    """Largest nilpotent two-sided ideal by exhaustive search.

    Every nilpotent element x is tried; x belongs to the radical exactly
    when the ideal it generates is nilpotent.  Independent of trace forms.
    """
    f, n = A.field, A.dim
    if not f.is_prime_field:
        raise OracleLimit("the radical oracle enumerates elements and needs a finite field")
    if n > max_dim or f.p**n > max_elements:
        raise OracleLimit(f"{f.p}^{n} elements exceed the oracle budget")
    R = Subspace.zero(f, n)
    if n == 0:
        return R
    X = f.array(np.array(list(itertools.product(range(f.p), repeat=n)), dtype=np.int64))
    X = X[np.count_nonzero(X, axis=1) > 0]
    cands = X[_nilpotent_mask(A, X)]
    while cands.shape[0]:
        x = cands[0]
        J = ideal_generated(A, x[None, :]) + R
        if is_nilpotent(A, J):
            R = J
            res = R.reduce(cands)
            cands = cands[np.count_nonzero(res, axis=1) > 0]
        else:
            cands = cands[1:]
    return R


@dataclass
class RadicalChain:
    powers: list[Subspace]
    loewy_length: int

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(P.dim for P in self.powers)


def radical_chain(A: AlgebraPresentation, rad: Subspace | None = None) -> RadicalChain:
    """Powers r, r^2, ..., r^s = 0; loewy_length s (1 for semisimple A)."""
    r = radical(A) if rad is None else rad
    chain = power_chain(A, r)
    if chain[-1].dim != 0:
        raise AlgebraError("radical is not nilpotent")
    return RadicalChain(chain, len(chain))


def is_semisimple(A: AlgebraPresentation) -> bool:
    return radical(A).dim == 0


# ---------------------------------------------------------------------------
# JSON


def algebra_to_json(A: AlgebraPresentation) -> dict:
    f = A.field
    mult = []
    for i in range(A.dim):
        for j in range(A.dim):
            row = A.table[i, j]
            if not is_zero(row):
                mult.append([i, j, [f.to_json(x) for x in row]])
    return {
        "field": f.descriptor(),
        "dim": A.dim,
        "basis": list(A.labels),
        "unit": [f.to_json(x) for x in A.unit],
        "mult": mult,
    }


def algebra_from_json(doc) -> AlgebraPresentation:
    if not isinstance(doc, dict):
        raise FormatError("algebra document must be a JSON object")
    for key in ("field", "dim", "basis", "unit"):
        if key not in doc:
            raise FormatError(f"missing field '{key}'")
    f = FieldSpec.from_descriptor(doc["field"])
    n = doc["dim"]
    if not isinstance(n, int) or n < 0:
        raise FormatError("field 'dim' must be a non-negative integer")
    labels = doc["basis"]
    if not isinstance(labels, list) or len(labels) != n:
        raise FormatError(f"field 'basis' must list {n} labels")
    unit = doc["unit"]
    if not isinstance(unit, list) or len(unit) != n:
        raise FormatError(f"field 'unit' must have {n} entries")
    table = f.zeros((n, n, n))
    for k, entry in enumerate(doc.get("mult", [])):
        if not (isinstance(entry, list) and len(entry) == 3):
            raise FormatError(f"mult[{k}] must be [i, j, [coords]]")
        i, j, coords = entry
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < n and 0 <= j < n):
            raise FormatError(f"mult[{k}] has bad indices")
        if not isinstance(coords, list) or len(coords) != n:
            raise FormatError(f"mult[{k}] must carry {n} coordinates")
        table[i, j] = [f.from_json(c) for c in coords]
    return AlgebraPresentation(f, tuple(str(s) for s in labels), table, f.array([f.from_json(c) for c in unit]))


def change_basis(A: AlgebraPresentation, P, labels: Sequence[str] | None = None) -> AlgebraPresentation:
    """Same algebra in the basis whose i-th vector has old coordinates P[i]."""
    f = A.field
    P = f.array(P)
    Pinv = inverse(P, f)
    prods = A.products(P, P)  # old coordinates of b'_i b'_j
    table = f.reduce(np.tensordot(prods, Pinv, 1))
    unit = f.reduce(A.unit @ Pinv)
    return AlgebraPresentation(f, tuple(labels) if labels else tuple(f"v{i}" for i in range(A.dim)), table, unit)
