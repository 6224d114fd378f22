"""Linear and affine relations over F_p.

A relation ``m -> n`` is an affine subspace of ``F^m + F^n`` whose
coordinates are ordered domain first, then codomain. Every relation is held
in one canonical form (RREF direction basis plus reduced offset), so two
relations are equal exactly when their stored data are equal. Parity-check
and generator matrices are derived from that form on demand.

``compose(r1, r2)`` is diagrammatic: ``r1`` runs first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .exactmat import (
    ExactMatrix,
    Permutation,
    ShapeError,
    kernel_basis,
    matvec,
    permute_cols,
    rref,
    select_cols,
    solve,
    transpose,
)
from .gfp import ModulusError, check_modulus


class AffineRelationError(ValueError):
    """An operation that needs a linear relation was given an affine one."""


class BoundaryError(ValueError):
    pass


class AffineSubspace:
    """``offset + rowspace(basis)`` inside ``F_p^N``, or the empty set.

    The basis is in RREF without zero rows and the offset is zero in every
    pivot column, which makes the representation unique.
    """

    __slots__ = ("basis", "offset", "consistent")

    def __init__(self, basis: ExactMatrix, offset: Optional[Sequence[int]] = None, consistent: bool = True):
        p, n = basis.p, basis.cols
        R, piv = rref(basis)
        R = ExactMatrix._wrap(R.array[: len(piv)], p)
        if not consistent:
            R = ExactMatrix.zeros(0, n, p)
            off = np.zeros(n, dtype=np.int64)
        else:
            off = np.zeros(n, dtype=np.int64) if offset is None else np.asarray([int(x) % p for x in offset], dtype=np.int64)
            if off.shape != (n,):
                raise ShapeError(f"offset has length {off.shape[0]}, ambient dimension is {n}")
            for i, c in enumerate(piv):
                if off[c]:
                    off = (off - off[c] * R.array[i]) % p
        self.basis = R
        self.offset = tuple(int(x) for x in off)
        self.consistent = bool(consistent)

    @classmethod
    def span(cls, rows: ExactMatrix) -> "AffineSubspace":
        return cls(rows)

    @classmethod
    def kernel(cls, H: ExactMatrix, rhs: Optional[Sequence[int]] = None) -> "AffineSubspace":
        """Solutions of ``H x = rhs`` (``rhs`` defaults to zero)."""
        if rhs is None:
            return cls(kernel_basis(H))
        sol = solve(H, rhs)
        if sol is None:
            return cls.empty(H.cols, H.p)
        x0, K = sol
        return cls(K, x0)

    @classmethod
    def empty(cls, n: int, p: int) -> "AffineSubspace":
        return cls(ExactMatrix.zeros(0, n, p), consistent=False)

    @classmethod
    def zero(cls, n: int, p: int) -> "AffineSubspace":
        return cls(ExactMatrix.zeros(0, n, p))

    @classmethod
    def full(cls, n: int, p: int) -> "AffineSubspace":
        return cls(ExactMatrix.identity(n, p))

    @property
    def p(self) -> int:
        return self.basis.p

    @property
    def ambient_dim(self) -> int:
        return self.basis.cols

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def is_linear(self) -> bool:
        return self.consistent and not any(self.offset)

    def direction(self) -> "AffineSubspace":
        if not self.consistent:
            return self
        return AffineSubspace(self.basis)

    def constraints(self) -> tuple[ExactMatrix, tuple[int, ...]]:
        """``(H, c)`` with this set equal to ``{x : H x = c}``; H is in RREF."""
        n, p = self.ambient_dim, self.p
        if not self.consistent:
            H = ExactMatrix.zeros(1, n, p)
            return H, (1,)
        H, piv = rref(kernel_basis(self.basis))
        H = ExactMatrix._wrap(H.array[: len(piv)], p)
        return H, matvec(H, self.offset)

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.ambient_dim:
            raise ShapeError(f"vector length {len(v)} != ambient dimension {self.ambient_dim}")
        if not self.consistent:
            return False
        H, c = self.constraints()
        return matvec(H, v) == tuple(c)

    def contains_subspace(self, other: "AffineSubspace") -> bool:
        if not other.consistent:
            return True
        if not self.consistent:
            return False
        H, c = self.constraints()
        if matvec(H, other.offset) != tuple(c):
            return False
        return (H @ transpose(other.basis)).is_zero()

    def project(self, cols: Sequence[int]) -> "AffineSubspace":
        """Image under the coordinate projection onto ``cols`` (in that order)."""
        if not self.consistent:
            return AffineSubspace.empty(len(cols), self.p)
        return AffineSubspace(select_cols(self.basis, cols), [self.offset[c] for c in cols])

    def permute(self, sigma: Permutation) -> "AffineSubspace":
        """Move coordinate ``k`` to position ``sigma(k)``."""
        if not self.consistent:
            return self
        off = [0] * self.ambient_dim
        for k, v in enumerate(self.offset):
            off[sigma(k)] = v
        return AffineSubspace(permute_cols(self.basis, sigma), off)

    def transform(self, T: ExactMatrix) -> "AffineSubspace":
        """Image under the invertible linear map ``x -> T x``."""
        if not self.consistent:
            return self
        return AffineSubspace(self.basis @ transpose(T), matvec(T, self.offset))

    def direct_sum(self, other: "AffineSubspace") -> "AffineSubspace":
        _same_field(self.p, other.p)
        n1, n2 = self.ambient_dim, other.ambient_dim
        if not (self.consistent and other.consistent):
            return AffineSubspace.empty(n1 + n2, self.p)
        B = np.zeros((self.dim + other.dim, n1 + n2), dtype=np.int64)
        B[: self.dim, :n1] = self.basis.array
        B[self.dim :, n1:] = other.basis.array
        return AffineSubspace(ExactMatrix._wrap(B, self.p), self.offset + other.offset)

    def _key(self):
        return (self.p, self.ambient_dim, self.consistent, self.offset, self.basis.array.tobytes(), self.dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineSubspace):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if not self.consistent:
            return f"AffineSubspace(empty, N={self.ambient_dim}, p={self.p})"
        return f"AffineSubspace(basis={self.basis.tolist()}, offset={list(self.offset)}, p={self.p})"


def _same_field(p: int, q: int):
    if p != q:
        raise ModulusError(f"modulus mismatch: {p} vs {q}")


@dataclass(frozen=True)
class LinearRelation:
    """A (possibly affine, possibly empty) relation ``dom -> cod``."""

    dom: int
    cod: int
    space: AffineSubspace

    def __post_init__(self):
        if self.space.ambient_dim != self.dom + self.cod:
            raise ShapeError(
                f"relation {self.dom} -> {self.cod} needs ambient dimension {self.dom + self.cod}, "
                f"got {self.space.ambient_dim}"
            )

    @property
    def p(self) -> int:
        return self.space.p

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def offset(self) -> tuple[int, ...]:
        return self.space.offset

    @property
    def is_linear(self) -> bool:
        return self.space.is_linear

    @property
    def is_empty(self) -> bool:
        return not self.space.consistent

    def contains(self, x: Sequence[int], y: Sequence[int]) -> bool:
        return self.space.contains(list(x) + list(y))

    def _require_linear(self, what: str):
        if not self.is_linear:
            raise AffineRelationError(
                f"{what} needs a linear relation; use .space.constraints() / .space.basis and .offset for affine ones"
            )

    def generator(self) -> ExactMatrix:
        """Canonical generator matrix (RREF rows spanning the relation)."""
        self._require_linear("generator")
        return self.space.basis

    def parity_check(self) -> ExactMatrix:
        """Canonical parity-check matrix (RREF rows whose kernel is the relation)."""
        self._require_linear("parity_check")
        return self.space.constraints()[0]


def _check_shape(M: ExactMatrix, m: int, n: int):
    if M.cols != m + n:
        raise ShapeError(f"matrix has {M.cols} columns, relation {m} -> {n} needs {m + n}")


def from_generator(G: ExactMatrix, m: int, n: int, offset: Optional[Sequence[int]] = None) -> LinearRelation:
    _check_shape(G, m, n)
    return LinearRelation(m, n, AffineSubspace(G, offset))


def from_parity_check(H: ExactMatrix, m: int, n: int, rhs: Optional[Sequence[int]] = None) -> LinearRelation:
    _check_shape(H, m, n)
    return LinearRelation(m, n, AffineSubspace.kernel(H, rhs))


def parity_check(R: LinearRelation) -> ExactMatrix:
    return R.parity_check()


def generator(R: LinearRelation) -> ExactMatrix:
    return R.generator()


def identity(n: int, p: int) -> LinearRelation:
    return iota(ExactMatrix.identity(n, p))


def iota(M: ExactMatrix) -> LinearRelation:
    """Graph ``{(x, M x)}`` of a matrix, as a relation ``cols -> rows``."""
    m, n = M.cols, M.rows
    G = np.hstack([np.eye(m, dtype=np.int64), M.array.T]).reshape(m, m + n)
    return LinearRelation(m, n, AffineSubspace(ExactMatrix._wrap(G, M.p)))


def empty(m: int, n: int, p: int) -> LinearRelation:
    return LinearRelation(m, n, AffineSubspace.empty(m + n, p))


def compose(R1: LinearRelation, R2: LinearRelation) -> LinearRelation:
    """``{(x, z) | exists y. (x, y) in R1 and (y, z) in R2}``.

    Elements of R1 x R2 are parametrised by coefficient vectors ``(t1, t2)``
    over the two generator matrices. The pullback is the set of
    parameters on which the two middle projections agree; it is pushed
    forward to the outer coordinates and canonicalised.
    """
    _same_field(R1.p, R2.p)
    if R1.cod != R2.dom:
        raise BoundaryError(f"cannot compose {R1.dom}->{R1.cod} with {R2.dom}->{R2.cod}")
    m, k, n, p = R1.dom, R1.cod, R2.cod, R1.p
    if R1.is_empty or R2.is_empty:
        return empty(m, n, p)
    G1, G2 = R1.space.basis.array, R2.space.basis.array
    d1, d2 = G1.shape[0], G2.shape[0]
    # middle-agreement map on parameters: t1 . G1_mid - t2 . G2_mid
    D = np.vstack([G1[:, m:], (-G2[:, :k]) % p]).reshape(d1 + d2, k)
    mid_gap = [(b - a) % p for a, b in zip(R1.offset[m:], R2.offset[:k])]
    sol = solve(ExactMatrix._wrap(D.T, p), mid_gap)
    if sol is None:
        return empty(m, n, p)
    t0, P = sol
    # outer map on parameters: t1 -> x-part of t1.G1, t2 -> z-part of t2.G2
    outer = np.zeros((d1 + d2, m + n), dtype=np.int64)
    outer[:d1, :m] = G1[:, :m]
    outer[d1:, m:] = G2[:, k:]
    outer_m = ExactMatrix._wrap(outer, p)
    base = list(R1.offset[:m]) + list(R2.offset[k:])
    shift = matvec(transpose(outer_m), t0)
    off = [(a + b) % p for a, b in zip(base, shift)]
    return LinearRelation(m, n, AffineSubspace(P @ outer_m, off))


def tensor(R1: LinearRelation, R2: LinearRelation) -> LinearRelation:
    """Direct sum: domains concatenated, codomains concatenated."""
    _same_field(R1.p, R2.p)
    m1, n1, m2, n2 = R1.dom, R1.cod, R2.dom, R2.cod
    s = R1.space.direct_sum(R2.space)
    # (x1, y1, x2, y2) -> (x1, x2, y1, y2)
    order = list(range(m1)) + list(range(m1 + n1, m1 + n1 + m2)) + list(range(m1, m1 + n1)) + list(
        range(m1 + n1 + m2, m1 + n1 + m2 + n2)
    )
    return LinearRelation(m1 + m2, n1 + n2, s.permute(Permutation(order).inverse()))


def converse(R: LinearRelation) -> LinearRelation:
    m, n = R.dom, R.cod
    # (x, y) -> (y, x): coordinate k of x goes to n + k, coordinate j of y to j
    images = [n + k for k in range(m)] + list(range(n))
    return LinearRelation(n, m, R.space.permute(Permutation(images)))


def orthogonal_complement(R: LinearRelation) -> LinearRelation:
    """``{(x', y') | x.x' - y.y' = 0 for all (x, y) in R}``."""
    R._require_linear("orthogonal_complement")
    m, n, p = R.dom, R.cod, R.p
    D = np.diag([1] * m + [p - 1] * n).astype(np.int64).reshape(m + n, m + n)
    GD = R.space.basis @ ExactMatrix._wrap(D, p)
    return LinearRelation(m, n, AffineSubspace.kernel(GD))


def is_subrelation(R1: LinearRelation, R2: LinearRelation) -> bool:
    """R1 contained in R2; for linear relations this is ``H2 G1^T = 0``."""
    _same_field(R1.p, R2.p)
    if (R1.dom, R1.cod) != (R2.dom, R2.cod):
        raise BoundaryError("subrelation test needs equal boundaries")
    if R1.is_linear and R2.is_linear:
        return (R2.parity_check() @ transpose(R1.generator())).is_zero()
    return R2.space.contains_subspace(R1.space)


@dataclass(frozen=True)
class StandardForm:
    """``H = (1 | A) sigma`` and ``G = (-A^T | 1) sigma``."""

    A: ExactMatrix
    sigma: Permutation
    k: int

    def parity_check(self) -> ExactMatrix:
        r = self.A.rows
        H = np.hstack([np.eye(r, dtype=np.int64), self.A.array]).reshape(r, r + self.k)
        return permute_cols(ExactMatrix._wrap(H, self.A.p), self.sigma)

    def generator(self) -> ExactMatrix:
        r, p = self.A.rows, self.A.p
        G = np.hstack([(-self.A.array.T) % p, np.eye(self.k, dtype=np.int64)]).reshape(self.k, r + self.k)
        return permute_cols(ExactMatrix._wrap(G, p), self.sigma)


def standard_form(R: LinearRelation) -> StandardForm:
    """Standard form with sigma moving the RREF pivot columns of H to the front."""
    R._require_linear("standard_form")
    H = R.parity_check()
    N = R.dom + R.cod
    _, piv = rref(H)
    free = [c for c in range(N) if c not in set(piv)]
    sigma = Permutation(list(piv) + free)
    A = select_cols(H, free)
    return StandardForm(A=A, sigma=sigma, k=len(free))


def cup(n: int, p: int) -> LinearRelation:
    """``{((x, x), ()) | x in F^n}`` as a relation ``2n -> 0``."""
    return converse(cap(n, p))


def cap(n: int, p: int) -> LinearRelation:
    """``{((), (x, x)) | x in F^n}`` as a relation ``0 -> 2n``."""
    I = np.eye(n, dtype=np.int64)
    return LinearRelation(0, 2 * n, AffineSubspace(ExactMatrix._wrap(np.hstack([I, I]).reshape(n, 2 * n), check_modulus(p))))


def bend(R: LinearRelation) -> LinearRelation:
    """Turn ``R : m -> n`` into the state ``0 -> m + n`` by capping its inputs."""
    m = R.dom
    return compose(cap(m, R.p), tensor(identity(m, R.p), R))


def unbend(S: LinearRelation, m: int, n: int) -> LinearRelation:
    """Inverse of :func:`bend`: the state ``0 -> m + n`` as a relation ``m -> n``."""
    if S.dom != 0 or S.cod != m + n:
        raise BoundaryError(f"expected a state 0 -> {m + n}, got {S.dom} -> {S.cod}")
    p = S.p
    lifted = tensor(identity(m, p), S)
    return compose(lifted, tensor(cup(m, p), identity(n, p)))


def is_quasi_stochastic(R: LinearRelation) -> bool:
    """Whether R relates the all-ones input to the all-ones output."""
    return R.contains([1] * R.dom, [1] * R.cod)


def matrix_is_quasi_stochastic(A: ExactMatrix) -> bool:
    """``A 1 = 1``: every row sums to one."""
    return matvec(A, [1] * A.cols) == (1,) * A.rows
