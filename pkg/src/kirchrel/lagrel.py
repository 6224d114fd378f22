"""Symplectic layer: Lagrangian relations on doubled wires.

A wire carries a position ``q`` and a momentum ``p``. A relation ``m -> n``
with members ``((q_in, p_in), (q_out, p_out))`` is stored as its *state*,
an affine subspace of ``F^{2N}`` (``N = m + n``) with coordinates

    (q_in, q_out, p_in, -p_out)

i.e. all positions first, then all momenta, with output momenta negated.
Under this convention the identity is Lagrangian for the form
``J = [[0, 1], [-1, 0]]``, a relation and its bent-over state have literally
the same coordinates, and the power input of a member is ``q . s`` where
``s`` is the momentum block of the state vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import linrel
from .exactmat import (
    ExactMatrix,
    Permutation,
    ShapeError,
    block_matrix,
    inverse,
    permute_cols,
    rref,
    select_cols,
    transpose,
)
from .gfp import FieldScalar, Prime
from .linrel import AffineRelationError, AffineSubspace, BoundaryError, LinearRelation


class NotLagrangianError(ValueError):
    pass


def _state_to_linear_map(m: int, n: int, p: int) -> ExactMatrix:
    """Signed permutation taking state coordinates to ``(q_in, p_in, q_out, p_out)``."""
    N = m + n
    T = np.zeros((2 * N, 2 * N), dtype=np.int64)
    for k in range(m):
        T[k, k] = 1  # q_in
        T[m + k, N + k] = 1  # p_in
    for j in range(n):
        T[2 * m + j, m + j] = 1  # q_out
        T[2 * m + n + j, N + m + j] = p - 1  # p_out = -s_out
    return ExactMatrix._wrap(T, p)


@dataclass(frozen=True)
class DoubledRelation:
    dom: int
    cod: int
    state: AffineSubspace

    def __post_init__(self):
        if self.state.ambient_dim != 2 * (self.dom + self.cod):
            raise ShapeError(
                f"relation {self.dom} -> {self.cod} needs a state in dimension {2 * (self.dom + self.cod)}, "
                f"got {self.state.ambient_dim}"
            )

    @property
    def N(self) -> int:
        return self.dom + self.cod

    @property
    def p(self) -> int:
        return self.state.p

    @property
    def is_linear(self) -> bool:
        return self.state.is_linear

    @property
    def is_empty(self) -> bool:
        return not self.state.consistent

    @property
    def offset(self) -> tuple[int, ...]:
        return self.state.offset

    def linear_part(self) -> "DoubledRelation":
        return DoubledRelation(self.dom, self.cod, self.state.direction())

    def to_linear(self) -> LinearRelation:
        """The same relation as a plain relation ``2m -> 2n`` on ``(q, p)`` pairs."""
        T = _state_to_linear_map(self.dom, self.cod, self.p)
        return LinearRelation(2 * self.dom, 2 * self.cod, self.state.transform(T))

    @classmethod
    def from_linear(cls, R: LinearRelation) -> "DoubledRelation":
        if R.dom % 2 or R.cod % 2:
            raise ShapeError("a doubled relation needs even domain and codomain dimensions")
        m, n = R.dom // 2, R.cod // 2
        T = _state_to_linear_map(m, n, R.p)
        return cls(m, n, R.space.transform(transpose(T)))

    def contains(self, member: Sequence[int]) -> bool:
        """Membership of ``(q_in, p_in, q_out, p_out)`` given as one flat vector."""
        return self.to_linear().space.contains(member)

    def parity_check(self) -> ExactMatrix:
        if not self.is_linear:
            raise AffineRelationError("parity_check needs a linear relation")
        return self.state.constraints()[0]

    def generator(self) -> ExactMatrix:
        if not self.is_linear:
            raise AffineRelationError("generator needs a linear relation")
        return self.state.basis

    def with_boundary(self, m: int, n: int) -> "DoubledRelation":
        """Relabel the same state with a different input/output split."""
        if m + n != self.N:
            raise BoundaryError(f"cannot split {self.N} wires as {m} + {n}")
        return DoubledRelation(m, n, self.state)


def from_state_parity_check(H: ExactMatrix, m: int, n: int, rhs: Optional[Sequence[int]] = None) -> DoubledRelation:
    return DoubledRelation(m, n, AffineSubspace.kernel(H, rhs))


def from_state_generator(G: ExactMatrix, m: int, n: int, offset: Optional[Sequence[int]] = None) -> DoubledRelation:
    return DoubledRelation(m, n, AffineSubspace(G, offset))


def relation_to_state(R: DoubledRelation) -> DoubledRelation:
    return R.with_boundary(0, R.N)


def state_to_relation(S: DoubledRelation, m: int, n: int) -> DoubledRelation:
    if S.dom != 0:
        raise BoundaryError(f"expected a state, got {S.dom} -> {S.cod}")
    return S.with_boundary(m, n)


def identity(n: int, p: int) -> DoubledRelation:
    return DoubledRelation.from_linear(linrel.identity(2 * n, p))


def compose(R1: DoubledRelation, R2: DoubledRelation) -> DoubledRelation:
    """``R1`` then ``R2``."""
    return DoubledRelation.from_linear(linrel.compose(R1.to_linear(), R2.to_linear()))


def tensor(R1: DoubledRelation, R2: DoubledRelation) -> DoubledRelation:
    m1, n1, m2, n2 = R1.dom, R1.cod, R2.dom, R2.cod
    m, n = m1 + m2, n1 + n2
    N, N1 = m + n, m1 + n1
    images = (
        list(range(m1))
        + [m + j for j in range(n1)]
        + [N + k for k in range(m1)]
        + [N + m + j for j in range(n1)]
        + [m1 + k for k in range(m2)]
        + [m + n1 + j for j in range(n2)]
        + [N + m1 + k for k in range(m2)]
        + [N + m + n1 + j for j in range(n2)]
    )
    assert len(images) == 2 * N and 2 * N1 <= 2 * N
    return DoubledRelation(m, n, R1.state.direct_sum(R2.state).permute(Permutation(images)))


def converse(R: DoubledRelation) -> DoubledRelation:
    return DoubledRelation.from_linear(linrel.converse(R.to_linear()))


def symplectic_J(N: int, p: int) -> ExactMatrix:
    Z = ExactMatrix.zeros(N, N, p)
    I = ExactMatrix.identity(N, p)
    return block_matrix([[Z, I], [-I, Z]])


def symplectic_dual(U: AffineSubspace) -> AffineSubspace:
    """``{u' | <u', u> = 0 for all u in U}`` for the linear part of U."""
    if U.ambient_dim % 2:
        raise ShapeError("symplectic space must have even dimension")
    J = symplectic_J(U.ambient_dim // 2, U.p)
    return AffineSubspace.kernel(U.basis @ J)


def _isotropic(U: AffineSubspace) -> bool:
    G = U.basis
    return (G @ symplectic_J(U.ambient_dim // 2, U.p) @ transpose(G)).is_zero()


def is_lagrangian(R) -> bool:
    """Whether the (direction of the) state equals its own symplectic dual.

    Accepts a DoubledRelation or a bare AffineSubspace. An affine relation is
    judged by its direction space; the empty relation is not Lagrangian.
    """
    U = R.state if isinstance(R, DoubledRelation) else R
    if not U.consistent:
        return False
    return U.dim * 2 == U.ambient_dim and _isotropic(U)


def require_lagrangian(R: DoubledRelation):
    if not is_lagrangian(R):
        raise NotLagrangianError("relation is not Lagrangian")


@dataclass(frozen=True)
class LagrangianStandardForm:
    """Parity check ``[[Y, 0, 1, A^T], [-A, 1, 0, 0]] sigma_S``.

    Columns of the bracketed matrix are ``(q0, q1, p0, p1)`` in standard wire
    order; standard wire ``k`` is actual wire ``sigma(k)``. ``n_p`` wires sit
    in the ``q0/p0`` group and ``n_q`` in ``q1/p1``.
    """

    Y: ExactMatrix
    A: ExactMatrix
    sigma: Permutation
    n_p: int
    n_q: int

    @property
    def N(self) -> int:
        return self.n_p + self.n_q

    def symplectic_sigma(self) -> Permutation:
        N = self.N
        return Permutation(list(self.sigma.images) + [N + i for i in self.sigma.images])

    def standard_matrix(self) -> ExactMatrix:
        p = self.Y.p
        n_p, n_q = self.n_p, self.n_q
        Z = ExactMatrix.zeros
        I = ExactMatrix.identity
        top = [self.Y, Z(n_p, n_q, p), I(n_p, p), transpose(self.A)]
        bot = [-self.A, I(n_q, p), Z(n_q, n_p, p), Z(n_q, n_q, p)]
        return block_matrix([top, bot])

    def parity_check(self) -> ExactMatrix:
        return permute_cols(self.standard_matrix(), self.symplectic_sigma())


def lagrangian_standard_form(S: DoubledRelation, order: Optional[Sequence[int]] = None) -> LagrangianStandardForm:
    """Standard form of a linear Lagrangian state (or relation, via its state).

    ``order`` lists the wires in the order they should be offered as pivots;
    different orders give the different admissible ``sigma``.

    The momentum block of the parity check is row reduced first. Its pivot
    wires form the ``0`` group, the rest the ``1`` group. The rows with zero
    momentum part then have an invertible block on the ``1`` positions,
    which is reduced to the identity to read off ``A``; clearing the ``1``
    positions in the upper rows leaves ``Y``.
    """
    if not S.is_linear:
        raise AffineRelationError("standard form needs a linear relation; pass R.linear_part()")
    require_lagrangian(S)
    N, p = S.N, S.p
    order = list(range(N)) if order is None else [int(i) for i in order]
    wires = Permutation(order).inverse()  # wire order[k] -> position k
    state = S.state.permute(Permutation(list(wires.images) + [N + i for i in wires.images]))
    H = state.constraints()[0]
    Hq, Hp = select_cols(H, range(N)), select_cols(H, range(N, 2 * N))
    R, piv = rref(ExactMatrix._wrap(np.hstack([Hp.array, Hq.array]), p))
    piv_p = [c for c in piv if c < N]
    n_p, n_q = len(piv_p), N - len(piv_p)
    free = [c for c in range(N) if c not in set(piv_p)]
    perm = piv_p + free
    Rp = select_cols(ExactMatrix._wrap(R.array[:, :N], p), perm)
    Rq = select_cols(ExactMatrix._wrap(R.array[:, N:], p), perm)
    top_q, bot_q = Rq[:n_p, :], Rq[n_p:, :]
    T0, T1 = top_q[:, :n_p], top_q[:, n_p:]
    C0, C1 = bot_q[:, :n_p], bot_q[:, n_p:]
    A = -(inverse(C1) @ C0) if n_q else ExactMatrix.zeros(0, n_p, p)
    Y = T0 + T1 @ A if n_q else T0
    B = Rp[:n_p, :][:, n_p:]
    if B != transpose(A) or Y != transpose(Y):
        raise AssertionError("standard form invariants violated; input is not Lagrangian")
    sigma = Permutation(order[k] for k in perm)
    return LagrangianStandardForm(Y=_shaped(Y, n_p, n_p), A=_shaped(A, n_q, n_p), sigma=sigma, n_p=n_p, n_q=n_q)


def _shaped(M: ExactMatrix, r: int, c: int) -> ExactMatrix:
    return ExactMatrix._wrap(M.array.reshape(r, c), M.p)


def state_from_standard_form(sf: LagrangianStandardForm, m: int = 0, n: Optional[int] = None) -> DoubledRelation:
    n = sf.N - m if n is None else n
    return from_state_parity_check(sf.parity_check(), m, n)


def L_functor(R: LinearRelation) -> DoubledRelation:
    """Positions range over R, momenta over its orthogonal complement."""
    if not R.is_linear:
        raise AffineRelationError("L is defined on linear relations")
    m, n, p = R.dom, R.cod, R.p
    N = m + n
    perp = linrel.orthogonal_complement(R)
    G, Gp = R.space.basis.array, perp.space.basis.array
    rows = np.zeros((G.shape[0] + Gp.shape[0], 2 * N), dtype=np.int64)
    rows[: G.shape[0], :N] = G
    rows[G.shape[0] :, N : N + m] = Gp[:, :m]
    rows[G.shape[0] :, N + m :] = (-Gp[:, m:]) % p
    return DoubledRelation(m, n, AffineSubspace(ExactMatrix._wrap(rows, p)))


def power_input(R: DoubledRelation, member: Sequence[int]) -> FieldScalar:
    """``q_in . p_in - q_out . p_out`` for a member ``(q_in, p_in, q_out, p_out)``."""
    m, n, p = R.dom, R.cod, R.p
    if len(member) != 2 * R.N:
        raise ShapeError(f"member must have length {2 * R.N}")
    if not R.contains(member):
        raise ValueError("element is not a member of the relation")
    v = [int(x) % p for x in member]
    q_in, p_in, q_out, p_out = v[:m], v[m : 2 * m], v[2 * m : 2 * m + n], v[2 * m + n :]
    val = sum(a * b for a, b in zip(q_in, p_in)) - sum(a * b for a, b in zip(q_out, p_out))
    return FieldScalar(val, Prime(p))


def state_power(x: Sequence[int], p: int) -> int:
    """Power of a state vector: positions dotted with (state) momenta."""
    N = len(x) // 2
    return sum(int(a) * int(b) for a, b in zip(x[:N], x[N:])) % p


def _polar(x: Sequence[int], y: Sequence[int], p: int) -> int:
    N = len(x) // 2
    return sum(int(x[i]) * int(y[N + i]) + int(y[i]) * int(x[N + i]) for i in range(N)) % p


def is_lossless(R: DoubledRelation) -> bool:
    """Whether the power input vanishes on every member.

    Checks the quadratic form on basis vectors, the polar form on pairs of
    basis vectors and the offset; this determines it since ``p`` is odd.
    """
    U, p = R.state, R.p
    if not U.consistent:
        return True
    basis = [list(r) for r in U.basis.array]
    x0 = list(U.offset)
    if state_power(x0, p):
        return False
    for i, b in enumerate(basis):
        if state_power(b, p) or _polar(x0, b, p):
            return False
        for c in basis[i + 1 :]:
            if _polar(b, c, p):
                return False
    return True


def symplectic_permutation(sigma: Permutation, p: int) -> DoubledRelation:
    """Wire ``k`` of the input is carried to wire ``sigma(k)`` of the output, in both grades."""
    N = len(sigma)
    P = transpose(sigma.matrix(p))
    Z = ExactMatrix.zeros(N, N, p)
    return DoubledRelation.from_linear(linrel.iota(block_matrix([[P, Z], [Z, P]])))


def phase_space_map(C: ExactMatrix) -> DoubledRelation:
    """Graph of ``(q, p) -> C (q, p)`` as a relation ``N -> N``."""
    if C.rows != C.cols or C.rows % 2:
        raise ShapeError("phase-space map must be square of even size")
    return DoubledRelation.from_linear(linrel.iota(C))
