"""Kirchhoff relations: Lagrangian relations that conserve total current.

Criteria, for a Lagrangian state ``S`` on ``N`` wires:

* KCL: the state momenta of every member sum to zero.
* translation invariance: shifting all positions by a constant stays in ``S``.
* standard form: ``Y 1 = 0`` and ``A 1 = 1``.

These agree on Lagrangian states, and the tests cross-check them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .exactmat import ExactMatrix, matvec, transpose
from .lagrel import (
    DoubledRelation,
    LagrangianStandardForm,
    from_state_generator,
    is_lagrangian,
    is_lossless,
    lagrangian_standard_form,
)


class NotKirchhoffError(ValueError):
    pass


def epsilon(N: int) -> list[int]:
    """All positions 1, all momenta 0."""
    return [1] * N + [0] * N


def satisfies_kcl(R: DoubledRelation) -> bool:
    """Every member has state momenta summing to zero."""
    U, N, p = R.state, R.N, R.p
    if not U.consistent:
        return True
    if sum(U.offset[N:]) % p:
        return False
    return not (U.basis.array[:, N:].sum(axis=1) % p).any()


def is_translation_invariant(R: DoubledRelation) -> bool:
    if not R.state.consistent:
        return False
    return R.state.direction().contains(epsilon(R.N))


def is_kirchhoff(R: DoubledRelation) -> bool:
    """Lagrangian (up to translation) and satisfying KCL."""
    return is_lagrangian(R) and satisfies_kcl(R)


def standard_form_is_kirchhoff(sf: LagrangianStandardForm) -> bool:
    return matvec(sf.Y, [1] * sf.n_p) == (0,) * sf.n_p and matvec(sf.A, [1] * sf.n_p) == (1,) * sf.n_q


def _linear_standard_form(R: DoubledRelation, order=None) -> LagrangianStandardForm:
    if not is_kirchhoff(R):
        raise NotKirchhoffError("relation is not Kirchhoff")
    return lagrangian_standard_form(R.linear_part(), order)


def is_deterministic(R: DoubledRelation) -> bool:
    """Every row of ``A`` picks out exactly one wire with coefficient 1."""
    sf = _linear_standard_form(R)
    return _deterministic_A(sf.A)


def _deterministic_A(A: ExactMatrix) -> bool:
    a = A.array
    return all(np.count_nonzero(row) == 1 and int(row.max()) == 1 for row in a)


def position_partition(R: DoubledRelation) -> list[frozenset[int]]:
    """Classes of wires forced to share a position, for a deterministic relation.

    Classes are sorted by their smallest wire.
    """
    sf = _linear_standard_form(R)
    if not _deterministic_A(sf.A):
        raise NotKirchhoffError("relation is not deterministic")
    classes = [{sf.sigma(j)} for j in range(sf.n_p)]
    for i, row in enumerate(sf.A.array):
        j = int(np.flatnonzero(row)[0])
        classes[j].add(sf.sigma(sf.n_p + i))
    return sorted((frozenset(c) for c in classes), key=min)


def is_graph_state(R: DoubledRelation) -> bool:
    """``n_q = 0``: every wire's momentum is pinned down by the positions."""
    if not is_lagrangian(R):
        return False
    return lagrangian_standard_form(R.linear_part()).n_q == 0


@dataclass(frozen=True)
class GraphStateForm:
    """``s = -Y q + c`` in actual wire order; ``Y`` is symmetric."""

    Y: ExactMatrix
    offset: tuple[int, ...]


def graph_state_canonical(R: DoubledRelation, order: Optional[Sequence[int]] = None) -> GraphStateForm:
    """The admittance matrix of a graph state, with sigma absorbed.

    The result does not depend on ``order``. For an affine state the offset
    ``c`` is the momentum at ``q = 0``.
    """
    sf = lagrangian_standard_form(R.linear_part(), order)
    if sf.n_q:
        raise NotKirchhoffError("not a graph state: n_q = %d" % sf.n_q)
    N, p = sf.N, sf.Y.p
    Y = np.zeros((N, N), dtype=np.int64)
    s = sf.sigma.images
    Ys = sf.Y.array
    for k in range(N):
        for l in range(N):
            Y[s[k], s[l]] = Ys[k, l]
    Ym = ExactMatrix._wrap(Y, p)
    off = R.state.offset
    # offset is already zero on pivots; recover the q = 0 member
    c = tuple(int(x) for x in (np.asarray(off[N:], dtype=np.int64) + matvec(Ym, off[:N])) % p)
    return GraphStateForm(Y=Ym, offset=c)


def relation_from_admittance(Y: ExactMatrix, offset: Optional[Sequence[int]] = None) -> DoubledRelation:
    """The graph state ``{(q, -Y q + c)}``."""
    if Y.rows != Y.cols:
        raise ValueError("admittance matrix must be square")
    if Y != transpose(Y):
        raise ValueError("admittance matrix must be symmetric")
    N, p = Y.rows, Y.p
    G = np.hstack([np.eye(N, dtype=np.int64), (-Y.array.T) % p]).reshape(N, 2 * N)
    off = None if offset is None else [0] * N + [int(c) for c in offset]
    return from_state_generator(ExactMatrix._wrap(G, p), 0, N, off)


def is_momentum_grouped(R: DoubledRelation) -> bool:
    """Deterministic and lossless; the relation of a network of bare wires."""
    return is_kirchhoff(R) and is_deterministic(R) and is_lossless(R)


@dataclass(frozen=True)
class KirchhoffClassification:
    kirchhoff: bool
    lagrangian: bool
    deterministic: Optional[bool]
    lossless: bool
    graph_state: bool
    partition: Optional[list[frozenset[int]]] = None
    admittance: Optional[ExactMatrix] = None

    def summary(self) -> str:
        def b(x):
            return "n/a" if x is None else str(bool(x)).lower()

        return (
            f"kirchhoff={b(self.kirchhoff)} deterministic={b(self.deterministic)} "
            f"lossless={b(self.lossless)} graph_state={b(self.graph_state)}"
        )


def classify(R: DoubledRelation) -> KirchhoffClassification:
    lag = is_lagrangian(R)
    kir = lag and satisfies_kcl(R)
    det = is_deterministic(R) if kir else None
    graph = is_graph_state(R) if lag else False
    return KirchhoffClassification(
        kirchhoff=kir,
        lagrangian=lag,
        deterministic=det,
        lossless=is_lossless(R),
        graph_state=graph,
        partition=position_partition(R) if det else None,
        admittance=graph_state_canonical(R).Y if graph else None,
    )
