"""Independent oracles and random corpora for the test suite.

Everything here works on explicit vector sets or plain Python ints so it
does not share code paths with the library's elimination routines.
"""

from __future__ import annotations

import itertools
import random

from kirchrel.exactmat import ExactMatrix
from kirchrel.lagrel import DoubledRelation
from kirchrel.linrel import AffineSubspace, LinearRelation


def span_set(rows, p, offset=None, n=None):
    """All vectors ``offset + sum c_i rows_i`` by enumeration."""
    rows = [tuple(int(x) % p for x in r) for r in rows]
    n = len(rows[0]) if rows else (len(offset) if offset is not None else n)
    off = tuple(int(x) % p for x in offset) if offset is not None else (0,) * n
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = list(off)
        for c, r in zip(coeffs, rows):
            if c:
                for i, x in enumerate(r):
                    v[i] = (v[i] + c * x) % p
        out.add(tuple(v))
    return out


def members(space: AffineSubspace) -> set:
    if not space.consistent:
        return set()
    return span_set(space.basis.tolist(), space.p, space.offset, space.ambient_dim)


def relation_members(R: LinearRelation) -> set:
    return members(R.space)


def brute_compose(R1: LinearRelation, R2: LinearRelation) -> set:
    m, k = R1.dom, R1.cod
    by_mid: dict = {}
    for v in relation_members(R2):
        by_mid.setdefault(v[:k], []).append(v[k:])
    return {x[:m] + z for x in relation_members(R1) for z in by_mid.get(x[m:], [])}


def omega(x, y, p):
    N = len(x) // 2
    return (sum(x[i] * y[N + i] - x[N + i] * y[i] for i in range(N))) % p


def all_subspaces(n, p):
    """Every linear subspace of F_p^n as a frozenset of vectors, by closure."""
    vecs = list(itertools.product(range(p), repeat=n))
    seen = {frozenset([(0,) * n])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for S in frontier:
            for v in vecs:
                if v in S:
                    continue
                T = frozenset(
                    tuple((a + c * b) % p for a, b in zip(s, v)) for s in S for c in range(p)
                )
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return seen


def all_lagrangian_sets(N, p):
    out = []
    for S in all_subspaces(2 * N, p):
        if len(S) != p**N:
            continue
        if all(omega(x, y, p) == 0 for x in S for y in S):
            out.append(S)
    return out


def set_to_space(S, p) -> AffineSubspace:
    """Pick a basis for a vector set greedily (no elimination)."""
    basis, span = [], {tuple([0] * len(next(iter(S))))}
    for v in sorted(S):
        if v not in span:
            basis.append(v)
            span = span_set(basis, p)
    n = len(next(iter(S)))
    return AffineSubspace(ExactMatrix.from_rows(basis, p, cols=n) if basis else ExactMatrix.zeros(0, n, p))


def state_kcl(x, p):
    N = len(x) // 2
    return sum(x[N:]) % p == 0


def state_power(x, p):
    N = len(x) // 2
    return sum(x[i] * x[N + i] for i in range(N)) % p


def _rank(rows, p):
    return len(rows) and ExactMatrix.from_rows(rows, p).rank()


def rand_lagrangian(N, p, rng, kirchhoff=False) -> AffineSubspace:
    """Random Lagrangian subspace by greedy isotropic extension."""
    rows = [[1] * N + [0] * N] if kirchhoff and N else []
    while len(rows) < N:
        v = [rng.randrange(p) for _ in range(2 * N)]
        if all(omega(v, r, p) == 0 for r in rows) and omega(v, v, p) == 0 and _rank(rows + [v], p) == len(rows) + 1:
            rows.append(v)
    return AffineSubspace(ExactMatrix.from_rows(rows, p, cols=2 * N) if rows else ExactMatrix.zeros(0, 0, p))


def rand_state(N, p, rng, kirchhoff=False, boundary=True) -> DoubledRelation:
    S = rand_lagrangian(N, p, rng, kirchhoff)
    m = rng.randint(0, N) if boundary else 0
    return DoubledRelation(m, N - m, S)


def rand_admittance(n, p, rng, density=0.7) -> ExactMatrix:
    Y = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                y = rng.randrange(p)
                Y[i][j] = Y[j][i] = -y
                Y[i][i] += y
                Y[j][j] += y
    return ExactMatrix.from_rows(Y, p, cols=n)


def rand_affine_kirchhoff(N, p, rng) -> DoubledRelation:
    S = rand_state(N, p, rng, kirchhoff=True)
    off = [rng.randrange(p) for _ in range(2 * N)]
    off[-1] = (off[-1] - sum(off[N:])) % p
    return DoubledRelation(S.dom, S.cod, AffineSubspace(S.state.basis, off))


def rand_relation(m, n, p, rng, affine=False) -> LinearRelation:
    k = rng.randint(0, m + n)
    G = ExactMatrix.from_rows([[rng.randrange(p) for _ in range(m + n)] for _ in range(k)], p, cols=m + n)
    off = [rng.randrange(p) for _ in range(m + n)] if affine else None
    return LinearRelation(m, n, AffineSubspace(G, off))


def rand_matrix(r, c, p, rng) -> ExactMatrix:
    return ExactMatrix.from_rows([[rng.randrange(p) for _ in range(c)] for _ in range(r)], p, cols=c)


def seeded(seed):
    return random.Random(seed)


# acceptance bookkeeping: criterion number -> (passed, description, seconds)
ACCEPTANCE_RESULTS: dict = {}
