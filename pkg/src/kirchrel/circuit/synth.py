"""Netlist synthesis: resistor meshes, divider layers and sources."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from ..exactmat import ExactMatrix, transpose
from ..gfp import inv_mod
from ..kirrel import (
    GraphStateForm,
    NotKirchhoffError,
    is_kirchhoff,
)
from ..lagrel import DoubledRelation, lagrangian_standard_form, phase_space_map
from ..linrel import AffineRelationError
from .generators import (
    CurrentSource,
    DividerIn,
    Resistor,
    SpiderComonoid,
    SpiderMonoid,
    SpiderUnit,
    VoltageSource,
)
from .netlist import Netlist, Port


def admittance_block(y: int, i: int, j: int, n: int, p: int) -> ExactMatrix:
    """``Y_ij(y)``: ``y`` on the diagonal at i and j, ``-y`` off it."""
    if i == j:
        raise ValueError("a resistor cannot connect a node to itself")
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"node indices must be below {n}")
    Y = np.zeros((n, n), dtype=np.int64)
    Y[i, i] = Y[j, j] = y % p
    Y[i, j] = Y[j, i] = (-y) % p
    return ExactMatrix._wrap(Y, p)


def c_matrix(y: int, i: int, j: int, n: int, p: int) -> ExactMatrix:
    """``[[1, 0], [Y_ij(y), 1]]`` acting on ``(q, p)``."""
    Y = admittance_block(y, i, j, n, p).array
    C = np.eye(2 * n, dtype=np.int64)
    C[n:, :n] = Y
    return ExactMatrix._wrap(C, p)


def horizontal_resistor(y: int, i: int, j: int, n: int, p: int) -> DoubledRelation:
    """A resistor ``y`` bridging through-wires i and j, as a relation ``n -> n``."""
    return phase_space_map(c_matrix(y, i, j, n, p))


def horizontal_resistor_netlist(y: int, p: int) -> Netlist:
    """Two through-wires joined by a resistor from wire 0 to wire 1."""
    net = Netlist(p)
    a = net.add(SpiderComonoid())
    r = net.add(Resistor(y))
    b = net.add(SpiderMonoid())
    net.connect(Port(a, 2), Port(r, 0))
    net.connect(Port(r, 1), Port(b, 1))
    net.inputs = [Port(a, 0), Port(b, 0)]
    net.outputs = [Port(a, 1), Port(b, 2)]
    return net


@dataclass
class MeshSpec:
    """Conductances ``y_ij`` on the edges of a loop-free graph on ``node_count`` nodes."""

    node_count: int
    p: int
    conductances: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), y in self.conductances.items():
            if i == j:
                raise ValueError("mesh has no self-loops")
            key = (min(i, j), max(i, j))
            if key in clean and clean[key] != y % self.p:
                raise ValueError(f"conflicting conductances on edge {key}")
            if y % self.p:
                clean[key] = y % self.p
        self.conductances = clean

    @classmethod
    def from_admittance(cls, Y: ExactMatrix) -> "MeshSpec":
        _check_admittance(Y)
        n, p = Y.rows, Y.p
        a = Y.array
        return cls(n, p, {(i, j): int(-a[i, j]) % p for i in range(n) for j in range(i + 1, n) if a[i, j]})

    def admittance(self) -> ExactMatrix:
        Y = np.zeros((self.node_count, self.node_count), dtype=np.int64)
        for (i, j), y in self.conductances.items():
            Y[i, i] += y
            Y[j, j] += y
            Y[i, j] -= y
            Y[j, i] -= y
        return ExactMatrix._wrap(Y % self.p, self.p)

    def layer_product(self) -> ExactMatrix:
        """Product of the ``C_ij`` layers, one per edge."""
        C = ExactMatrix.identity(2 * self.node_count, self.p)
        for (i, j), y in sorted(self.conductances.items()):
            C = C @ c_matrix(y, i, j, self.node_count, self.p)
        return C


def _check_admittance(Y: ExactMatrix):
    if Y.rows != Y.cols or Y != transpose(Y):
        raise ValueError("admittance matrix must be square and symmetric")
    if (Y.array.sum(axis=1) % Y.p).any():
        raise ValueError("admittance matrix rows must sum to zero")


def _spider_legs(net: Netlist, legs: int) -> list[Port]:
    """A unit fanned out by comonoids into ``legs`` output ports."""
    u = net.add(SpiderUnit())
    open_ports = [Port(u, 0)]
    while len(open_ports) < legs:
        c = net.add(SpiderComonoid())
        net.connect(open_ports.pop(), Port(c, 0))
        open_ports += [Port(c, 1), Port(c, 2)]
    return open_ports


def _mesh(net: Netlist, spec: MeshSpec, extra: list[int]) -> list[list[Port]]:
    """Lay down the mesh; return each node's free legs (``1 + extra[i]`` of them)."""
    deg = [0] * spec.node_count
    for i, j in spec.conductances:
        deg[i] += 1
        deg[j] += 1
    legs = [_spider_legs(net, deg[i] + 1 + extra[i]) for i in range(spec.node_count)]
    for (i, j), y in sorted(spec.conductances.items()):
        r = net.add(Resistor(y))
        net.connect(legs[i].pop(), Port(r, 0))
        net.connect(legs[j].pop(), Port(r, 1))
    return legs


def mesh_netlist(spec: MeshSpec) -> Netlist:
    net = Netlist(spec.p)
    legs = _mesh(net, spec, [0] * spec.node_count)
    net.outputs = [l[0] for l in legs]
    return net


def synth_graph_state(Y: Union[ExactMatrix, GraphStateForm]) -> Netlist:
    """A resistor mesh whose evaluation is the graph state ``s = -Y q``."""
    if isinstance(Y, GraphStateForm):
        Y = Y.Y
    return mesh_netlist(MeshSpec.from_admittance(Y))


def _divider_tree(net: Netlist, items: list[tuple[Port, int]], p: int) -> Port:
    """Merge weighted ports into one port carrying the weighted sum of positions.

    Weights must be nonzero and sum to 1. Pairs are merged greedily: the
    first pair in order whose weights do not cancel. Such a pair always
    exists when p is odd.
    """
    items = list(items)
    while len(items) > 1:
        for a in range(len(items)):
            for b in range(a + 1, len(items)):
                sa, sb = items[a][1], items[b][1]
                if (sa + sb) % p:
                    break
            else:
                continue
            break
        else:
            raise AssertionError("no mergeable pair")
        (pa, sa), (pb, sb) = items[a], items[b]
        tot = (sa + sb) % p
        w = sb * inv_mod(tot, p) % p
        d = net.add(DividerIn(w))
        net.connect(pa, Port(d, 0))
        net.connect(pb, Port(d, 1))
        del items[b], items[a]
        items.insert(0, (Port(d, 2), tot))
    return items[0][0]


def synth_kirchhoff(S: DoubledRelation) -> Netlist:
    """Netlist for a linear Kirchhoff relation: resistor mesh, then spiders and dividers.

    The mesh realizes the graph state ``Y`` on the pivot wires. Each pivot
    wire is then fanned out and the remaining wires are built as weighted
    combinations given by the rows of ``A``.
    """
    if not S.is_linear:
        raise AffineRelationError("synth_kirchhoff needs a linear relation; use synth_affine")
    if not is_kirchhoff(S):
        raise NotKirchhoffError("relation is not Kirchhoff")
    p, N = S.p, S.N
    net = Netlist(p)
    if N == 0:
        return net
    sf = lagrangian_standard_form(S)
    A = sf.A.array
    spec = MeshSpec.from_admittance(sf.Y)
    uses = [int(np.count_nonzero(A[:, j])) for j in range(sf.n_p)]
    legs = _mesh(net, spec, uses)
    std_ports = [legs[j].pop() for j in range(sf.n_p)]
    for i in range(sf.n_q):
        items = [(legs[j].pop(), int(A[i, j])) for j in range(sf.n_p) if A[i, j]]
        std_ports.append(_divider_tree(net, items, p))
    actual = [None] * N
    for k, port in enumerate(std_ports):
        actual[sf.sigma(k)] = port
    net.inputs = actual[: S.dom]
    net.outputs = actual[S.dom :]
    return net


def synth_affine(S: DoubledRelation) -> Netlist:
    """Linear part by :func:`synth_kirchhoff`, then per-wire voltage and current sources."""
    if S.is_empty or not is_kirchhoff(S):
        raise NotKirchhoffError("relation is not affine Kirchhoff (offset momenta must sum to zero)")
    net = synth_kirchhoff(S.linear_part())
    N, p = S.N, S.p
    off = S.offset
    wires = net.inputs + net.outputs
    for i in range(N):
        q0, s0 = off[i], off[N + i]
        if q0:
            v = net.add(VoltageSource(q0))
            net.connect(wires[i], Port(v, 0))
            wires[i] = Port(v, 1)
        if s0:
            c = net.add(CurrentSource((-s0) % p))
            net.connect(wires[i], Port(c, 0))
            wires[i] = Port(c, 1)
    net.inputs, net.outputs = wires[: S.dom], wires[S.dom :]
    return net
