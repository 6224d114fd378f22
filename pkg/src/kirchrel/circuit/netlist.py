"""Netlists: generators wired together, evaluated by constraint elimination."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from ..exactmat import ExactMatrix
from ..gfp import check_modulus
from ..lagrel import DoubledRelation, compose, identity, tensor
from ..linrel import AffineSubspace
from .generators import Generator, generator_constraints, generator_relation


class NetlistError(ValueError):
    pass


class Port(NamedTuple):
    gen: int
    idx: int

    def __str__(self) -> str:
        return f"g{self.gen}.{self.idx}"


@dataclass
class Netlist:
    """Generators, internal wires and an ordered boundary.

    The boundary wire carried by a port has the port's own state momentum,
    so the evaluated relation is the state on the boundary ports, split
    into ``len(inputs)`` inputs and ``len(outputs)`` outputs.
    """

    p: int
    generators: list[Generator] = field(default_factory=list)
    wires: list[tuple[Port, Port]] = field(default_factory=list)
    inputs: list[Port] = field(default_factory=list)
    outputs: list[Port] = field(default_factory=list)

    def __post_init__(self):
        self.p = check_modulus(self.p)

    def add(self, g: Generator) -> int:
        self.generators.append(g)
        return len(self.generators) - 1

    def connect(self, a: Port, b: Port):
        self.wires.append((Port(*a), Port(*b)))

    def ports(self) -> list[Port]:
        return [Port(i, k) for i, g in enumerate(self.generators) for k in range(g.n_ports)]

    def boundary(self) -> list[Port]:
        return list(self.inputs) + list(self.outputs)

    def validate(self):
        uses: dict[Port, int] = {pt: 0 for pt in self.ports()}
        for pt in [x for w in self.wires for x in w] + self.boundary():
            pt = Port(*pt)
            if pt not in uses:
                raise NetlistError(f"port {pt} does not exist")
            uses[pt] += 1
        bad = [str(pt) for pt, c in uses.items() if c != 1]
        if bad:
            raise NetlistError("ports not used exactly once: " + ", ".join(bad))

    def count(self, kind: str) -> int:
        return sum(g.kind == kind for g in self.generators)


def eval_netlist(net: Netlist) -> DoubledRelation:
    """Assemble every port's ``(q, s)`` variables, impose all constraints, project."""
    net.validate()
    p = net.p
    offsets, V = [], 0
    for g in net.generators:
        offsets.append(V)
        V += g.n_ports
    rows, rhs = [], []
    for g, o in zip(net.generators, offsets):
        H, c = generator_constraints(g, p)
        k = g.n_ports
        for r, v in zip(H, c):
            full = [0] * (2 * V)
            full[o : o + k] = r[:k]
            full[V + o : V + o + k] = r[k:]
            rows.append(full)
            rhs.append(v)
    for a, b in net.wires:
        ia, ib = offsets[a.gen] + a.idx, offsets[b.gen] + b.idx
        rq = [0] * (2 * V)
        rq[ia], rq[ib] = 1, p - 1
        rs = [0] * (2 * V)
        rs[V + ia] = 1
        rs[V + ib] = 1
        rows += [rq, rs]
        rhs += [0, 0]
    bnd = [offsets[pt.gen] + pt.idx for pt in net.boundary()]
    m, n = len(net.inputs), len(net.outputs)
    H = ExactMatrix.from_rows(rows, p, cols=2 * V)
    sol = AffineSubspace.kernel(H, rhs if any(rhs) else None)
    return DoubledRelation(m, n, sol.project(bnd + [V + i for i in bnd]))


def layered(layers: Sequence[Sequence[Generator]], p: int) -> Netlist:
    """Stack layers of side-by-side generators, wiring outputs to the next inputs in order."""
    net = Netlist(p)
    prev: list[Port] = []
    for li, layer in enumerate(layers):
        ins, outs = [], []
        for g in layer:
            gi = net.add(g)
            m, n = g.arity
            ins += [Port(gi, k) for k in range(m)]
            outs += [Port(gi, m + k) for k in range(n)]
        if li == 0:
            net.inputs = ins
        else:
            if len(prev) != len(ins):
                raise NetlistError(f"layer {li} has {len(ins)} inputs, previous layer gives {len(prev)}")
            for a, b in zip(prev, ins):
                net.connect(a, b)
        prev = outs
    net.outputs = prev
    return net


def eval_layered(layers: Sequence[Sequence[Generator]], p: int) -> DoubledRelation:
    """Sequential evaluation: tensor within a layer, compose across layers."""
    result = None
    for layer in layers:
        rel = identity(0, p)
        for g in layer:
            rel = tensor(rel, generator_relation(g, p))
        result = rel if result is None else compose(result, rel)
    return result if result is not None else identity(0, p)
