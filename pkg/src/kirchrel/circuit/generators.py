"""Electrical generators and their relations.

Ports are numbered inputs first, then outputs. Each relation is given by
constraint rows on the port state vector ``(q_0..q_{k-1}, s_0..s_{k-1})``
where ``s = p`` on inputs and ``s = -p`` on outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..exactmat import ExactMatrix
from ..gfp import check_modulus, inv_mod
from ..kirrel import KirchhoffClassification, classify
from ..lagrel import DoubledRelation
from ..linrel import AffineSubspace

ARITY = {
    "unit": (0, 1),
    "counit": (1, 0),
    "monoid": (2, 1),
    "comonoid": (1, 2),
    "resistor": (1, 1),
    "divider_in": (2, 1),
    "divider_out": (1, 2),
    "voltage": (1, 1),
    "current": (1, 1),
    "cup": (2, 0),
    "cap": (0, 2),
    "identity": (1, 1),
    "swap": (2, 2),
}

PARAMETRIC = {"resistor", "divider_in", "divider_out", "voltage", "current"}


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    kind: str
    param: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ARITY:
            raise GeneratorError(f"unknown generator kind {self.kind!r}")
        if (self.kind in PARAMETRIC) != (self.param is not None):
            raise GeneratorError(f"{self.kind} {'needs' if self.kind in PARAMETRIC else 'takes no'} parameter")

    @property
    def arity(self) -> tuple[int, int]:
        return ARITY[self.kind]

    @property
    def n_ports(self) -> int:
        return sum(self.arity)

    def __str__(self) -> str:
        return self.kind if self.param is None else f"{self.kind} {self.param}"


def SpiderUnit() -> Generator:
    return Generator("unit")


def SpiderCounit() -> Generator:
    return Generator("counit")


def SpiderMonoid() -> Generator:
    return Generator("monoid")


def SpiderComonoid() -> Generator:
    return Generator("comonoid")


def Resistor(y: int) -> Generator:
    return Generator("resistor", int(y))


def DividerIn(w: int) -> Generator:
    return Generator("divider_in", int(w))


def DividerOut(w: int) -> Generator:
    return Generator("divider_out", int(w))


def VoltageSource(V: int) -> Generator:
    return Generator("voltage", int(V))


def CurrentSource(I: int) -> Generator:
    return Generator("current", int(I))


def Cup() -> Generator:
    return Generator("cup")


def Cap() -> Generator:
    return Generator("cap")


def Identity() -> Generator:
    return Generator("identity")


def SymplecticSwap() -> Generator:
    return Generator("swap")


def _check_weight(w: int, p: int) -> int:
    w %= p
    if w in (0, 1):
        raise GeneratorError(f"divider weight must avoid 0 and 1, got {w}")
    return w


def generator_constraints(g: Generator, p: int) -> tuple[list[list[int]], list[int]]:
    """Rows ``H`` and right-hand side ``c`` with the relation ``{x : H x = c}``."""
    p = check_modulus(p)
    k = g.n_ports
    rows: list[list[int]] = []
    rhs: list[int] = []

    def row(q=None, s=None, c=0):
        r = [0] * (2 * k)
        for i, v in (q or {}).items():
            r[i] = v % p
        for i, v in (s or {}).items():
            r[k + i] = v % p
        rows.append(r)
        rhs.append(c % p)

    kind, a = g.kind, g.param
    if kind in ("unit", "counit"):
        row(s={0: 1})
    elif kind in ("monoid", "comonoid", "identity", "cup", "cap"):
        # positions all equal, state momenta sum to zero
        for i in range(k - 1):
            row(q={i: 1, i + 1: -1})
        row(s={i: 1 for i in range(k)})
    elif kind == "resistor":
        row(q={0: a, 1: -a}, s={0: 1})
        row(q={0: -a, 1: a}, s={1: 1})
    elif kind == "divider_in":
        w = _check_weight(a, p)
        row(q={0: 1 - w, 1: w, 2: -1})
        row(s={0: 1, 2: 1 - w})
        row(s={1: 1, 2: w})
    elif kind == "divider_out":
        w = _check_weight(a, p)
        row(q={0: -1, 1: 1 - w, 2: w})
        row(s={1: 1, 0: 1 - w})
        row(s={2: 1, 0: w})
    elif kind == "voltage":
        row(q={0: -1, 1: 1}, c=a)
        row(s={0: 1, 1: 1})
    elif kind == "current":
        row(q={0: 1, 1: -1})
        row(s={0: 1, 1: 1}, c=-a)
    elif kind == "swap":
        # output 2 carries input 1, output 3 carries input 0
        row(q={1: 1, 2: -1})
        row(q={0: 1, 3: -1})
        row(s={1: 1, 2: 1})
        row(s={0: 1, 3: 1})
    return rows, rhs


def generator_relation(g: Generator, p: int) -> DoubledRelation:
    rows, rhs = generator_constraints(g, p)
    m, n = g.arity
    H = ExactMatrix.from_rows(rows, p, cols=2 * g.n_ports)
    return DoubledRelation(m, n, AffineSubspace.kernel(H, rhs if any(rhs) else None))


def divider_relation_check(w: int, p: int) -> tuple[DoubledRelation, KirchhoffClassification]:
    R = generator_relation(DividerIn(w), p)
    return R, classify(R)


def divider_weights(w: int, p: int) -> tuple[int, int]:
    """``(1 - w, w)``: the share of the output current routed to each input."""
    w = _check_weight(w, p)
    return (1 - w) % p, w


def divider_current_ratios(w: int, p: int) -> tuple[int, int]:
    """``((1-w)^-1, w^-1)`` so that ``I_3 = a I_1 = b I_2``."""
    u, w = divider_weights(w, p)
    return inv_mod(u, p), inv_mod(w, p)
