"""Text and JSON formats for matrices, relations and netlists.

Relation::

    rel p 5 dom 2 cod 2 [offset v1 ... vN] [empty]
    p 5 2 4
    1 0 4 0
    0 1 0 1

A doubled relation adds ``sympl`` after ``rel``; its matrix is the state
generator over ``2 (dom + cod)`` columns. Netlist::

    netlist p 7
    g0 comonoid
    g1 resistor 3
    w g0.2 g1.0
    in g0.0
    out g0.1
    out g1.1
"""

from __future__ import annotations

import json
import re
from typing import Optional, Union

from .exactmat import ExactMatrix, format_matrix, parse_matrix
from .gfp import check_modulus
from .lagrel import DoubledRelation
from .linrel import AffineSubspace, LinearRelation
from .circuit.generators import ARITY, PARAMETRIC, Generator
from .circuit.netlist import Netlist, Port

Relation = Union[LinearRelation, DoubledRelation]


class ParseError(ValueError):
    pass


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer for {what}, got {tok!r}") from None


# -- matrices -----------------------------------------------------------------


def read_matrix(text: str, p: Optional[int] = None) -> ExactMatrix:
    try:
        return parse_matrix(_lines(text), p)
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from None


def matrix_to_json(M: ExactMatrix) -> dict:
    return {"p": M.p, "rows": M.rows, "cols": M.cols, "entries": M.tolist()}


# -- relations ----------------------------------------------------------------


def format_relation(R: Relation) -> str:
    sympl = isinstance(R, DoubledRelation)
    space = R.state if sympl else R.space
    head = ["rel"] + (["sympl"] if sympl else []) + ["p", str(R.p), "dom", str(R.dom), "cod", str(R.cod)]
    if not space.consistent:
        head.append("empty")
    elif any(space.offset):
        head += ["offset"] + [str(v) for v in space.offset]
    return " ".join(head) + "\n" + format_matrix(space.basis)


def parse_relation(text: str, p: Optional[int] = None) -> Relation:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty relation file")
    toks = lines[0].split()
    if not toks or toks[0] != "rel":
        raise ParseError(f"relation header must start with 'rel': {lines[0]!r}")
    toks = toks[1:]
    sympl = bool(toks) and toks[0] == "sympl"
    if sympl:
        toks = toks[1:]
    fields: dict = {}
    offset = None
    empty = False
    i = 0
    while i < len(toks):
        t = toks[i]
        if t in ("p", "dom", "cod"):
            if i + 1 >= len(toks):
                raise ParseError(f"missing value after {t!r}")
            fields[t] = _int(toks[i + 1], t)
            i += 2
        elif t == "offset":
            offset = [_int(x, "offset") for x in toks[i + 1 :]]
            i = len(toks)
        elif t == "empty":
            empty = True
            i += 1
        else:
            raise ParseError(f"unknown relation header token {t!r}")
    for k in ("p", "dom", "cod"):
        if k not in fields:
            raise ParseError(f"relation header lacks {k!r}")
    mod = check_modulus(p if p is not None else fields["p"])
    G = read_matrix("\n".join(lines[1:]), mod)
    return _build_relation(sympl, mod, fields["dom"], fields["cod"], G, offset, empty)


def _build_relation(sympl, p, m, n, G, offset, empty) -> Relation:
    width = 2 * (m + n) if sympl else m + n
    if G.cols != width:
        raise ParseError(f"matrix has {G.cols} columns, relation needs {width}")
    if offset is not None and len(offset) != width:
        raise ParseError(f"offset has {len(offset)} entries, relation needs {width}")
    space = AffineSubspace.empty(width, p) if empty else AffineSubspace(G, offset)
    return DoubledRelation(m, n, space) if sympl else LinearRelation(m, n, space)


def relation_to_json(R: Relation) -> dict:
    sympl = isinstance(R, DoubledRelation)
    space = R.state if sympl else R.space
    return {
        "type": "rel",
        "sympl": sympl,
        "p": R.p,
        "dom": R.dom,
        "cod": R.cod,
        "offset": list(space.offset) if space.consistent and any(space.offset) else None,
        "empty": not space.consistent,
        "matrix": matrix_to_json(space.basis),
    }


def relation_from_json(d: dict, p: Optional[int] = None) -> Relation:
    try:
        mod = check_modulus(p if p is not None else d["p"])
        mj = d["matrix"]
        G = ExactMatrix.from_rows(mj["entries"], mod, cols=mj["cols"])
        return _build_relation(bool(d.get("sympl")), mod, d["dom"], d["cod"], G, d.get("offset"), bool(d.get("empty")))
    except (KeyError, TypeError) as e:
        raise ParseError(f"malformed relation JSON: {e}") from None


# -- netlists -----------------------------------------------------------------

_PORT = re.compile(r"^g(\d+)\.(\d+)$")


def format_netlist(net: Netlist) -> str:
    out = [f"netlist p {net.p}"]
    for i, g in enumerate(net.generators):
        out.append(f"g{i} {g.kind}" + ("" if g.param is None else f" {g.param % net.p}"))
    out += [f"w {a} {b}" for a, b in net.wires]
    out += [f"in {pt}" for pt in net.inputs]
    out += [f"out {pt}" for pt in net.outputs]
    return "\n".join(out) + "\n"


def parse_netlist(text: str, p: Optional[int] = None) -> Netlist:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty netlist file")
    head = lines[0].split()
    if len(head) != 3 or head[:2] != ["netlist", "p"]:
        raise ParseError(f"bad netlist header: {lines[0]!r}")
    mod = check_modulus(p if p is not None else _int(head[2], "modulus"))
    net = Netlist(mod)
    ids: dict[int, int] = {}

    def port(tok: str) -> Port:
        m = _PORT.match(tok)
        if not m:
            raise ParseError(f"bad port {tok!r}")
        gid = int(m.group(1))
        if gid not in ids:
            raise ParseError(f"port {tok!r} refers to an undeclared generator")
        return Port(ids[gid], int(m.group(2)))

    for ln in lines[1:]:
        toks = ln.split()
        if re.match(r"^g\d+$", toks[0]):
            gid = int(toks[0][1:])
            if gid in ids:
                raise ParseError(f"generator g{gid} declared twice")
            if len(toks) < 2 or toks[1] not in ARITY:
                raise ParseError(f"unknown generator kind in line {ln!r}")
            kind = toks[1]
            want = 3 if kind in PARAMETRIC else 2
            if len(toks) != want:
                raise ParseError(f"wrong number of fields in line {ln!r}")
            param = _int(toks[2], "parameter") % mod if kind in PARAMETRIC else None
            ids[gid] = net.add(Generator(kind, param))
        elif toks[0] == "w" and len(toks) == 3:
            net.connect(port(toks[1]), port(toks[2]))
        elif toks[0] == "in" and len(toks) == 2:
            net.inputs.append(port(toks[1]))
        elif toks[0] == "out" and len(toks) == 2:
            net.outputs.append(port(toks[1]))
        else:
            raise ParseError(f"cannot parse netlist line {ln!r}")
    return net


def netlist_to_json(net: Netlist) -> dict:
    return {
        "type": "netlist",
        "p": net.p,
        "generators": [{"id": i, "kind": g.kind, "param": g.param} for i, g in enumerate(net.generators)],
        "wires": [[str(a), str(b)] for a, b in net.wires],
        "in": [str(pt) for pt in net.inputs],
        "out": [str(pt) for pt in net.outputs],
    }


def netlist_from_json(d: dict, p: Optional[int] = None) -> Netlist:
    try:
        mod = p if p is not None else d["p"]
        lines = [f"netlist p {mod}"]
        for g in d["generators"]:
            lines.append(f"g{g['id']} {g['kind']}" + ("" if g.get("param") is None else f" {g['param']}"))
        lines += [f"w {a} {b}" for a, b in d["wires"]]
        lines += [f"in {x}" for x in d["in"]] + [f"out {x}" for x in d["out"]]
    except (KeyError, TypeError) as e:
        raise ParseError(f"malformed netlist JSON: {e}") from None
    return parse_netlist("\n".join(lines), p)


# -- dispatch -----------------------------------------------------------------


def parse_any(text: str, p: Optional[int] = None):
    """Parse a relation or netlist in either text or JSON form."""
    s = text.lstrip()
    if s.startswith("{"):
        try:
            d = json.loads(s)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e}") from None
        kind = d.get("type") if isinstance(d, dict) else None
        if kind == "rel":
            return relation_from_json(d, p)
        if kind == "netlist":
            return netlist_from_json(d, p)
        raise ParseError("JSON object must have type 'rel' or 'netlist'")
    if s.startswith("rel"):
        return parse_relation(text, p)
    if s.startswith("netlist"):
        return parse_netlist(text, p)
    raise ParseError("input is neither a relation nor a netlist")


def dumps(obj, fmt: str = "text") -> str:
    if fmt == "json":
        if isinstance(obj, Netlist):
            d = netlist_to_json(obj)
        elif isinstance(obj, ExactMatrix):
            d = matrix_to_json(obj)
        else:
            d = relation_to_json(obj)
        return json.dumps(d, sort_keys=True) + "\n"
    if isinstance(obj, Netlist):
        return format_netlist(obj)
    if isinstance(obj, ExactMatrix):
        return format_matrix(obj)
    return format_relation(obj)
