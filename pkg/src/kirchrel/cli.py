"""Command-line interface.

Exit status: 0 on success, 1 on a validation error, 2 on a parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import lagrel, linrel
from .circuit import Netlist, eval_netlist, synth_affine, synth_kirchhoff
from .exactmat import ExactMatrix, format_matrix
from .formats import ParseError, dumps, matrix_to_json, parse_any
from .kirrel import classify, graph_state_canonical
from .lagrel import DoubledRelation
from .linrel import LinearRelation

VERBS = ("classify", "compose", "tensor", "standard-form", "canonical-graph", "dual", "ortho", "eval", "synth", "power")


class ValidationError(ValueError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str, modulus: Optional[int]):
    return parse_any(_read(path), modulus)


def _relation(obj, want_sympl: Optional[bool] = None):
    if isinstance(obj, Netlist):
        obj = eval_netlist(obj)
    if want_sympl is True and not isinstance(obj, DoubledRelation):
        raise ValidationError("this command needs a doubled ('rel sympl') relation")
    if want_sympl is False and not isinstance(obj, LinearRelation):
        raise ValidationError("this command needs a plain relation")
    return obj


def _pair(a, b):
    a, b = _relation(a), _relation(b)
    if type(a) is not type(b):
        raise ValidationError("both relations must be of the same kind")
    if a.p != b.p:
        raise ValidationError(f"modulus mismatch: {a.p} vs {b.p}")
    return a, b


def _kv(d: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(d, sort_keys=True) + "\n"
    out = []
    for k, v in d.items():
        if isinstance(v, dict) and "entries" in v:
            out.append(f"{k}:")
            out.append(format_matrix(_matrix_from_dict(v)).rstrip("\n"))
        else:
            out.append(f"{k}={v}")
    return "\n".join(out) + "\n"


def _matrix_from_dict(d):
    return ExactMatrix.from_rows(d["entries"], d["p"], cols=d["cols"])


def cmd_classify(args) -> str:
    R = _relation(_load(args.inputs[0], args.modulus), want_sympl=True)
    c = classify(R)
    if args.format == "json":
        d = {
            "kirchhoff": c.kirchhoff,
            "lagrangian": c.lagrangian,
            "deterministic": c.deterministic,
            "lossless": c.lossless,
            "graph_state": c.graph_state,
            "partition": None if c.partition is None else [sorted(s) for s in c.partition],
            "admittance": None if c.admittance is None else matrix_to_json(c.admittance),
        }
        return json.dumps(d, sort_keys=True) + "\n"
    out = c.summary() + "\n"
    if c.partition is not None:
        out += "partition=" + "|".join(",".join(str(i) for i in sorted(s)) for s in c.partition) + "\n"
    if c.admittance is not None:
        out += "admittance:\n" + format_matrix(c.admittance)
    return out


def cmd_compose(args) -> str:
    a, b = _pair(_load(args.inputs[0], args.modulus), _load(args.inputs[1], args.modulus))
    mod = lagrel if isinstance(a, DoubledRelation) else linrel
    if a.cod != b.dom:
        raise ValidationError(f"cannot compose {a.dom}->{a.cod} with {b.dom}->{b.cod}")
    return dumps(mod.compose(a, b), args.format)


def cmd_tensor(args) -> str:
    a, b = _pair(_load(args.inputs[0], args.modulus), _load(args.inputs[1], args.modulus))
    mod = lagrel if isinstance(a, DoubledRelation) else linrel
    return dumps(mod.tensor(a, b), args.format)


def cmd_standard_form(args) -> str:
    R = _relation(_load(args.inputs[0], args.modulus))
    if isinstance(R, LinearRelation):
        sf = linrel.standard_form(R)
        d = {"A": matrix_to_json(sf.A), "sigma": " ".join(map(str, sf.sigma.images))}
    else:
        sf = lagrel.lagrangian_standard_form(R.linear_part())
        d = {
            "n_p": sf.n_p,
            "n_q": sf.n_q,
            "Y": matrix_to_json(sf.Y),
            "A": matrix_to_json(sf.A),
            "sigma": " ".join(map(str, sf.sigma.images)),
        }
    return _kv(d, args.format)


def cmd_canonical_graph(args) -> str:
    R = _relation(_load(args.inputs[0], args.modulus), want_sympl=True)
    g = graph_state_canonical(R)
    d = {"Y": matrix_to_json(g.Y)}
    if any(g.offset):
        d["offset"] = " ".join(map(str, g.offset))
    return _kv(d, args.format)


def cmd_dual(args) -> str:
    R = _relation(_load(args.inputs[0], args.modulus), want_sympl=True)
    return dumps(DoubledRelation(R.dom, R.cod, lagrel.symplectic_dual(R.state)), args.format)


def cmd_ortho(args) -> str:
    R = _relation(_load(args.inputs[0], args.modulus), want_sympl=False)
    return dumps(linrel.orthogonal_complement(R), args.format)


def cmd_eval(args) -> str:
    net = _load(args.inputs[0], args.modulus)
    if not isinstance(net, Netlist):
        raise ValidationError("eval needs a netlist")
    return dumps(eval_netlist(net), args.format)


def cmd_synth(args) -> str:
    R = _relation(_load(args.inputs[0], args.modulus), want_sympl=True)
    net = synth_kirchhoff(R) if R.is_linear else synth_affine(R)
    return dumps(net, args.format)


def cmd_power(args) -> str:
    if len(args.inputs) != 2:
        raise ValidationError("power needs a relation and an element")
    R = _relation(_load(args.inputs[0], args.modulus), want_sympl=True)
    try:
        elem = [int(x) for x in args.inputs[1].replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"element must be a list of integers, got {args.inputs[1]!r}") from None
    P = lagrel.power_input(R, elem)
    return _kv({"power": int(P)}, args.format)


COMMANDS = {
    "classify": (cmd_classify, 1),
    "compose": (cmd_compose, 2),
    "tensor": (cmd_tensor, 2),
    "standard-form": (cmd_standard_form, 1),
    "canonical-graph": (cmd_canonical_graph, 1),
    "dual": (cmd_dual, 1),
    "ortho": (cmd_ortho, 1),
    "eval": (cmd_eval, 1),
    "synth": (cmd_synth, 1),
    "power": (cmd_power, 2),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kirchrel", description="Linear, Lagrangian and Kirchhoff relations over F_p.")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("inputs", nargs="+", help="input files ('-' for stdin); power also takes an element")
    ap.add_argument("--modulus", type=int, help="override the modulus given in the input files")
    ap.add_argument("--output", help="write the result here instead of stdout")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    fn, nargs = COMMANDS[args.verb]
    try:
        if len(args.inputs) != nargs:
            raise ValidationError(f"{args.verb} takes {nargs} input(s), got {len(args.inputs)}")
        out = fn(args)
    except ParseError as e:
        print(f"kirchrel: parse error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, AssertionError) as e:
        print(f"kirchrel: {e}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w") as f:
            f.write(out)
    else:
        sys.stdout.write(out)
    return 0


def main() -> None:
    sys.exit(run())
