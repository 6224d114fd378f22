from .generators import (
    ARITY,
    Cap,
    Cup,
    CurrentSource,
    DividerIn,
    DividerOut,
    Generator,
    GeneratorError,
    Identity,
    Resistor,
    SpiderComonoid,
    SpiderCounit,
    SpiderMonoid,
    SpiderUnit,
    SymplecticSwap,
    VoltageSource,
    divider_relation_check,
    generator_relation,
)
from .netlist import Netlist, NetlistError, Port, eval_layered, eval_netlist, layered
from .synth import (
    MeshSpec,
    admittance_block,
    c_matrix,
    horizontal_resistor,
    horizontal_resistor_netlist,
    mesh_netlist,
    synth_affine,
    synth_graph_state,
    synth_kirchhoff,
)

__all__ = [
    "ARITY",
    "Cap",
    "Cup",
    "CurrentSource",
    "DividerIn",
    "DividerOut",
    "Generator",
    "GeneratorError",
    "Identity",
    "Resistor",
    "SpiderComonoid",
    "SpiderCounit",
    "SpiderMonoid",
    "SpiderUnit",
    "SymplecticSwap",
    "VoltageSource",
    "divider_relation_check",
    "generator_relation",
    "Netlist",
    "NetlistError",
    "Port",
    "eval_layered",
    "eval_netlist",
    "layered",
    "MeshSpec",
    "admittance_block",
    "c_matrix",
    "horizontal_resistor",
    "horizontal_resistor_netlist",
    "mesh_netlist",
    "synth_affine",
    "synth_graph_state",
    "synth_kirchhoff",
]
