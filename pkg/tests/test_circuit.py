import pytest

from kirchrel import lagrel, linrel
from kirchrel.circuit import (
    CurrentSource,
    DividerIn,
    DividerOut,
    Generator,
    GeneratorError,
    MeshSpec,
    Netlist,
    NetlistError,
    Port,
    Resistor,
    SpiderComonoid,
    SpiderMonoid,
    VoltageSource,
    c_matrix,
    divider_relation_check,
    eval_layered,
    eval_netlist,
    generator_relation,
    horizontal_resistor,
    horizontal_resistor_netlist,
    layered,
    mesh_netlist,
    synth_affine,
    synth_graph_state,
    synth_kirchhoff,
)
from kirchrel.circuit.generators import ARITY, divider_current_ratios
from kirchrel.exactmat import ExactMatrix
from kirchrel.kirrel import (
    NotKirchhoffError,
    graph_state_canonical,
    is_deterministic,
    is_kirchhoff,
    is_translation_invariant,
    relation_from_admittance,
)
from kirchrel.lagrel import DoubledRelation, is_lagrangian
from kirchrel.linrel import AffineSubspace
from helpers import members, rand_affine_kirchhoff, rand_state, seeded


def lin(R):
    """Members as (q_in, p_in, q_out, p_out) tuples."""
    return members(R.to_linear().space)


def test_resistor_members():
    R = generator_relation(Resistor(2), 5)
    got = lin(R)
    want = {(q1, p1, q2, p2) for q1 in range(5) for q2 in range(5) for p1 in range(5) for p2 in range(5)
            if p1 == p2 and p1 == (2 * (q2 - q1)) % 5}
    assert got == want


def test_open_circuit():
    got = lin(generator_relation(Resistor(0), 5))
    assert all(x[1] == 0 and x[3] == 0 for x in got)
    assert {(x[0], x[2]) for x in got} == {(a, b) for a in range(5) for b in range(5)}


def test_monoid_members():
    got = lin(generator_relation(SpiderMonoid(), 3))
    # (q1, q2, p1, p2, q3, p3)
    assert got == {(a, a, p1, p2, a, (p1 + p2) % 3) for a in range(3) for p1 in range(3) for p2 in range(3)}


def test_comonoid_members():
    got = lin(generator_relation(SpiderComonoid(), 3))
    # (q1, p1, q2, q3, p2, p3)
    assert got == {(a, (p2 + p3) % 3, a, a, p2, p3) for a in range(3) for p2 in range(3) for p3 in range(3)}


def test_sources():
    V = lin(generator_relation(VoltageSource(2), 5))
    assert V == {(q, pp, (q + 2) % 5, pp) for q in range(5) for pp in range(5)}
    I = lin(generator_relation(CurrentSource(2), 5))
    assert I == {(q, pp, q, (pp + 2) % 5) for q in range(5) for pp in range(5)}


def test_divider_example_w2_p5():
    R, c = divider_relation_check(2, 5)
    for q1, q2, p1, p2, q3, p3 in lin(R):
        assert q3 == (4 * q1 + 2 * q2) % 5
        assert p1 == (4 * p3) % 5 and p2 == (2 * p3) % 5
        assert (p1 + p2) % 5 == p3
    assert divider_current_ratios(2, 5) == (4, 3)
    assert c.kirchhoff and c.lossless and c.deterministic is False


def test_divider_is_L_of_weight_row():
    for p in (5, 7):
        for w in range(2, p):
            D = generator_relation(DividerIn(w), p)
            assert D == lagrel.L_functor(linrel.iota(ExactMatrix([[1 - w, w]], p)))
            assert generator_relation(DividerOut(w), p) == lagrel.converse(D)


@pytest.mark.parametrize("w", [0, 1, 5, 6])
def test_divider_bad_weights(w):
    with pytest.raises(GeneratorError):
        generator_relation(DividerIn(w), 5)
    with pytest.raises(GeneratorError):
        divider_relation_check(w, 5)


def test_all_generators_lagrangian():
    for kind in ARITY:
        g = Generator(kind, 3 if kind in ("resistor", "divider_in", "divider_out", "voltage", "current") else None)
        R = generator_relation(g, 7)
        assert (R.dom, R.cod) == g.arity
        assert is_lagrangian(R), kind
        assert is_kirchhoff(R) == (kind != "current"), kind


def test_single_resistor_netlist():
    net = Netlist(5, [Resistor(3)], [], [Port(0, 0)], [Port(0, 1)])
    assert eval_netlist(net) == generator_relation(Resistor(3), 5)


def test_opposing_voltage_sources_cancel():
    R = eval_netlist(layered([[VoltageSource(3)], [VoltageSource(-3)]], 7))
    assert R == lagrel.identity(1, 7)


def test_structural_errors():
    net = Netlist(5, [Resistor(1)], [], [Port(0, 0)], [])
    with pytest.raises(NetlistError):
        eval_netlist(net)
    net = Netlist(5, [Resistor(1)], [], [Port(0, 0), Port(0, 0)], [Port(0, 1)])
    with pytest.raises(NetlistError):
        eval_netlist(net)
    net = Netlist(5, [Resistor(1)], [(Port(0, 0), Port(3, 0))], [], [Port(0, 1)])
    with pytest.raises(NetlistError):
        eval_netlist(net)


def test_inconsistent_sources_give_empty():
    # a voltage source closed into a loop forces 0 = V
    net = Netlist(5, [VoltageSource(1), SpiderComonoid(), SpiderMonoid()])
    net.connect(Port(1, 1), Port(0, 0))
    net.connect(Port(0, 1), Port(2, 0))
    net.connect(Port(1, 2), Port(2, 1))
    net.inputs = [Port(1, 0)]
    net.outputs = [Port(2, 2)]
    R = eval_netlist(net)
    assert R.is_empty


def random_layers(rng, p, depth=3, width=3, sources=False):
    kinds = [SpiderMonoid, SpiderComonoid, lambda: Resistor(rng.randrange(p)), lambda: DividerIn(rng.randrange(2, p)),
             lambda: DividerOut(rng.randrange(2, p)), lambda: Generator("identity"), lambda: Generator("swap")]
    if sources:
        kinds += [lambda: VoltageSource(rng.randrange(p)), lambda: CurrentSource(rng.randrange(p))]
    layers, wires = [], width
    for _ in range(depth):
        layer, need = [], wires
        while need > 0:
            g = rng.choice(kinds)()
            if g.arity[0] <= need:
                layer.append(g)
                need -= g.arity[0]
        layers.append(layer)
        wires = sum(g.arity[1] for g in layer)
        if wires == 0:
            break
    return layers


def test_eval_matches_layered_composition():
    rng = seeded(1)
    for _ in range(60):
        layers = random_layers(rng, 5, sources=rng.random() < 0.5)
        assert eval_netlist(layered(layers, 5)) == eval_layered(layers, 5)


def test_eval_invariant_under_reordering():
    rng = seeded(2)
    for _ in range(30):
        net = layered(random_layers(rng, 7), 7)
        R = eval_netlist(net)
        perm = list(range(len(net.generators)))
        rng.shuffle(perm)
        new_index = {old: new for new, old in enumerate(perm)}
        gens = [net.generators[old] for old in perm]

        def mv(pt):
            return Port(new_index[pt.gen], pt.idx)

        wires = [(mv(b), mv(a)) for a, b in net.wires]
        rng.shuffle(wires)
        shuffled = Netlist(7, gens, wires, [mv(x) for x in net.inputs], [mv(x) for x in net.outputs])
        assert eval_netlist(shuffled) == R


def test_closure_of_kirchhoff_generators():
    rng = seeded(3)
    for _ in range(60):
        R = eval_netlist(layered(random_layers(rng, 5, depth=4), 5))
        assert is_kirchhoff(R)


def test_horizontal_resistor_netlist():
    for p in (5, 7):
        for y in range(p):
            M = ExactMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [y, -y, 1, 0], [-y, y, 0, 1]], p)
            assert eval_netlist(horizontal_resistor_netlist(y, p)) == lagrel.phase_space_map(M)
            assert horizontal_resistor(y, 0, 1, 2, p) == lagrel.phase_space_map(M)


def test_c_matrix_layout():
    C = c_matrix(2, 0, 1, 3, 7)
    assert C.tolist() == [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [2, 5, 0, 1, 0, 0],
        [5, 2, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]
    assert c_matrix(0, 1, 2, 3, 7) == ExactMatrix.identity(6, 7)
    with pytest.raises(ValueError):
        c_matrix(1, 1, 1, 3, 7)


def test_mesh_three_resistors():
    spec = MeshSpec(3, 7, {(0, 1): 1, (1, 2): 2, (0, 2): 3})
    Y = ExactMatrix([[4, 6, 4], [6, 3, 5], [4, 5, 5]], 7)
    assert spec.admittance() == Y
    assert graph_state_canonical(eval_netlist(mesh_netlist(spec))).Y == Y


def test_mesh_rejects_self_loop():
    with pytest.raises(ValueError):
        MeshSpec(2, 5, {(1, 1): 2})


def test_synth_graph_state_zero():
    net = synth_graph_state(ExactMatrix.zeros(2, 2, 5))
    assert net.count("resistor") == 0 and net.count("unit") == 2
    assert eval_netlist(net) == relation_from_admittance(ExactMatrix.zeros(2, 2, 5))


def test_synth_graph_state_rejects_bad_Y():
    with pytest.raises(ValueError):
        synth_graph_state(ExactMatrix([[1, 0], [0, 1]], 5))


def test_synth_kirchhoff_round_trip():
    rng = seeded(4)
    for _ in range(40):
        S = rand_state(rng.randint(1, 4), 5, rng, kirchhoff=True)
        net = synth_kirchhoff(S)
        assert eval_netlist(net) == S
        if is_deterministic(S):
            assert net.count("divider_in") == 0


def test_synth_kirchhoff_rejects_non_kirchhoff():
    R = DoubledRelation(0, 1, AffineSubspace(ExactMatrix([[0, 1]], 5)))
    with pytest.raises(NotKirchhoffError):
        synth_kirchhoff(R)


def test_synth_affine_examples():
    p = 5
    base = relation_from_admittance(ExactMatrix([[1, 4], [4, 1]], p))
    # a uniform position shift is absorbed by translation invariance
    uniform = DoubledRelation(0, 2, AffineSubspace(base.state.basis, [2, 2, 0, 0]))
    assert uniform == base and is_translation_invariant(uniform)
    assert synth_affine(uniform).count("voltage") == 0
    # a bare wire pair with q1 = q0 + 2 needs a voltage source and nothing else
    wire = DoubledRelation(0, 2, AffineSubspace(ExactMatrix([[1, 1, 0, 0], [0, 0, 1, -1]], p), [0, 2, 0, 0]))
    net = synth_affine(wire)
    assert net.count("voltage") == 1 and net.count("current") == 0
    assert eval_netlist(net) == wire
    # balanced momentum offset
    pushed = DoubledRelation(0, 2, AffineSubspace(base.state.basis, [0, 0, 3, 2]))
    net = synth_affine(pushed)
    assert net.count("current") == 2
    assert eval_netlist(net) == pushed
    # unbalanced momentum offset
    with pytest.raises(NotKirchhoffError):
        synth_affine(DoubledRelation(0, 2, AffineSubspace(base.state.basis, [0, 0, 3, 0])))


def test_synth_affine_round_trip():
    rng = seeded(5)
    for _ in range(30):
        S = rand_affine_kirchhoff(rng.randint(1, 4), 5, rng)
        assert eval_netlist(synth_affine(S)) == S
