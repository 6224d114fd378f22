import pytest
from hypothesis import given, settings, strategies as st

from kirchrel import linrel
from kirchrel.exactmat import ExactMatrix, Permutation
from kirchrel.lagrel import (
    DoubledRelation,
    L_functor,
    NotLagrangianError,
    compose,
    converse,
    identity,
    is_lagrangian,
    is_lossless,
    lagrangian_standard_form,
    power_input,
    relation_to_state,
    state_to_relation,
    symplectic_dual,
    symplectic_permutation,
    tensor,
)
from kirchrel.linrel import AffineSubspace
from helpers import (
    all_lagrangian_sets,
    members,
    omega,
    rand_lagrangian,
    rand_matrix,
    rand_relation,
    rand_state,
    seeded,
    set_to_space,
    state_power,
)


def to_linear_member(R, x):
    """State vector -> (q_in, p_in, q_out, p_out)."""
    m, N, p = R.dom, R.N, R.p
    return list(x[:m]) + list(x[N : N + m]) + list(x[m:N]) + [(-v) % p for v in x[N + m :]]


def test_identity_is_lagrangian_and_lossless():
    for n in range(4):
        I = identity(n, 5)
        assert is_lagrangian(I) and is_lossless(I)


def test_identity_members():
    I = identity(2, 5)
    assert I.contains([1, 2, 3, 4, 1, 2, 3, 4])
    assert not I.contains([1, 2, 3, 4, 1, 2, 3, 0])


def test_linear_round_trip():
    rng = seeded(1)
    for _ in range(30):
        R = rand_state(3, 5, rng)
        assert DoubledRelation.from_linear(R.to_linear()) == R


def test_state_relabelling_is_trivial():
    rng = seeded(2)
    for _ in range(20):
        R = rand_state(3, 5, rng)
        S = relation_to_state(R)
        assert (S.dom, S.cod) == (0, 3)
        assert state_to_relation(S, R.dom, R.cod) == R


def test_lagrangian_enumeration_matches_dimension_and_isotropy():
    sets = all_lagrangian_sets(2, 3)
    assert len(sets) == 40
    for S in sets:
        assert is_lagrangian(set_to_space(S, 3))


def test_non_lagrangian_detected():
    # the full space and a non-isotropic plane
    assert not is_lagrangian(AffineSubspace.full(4, 5))
    assert not is_lagrangian(AffineSubspace(ExactMatrix([[1, 0, 0, 0], [0, 0, 1, 0]], 5)))
    assert not is_lagrangian(AffineSubspace.empty(4, 5))


def test_symplectic_dual_brute_force():
    rng = seeded(3)
    for _ in range(20):
        U = AffineSubspace(rand_matrix(rng.randint(0, 3), 4, 3, rng))
        D = symplectic_dual(U)
        full = members(AffineSubspace.full(4, 3))
        want = {v for v in full if all(omega(v, u, 3) == 0 for u in members(U))}
        assert members(D) == want


def test_operations_preserve_lagrangian():
    rng = seeded(4)
    for _ in range(40):
        R1 = rand_state(rng.randint(1, 3), 5, rng)
        R2 = DoubledRelation(R1.cod, 1, rand_lagrangian(R1.cod + 1, 5, rng))
        assert is_lagrangian(compose(R1, R2))
        assert is_lagrangian(tensor(R1, R2))
        assert is_lagrangian(converse(R1))


def test_compose_matches_linear_members():
    rng = seeded(5)
    for _ in range(20):
        R1 = DoubledRelation(1, 1, rand_lagrangian(2, 3, rng))
        R2 = DoubledRelation(1, 1, rand_lagrangian(2, 3, rng))
        C = compose(R1, R2)
        L1, L2 = members(R1.to_linear().space), members(R2.to_linear().space)
        want = set()
        for a in L1:
            for b in L2:
                if a[2:] == b[:2]:
                    want.add(a[:2] + b[2:])
        assert members(C.to_linear().space) == want


def test_tensor_member_layout():
    rng = seeded(6)
    R1 = DoubledRelation(1, 1, rand_lagrangian(2, 5, rng))
    R2 = DoubledRelation(1, 2, rand_lagrangian(3, 5, rng))
    T = tensor(R1, R2)
    for a in list(members(R1.to_linear().space))[:5]:
        for b in list(members(R2.to_linear().space))[:5]:
            # (q_in, p_in, q_out, p_out) for each factor
            member = [a[0], b[0], a[1], b[1], a[2], b[2], b[3], a[3], b[4], b[5]]
            assert T.contains(member)


def test_standard_form_round_trip_all_small_lagrangians():
    for S in all_lagrangian_sets(2, 3):
        state = DoubledRelation(0, 2, set_to_space(S, 3))
        for order in ([0, 1], [1, 0]):
            sf = lagrangian_standard_form(state, order)
            assert sf.Y == sf.Y.T
            assert AffineSubspace.kernel(sf.parity_check()) == state.state


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4), st.sampled_from([5, 7]))
def test_standard_form_round_trip_random(seed, N, p):
    rng = seeded(seed)
    R = rand_state(N, p, rng)
    order = list(range(N))
    rng.shuffle(order)
    sf = lagrangian_standard_form(R, order)
    assert sf.n_p + sf.n_q == N
    assert AffineSubspace.kernel(sf.parity_check()) == R.state


def test_standard_form_rejects_non_lagrangian():
    R = DoubledRelation(0, 1, AffineSubspace.full(2, 5))
    with pytest.raises(NotLagrangianError):
        lagrangian_standard_form(R)


def test_L_functor_lossless_lagrangian_and_functorial():
    rng = seeded(7)
    for _ in range(20):
        R1, R2 = rand_relation(2, 1, 5, rng), rand_relation(1, 2, 5, rng)
        L1 = L_functor(R1)
        assert is_lagrangian(L1) and is_lossless(L1)
        assert compose(L_functor(R1), L_functor(R2)) == L_functor(linrel.compose(R1, R2))


def test_L_of_graph():
    M = ExactMatrix([[1, 2], [3, 4]], 7)
    L = L_functor(linrel.iota(M))
    q, pp = [1, 5], [2, 3]
    q2 = [(1 * 1 + 2 * 5) % 7, (3 * 1 + 4 * 5) % 7]
    # input momentum is M^T applied to output momentum
    p1 = [(1 * 2 + 3 * 3) % 7, (2 * 2 + 4 * 3) % 7]
    assert L.contains(q + p1 + q2 + pp)


def test_power_input_value():
    R = L_functor(linrel.iota(ExactMatrix([[2]], 5)))
    # q' = 2 q, p = 2 p'
    member = [1, 4, 2, 2]
    assert int(power_input(R, member)) == (1 * 4 - 2 * 2) % 5
    with pytest.raises(ValueError):
        power_input(R, [1, 1, 1, 1])


def test_is_lossless_brute_force():
    rng = seeded(8)
    for _ in range(60):
        R = rand_state(2, 3, rng)
        want = all(state_power(x, 3) == 0 for x in members(R.state))
        assert is_lossless(R) == want


def test_power_from_linear_member_matches_state_power():
    rng = seeded(9)
    for _ in range(20):
        R = rand_state(3, 5, rng)
        for x in list(members(R.state))[:10]:
            assert int(power_input(R, to_linear_member(R, x))) == state_power(x, 5)


def test_symplectic_permutation():
    sigma = Permutation([1, 2, 0])
    P = symplectic_permutation(sigma, 5)
    assert is_lagrangian(P) and is_lossless(P)
    q, pp = [1, 2, 3], [4, 0, 1]
    out_q = [0] * 3
    out_p = [0] * 3
    for k in range(3):
        out_q[sigma(k)] = q[k]
        out_p[sigma(k)] = pp[k]
    assert P.contains(q + pp + out_q + out_p)
