import pytest

from flowkit.algebra import identity_map, is_restriction, phi
from flowkit.errors import CapExceeded, GuardFailed, UnknownNode, UniverseSyntaxError
from flowkit.hyper import (ConfirmedUpTo, CyclicSpec, Refuted, build_cyclic_universe,
                           check_hyperfunction, check_well_foundedness,
                           cyclic_successor, generate_sigma_chain,
                           materialize_hyperfunction, member_levels,
                           parse_cyclic_spec, set_axiom_mode)
from flowkit.terms import (ONE, PHI0, ZERO, AxiomMode, Mode, Universe, acts,
                           extensional_eq)
from flowkit.zf import generate_rank_universe, is_zf_set

CYCLE = "node a: b\nnode b: c\nnode c: a\n"


@pytest.fixture
def fig():
    u = build_cyclic_universe(parse_cyclic_spec(CYCLE))
    return u, [u.resolve(n) for n in "abc"]


def test_spec_parsing_round_trip():
    spec = parse_cyclic_spec("# three nodes\nnode a: b, phi1\nnode b:\n")
    assert spec == CyclicSpec(["a", "b"], [("a", "b"), ("a", "phi1")])
    assert parse_cyclic_spec(spec.text()) == spec
    with pytest.raises(UniverseSyntaxError):
        parse_cyclic_spec("a -> b")


def test_unknown_members_are_rejected():
    with pytest.raises(UnknownNode):
        build_cyclic_universe(parse_cyclic_spec("node a: q\n"))


def test_cycle_fails_well_foundedness(fig):
    u, (a, b, c) = fig
    res = check_well_foundedness(u, identity_map(u, [a, b, c]))
    assert not res.holds
    assert set(res.cycle) == {a, b, c}
    # each node alone is fine: its single member shares nothing with it
    assert check_well_foundedness(u, a).holds


def test_well_founded_sets_pass():
    u = Universe()
    for t in generate_rank_universe(u, 3):
        if t != PHI0:
            res = check_well_foundedness(u, t)
            assert res.holds and res.witness in acts(u, t)
    with pytest.raises(GuardFailed):
        check_well_foundedness(u, PHI0)
    with pytest.raises(GuardFailed):
        check_well_foundedness(u, ZERO)


def test_self_membered_node_is_its_own_cycle():
    u = Universe(Mode.CYCLIC)
    o = u.declare("o")
    p = u.declare("p")
    u.define(o, {p: p})
    u.define(p, {p: p})        # implicit self entry: p acts on nothing
    assert check_well_foundedness(u, o).holds


@pytest.mark.parametrize("depth", [1, 2, 3])
def test_materialized_carrier_is_confirmed(fig, depth):
    u, base = fig
    psi = materialize_hyperfunction(u, base, depth)
    assert check_hyperfunction(u, psi, depth) == ConfirmedUpTo(depth)
    assert is_zf_set(u, psi)


def test_missing_successor_is_refuted(fig):
    u, (a, b, c) = fig
    psi = materialize_hyperfunction(u, [a, b, c], 1)
    sa = cyclic_successor(u, a)
    cut = u.intern({t: t for t in acts(u, psi) if t != sa})
    assert check_hyperfunction(u, cut, 1) == Refuted("ii", a)


def test_missing_restriction_is_refuted():
    u = build_cyclic_universe(parse_cyclic_spec(CYCLE + "node d: a, b\n"))
    a, b, c, d = (u.resolve(n) for n in "abcd")
    # {a} is the node c, which the carrier leaves out
    assert check_hyperfunction(u, identity_map(u, [a, b, d]), 1) == Refuted("iii", c)


def test_non_identity_style_is_refuted(fig):
    u, (a, b, _) = fig
    assert check_hyperfunction(u, u.intern({a: b}), 2) == Refuted("i", u.intern({a: b}))
    assert check_hyperfunction(u, PHI0, 2).clause == "i"


def test_levels(fig):
    u, base = fig
    psi = materialize_hyperfunction(u, base, 2)
    lv = member_levels(u, acts(u, psi))
    assert all(lv[t] == 0 for t in base)
    assert lv[cyclic_successor(u, base[0])] == 1
    assert max(lv.values()) == 2


def test_sigma_chain_is_a_finite_well_order(u):
    for k in range(6):
        chain = generate_sigma_chain(u, PHI0, k)
        members = acts(u, chain)
        assert members == acts(u, phi(u, k + 1))
        for x in members:
            for y in members:
                assert is_restriction(u, x, y) or is_restriction(u, y, x)
    with pytest.raises(GuardFailed):
        generate_sigma_chain(u, ONE, 2)
    with pytest.raises(CapExceeded):
        generate_sigma_chain(u, PHI0, 1000)


def test_sigma_chain_from_a_cyclic_node(fig):
    u, (a, _, _) = fig
    chain = generate_sigma_chain(u, a, 3)
    assert len(acts(u, chain)) == 4


def test_cyclic_successor_is_interned(fig):
    u, (a, _, _) = fig
    assert cyclic_successor(u, a) == cyclic_successor(u, a)
    assert extensional_eq(u, cyclic_successor(u, a), cyclic_successor(u, a))


def test_axiom_mode_switch(fig):
    u, base = fig
    psi = materialize_hyperfunction(u, base, 2)
    assert is_zf_set(u, psi)
    set_axiom_mode(u, AxiomMode.WELL_FOUNDEDNESS)
    assert not is_zf_set(u, psi)
    with pytest.raises(GuardFailed):
        set_axiom_mode(Universe(), AxiomMode.HYPERFUNCTIONS)
