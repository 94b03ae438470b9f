import random

import pytest
from hypothesis import given, strategies as st

from flowkit.algebra import phi
from flowkit.errors import (CycleInWellFoundedMode, ForbiddenOneCycle,
                            InvalidTable, UnboundName)
from flowkit.terms import (ONE, PHI0, ZERO, Mode, Universe, acts, acts_on,
                           evaluate, extensional_eq, images, is_identity_style,
                           similar, support)

from conftest import grow


def test_sentinels_exist_and_differ():
    u = Universe()
    assert len({ZERO, ONE, PHI0}) == 3
    assert u.table(PHI0) == {}
    assert acts(u, PHI0) == []


def test_eval_rules(u):
    p1, p2 = phi(u, 1), phi(u, 2)
    assert evaluate(u, ZERO, p1) == ZERO
    assert evaluate(u, ONE, p1) == p1
    assert evaluate(u, p2, p1) == p1
    assert evaluate(u, p1, p2) == ZERO
    assert evaluate(u, p2, p2) == p2
    assert evaluate(u, ONE, ONE) == ONE
    assert evaluate(u, p1, ZERO) == ZERO


def test_table_canonicalisation(u):
    p1 = phi(u, 1)
    # zero images vanish, order does not matter
    a = u.intern({PHI0: p1, p1: ZERO})
    b = u.intern([(PHI0, p1)])
    assert a == b
    assert u.table(a) == {PHI0: p1}


@pytest.mark.parametrize("table,err", [
    ({ZERO: PHI0}, InvalidTable),
    ({ONE: ONE}, InvalidTable),
])
def test_invalid_tables(table, err):
    u = Universe()
    with pytest.raises(err):
        u.intern(table)


def test_forbidden_one_cycle(u):
    with pytest.raises(ForbiddenOneCycle):
        u.intern({ONE: PHI0, PHI0: ONE})


def test_conflicting_images_rejected(u):
    with pytest.raises(InvalidTable):
        u.intern([(PHI0, phi(u, 1)), (PHI0, phi(u, 2))])


def test_declare_needs_cyclic_mode():
    with pytest.raises(CycleInWellFoundedMode):
        Universe().declare("a")


def test_names_and_rendering(u):
    g = u.bind("g", u.intern({phi(u, 1): phi(u, 1)}))
    assert u.resolve("g") == g
    assert u.resolve("phi3") == phi(u, 3)
    assert u.name_of(phi(u, 3)) == "phi3"
    assert u.render(u.intern({g: PHI0})) == "{g -> phi0}"
    with pytest.raises(UnboundName):
        u.resolve("nope")


def test_support_and_images(u):
    f = u.intern({PHI0: phi(u, 1), phi(u, 2): phi(u, 1)})
    assert acts(u, f) == sorted([PHI0, phi(u, 2)])
    assert images(u, f) == [phi(u, 1)]
    assert support(u, f) == {PHI0, phi(u, 1), phi(u, 2)}
    assert not is_identity_style(u, f)
    assert is_identity_style(u, phi(u, 3))


def test_similar_terms(u):
    # phi0 and zero agree everywhere except at themselves
    assert similar(u, PHI0, ZERO)
    assert not similar(u, phi(u, 1), phi(u, 2))


@given(st.integers(0, 10_000))
def test_identity_is_extensional_in_well_founded_mode(seed):
    u = Universe()
    made = grow(u, random.Random(seed), 12)
    for a in made:
        for b in made:
            assert (a == b) == extensional_eq(u, a, b)


@given(st.integers(0, 10_000))
def test_self_reference_and_idempotent_interning(seed):
    u = Universe()
    for t in grow(u, random.Random(seed), 12):
        assert evaluate(u, t, t) == t
        assert u.intern(u.table(t)) == t
        assert not acts_on(u, t, t)


def test_cyclic_declared_nodes_and_bisimulation():
    u = Universe(Mode.CYCLIC)
    a, b = u.declare("a"), u.declare("b")
    u.define(a, {a: a})       # self-key is implicit, so a looks like phi0 but is a node
    u.define(b, {b: b})
    assert a != b
    assert extensional_eq(u, a, b)
    c, d = u.declare("c"), u.declare("d")
    u.define(c, {d: d})
    u.define(d, {c: c})
    assert extensional_eq(u, c, d)
    assert not extensional_eq(u, c, phi(u, 1))


def test_cyclic_intern_reuses_declared_node():
    u = Universe(Mode.CYCLIC)
    a, b = u.declare("a"), u.declare("b")
    u.define(a, {b: b})
    u.define(b, {a: a})
    assert u.intern({b: b}) == a
