import pytest
from hypothesis import given, strategies as st

from flowkit.algebra import phi
from flowkit.errors import PredicateSyntaxError, UnboundName
from flowkit.predicate import (ActsOnX, AlphaConstantTo, AlphaEntries,
                               AlphaIdentity, AlphaInverseOf, And, Const, Eq,
                               IsEmergent, IsZfSet, Named, Neq, Not, OneRef, Or,
                               PhiRef, SelfRef, SubsetOf, VarRef, XActsOn,
                               ZeroRef, alpha_images, eval_predicate,
                               format_alpha, format_predicate, generic_value,
                               parse_alpha, parse_predicate)
from flowkit.terms import PHI0, ZERO


@pytest.mark.parametrize("text,ast", [
    ("x = phi0", Eq(PhiRef(0))),
    ("x != x and E(x)", And(Neq(VarRef()), IsEmergent())),
    ("x = self", Eq(SelfRef())),
    ("not Z(x) or x = one", Or(Not(IsZfSet()), Eq(OneRef()))),
    ("acts(f, x)", ActsOnX(Named("f"))),
    ("acts(x, zero)", XActsOn(ZeroRef())),
    ("subset(x, phi2)", SubsetOf(PhiRef(2))),
    ("(true)", Const(True)),
    ("a = b", None),
])
def test_parse(text, ast):
    if ast is None:
        with pytest.raises(PredicateSyntaxError):
            parse_predicate(text)
    else:
        assert parse_predicate(text) == ast


def test_and_binds_tighter_than_or():
    p = parse_predicate("x = phi0 or x = phi1 and E(x)")
    assert p == Or(Eq(PhiRef(0)), And(Eq(PhiRef(1)), IsEmergent()))


@pytest.mark.parametrize("text,pos", [
    ("x = ", 4),
    ("x == phi0", 3),
    ("x = phi0 and", 12),
    ("E(y)", 2),
    ("x = phi0 $", 9),
])
def test_error_positions(text, pos):
    with pytest.raises(PredicateSyntaxError) as e:
        parse_predicate(text)
    assert e.value.position == pos


def test_bindings_checked_at_parse_time():
    assert parse_predicate("x = f", bindings={"f"}) == Eq(Named("f"))
    with pytest.raises(UnboundName):
        parse_predicate("x = g", bindings={"f"})


refs = st.one_of(st.builds(Named, st.sampled_from(["f", "g", "h2"])),
                 st.just(ZeroRef()), st.just(OneRef()), st.just(VarRef()),
                 st.just(SelfRef()), st.builds(PhiRef, st.integers(0, 20)))
atoms = st.one_of(st.builds(Eq, refs), st.builds(Neq, refs), st.just(IsEmergent()),
                  st.just(IsZfSet()), st.builds(ActsOnX, refs.filter(lambda r: r != VarRef())), st.builds(XActsOn, refs),
                  st.builds(SubsetOf, refs), st.builds(Const, st.booleans()))
preds = st.recursive(atoms, lambda sub: st.one_of(
    st.builds(And, sub, sub), st.builds(Or, sub, sub), st.builds(Not, sub)), max_leaves=12)


# acts(x, x) reads as XActsOn; both forms mean the same thing
@given(preds)
def test_format_parse_round_trip(p):
    assert parse_predicate(format_predicate(p)) == p


@given(preds)
def test_generic_false_means_only_named_terms(p):
    # a definite False must hold at a fresh term no atom names
    from flowkit.terms import Universe
    u = Universe()
    for name in ("f", "g", "h2"):
        u.bind(name, phi(u, 3))
    fresh = u.intern({phi(u, 5): phi(u, 9)})
    if generic_value(p) is False:
        assert not eval_predicate(u, p, fresh, result=phi(u, 7))


def test_eval_self_is_inert_without_result(u):
    assert not eval_predicate(u, parse_predicate("x = self"), PHI0)
    assert eval_predicate(u, parse_predicate("x != self"), PHI0)
    assert eval_predicate(u, parse_predicate("x = self"), PHI0, result=PHI0)


def test_eval_atoms(u):
    p1, p2 = phi(u, 1), phi(u, 2)
    assert eval_predicate(u, parse_predicate("acts(phi2, x)"), p1)
    assert not eval_predicate(u, parse_predicate("acts(x, phi2)"), p1)
    assert eval_predicate(u, parse_predicate("subset(x, phi3)"), p2)
    assert eval_predicate(u, parse_predicate("E(x) and Z(x)"), p2)


@pytest.mark.parametrize("text,alpha", [
    ("identity", AlphaIdentity()),
    ("inverse(c)", AlphaInverseOf(Named("c"))),
    ("const(phi1)", AlphaConstantTo(PhiRef(1))),
    ("phi0 -> phi1, phi1 -> phi0", AlphaEntries(((PhiRef(0), PhiRef(1)), (PhiRef(1), PhiRef(0))))),
])
def test_alpha_round_trip(text, alpha):
    assert parse_alpha(text) == alpha
    assert parse_alpha(format_alpha(alpha)) == alpha


def test_alpha_images(u):
    p0, p1, p2 = phi(u, 0), phi(u, 1), phi(u, 2)
    c = u.bind("c", u.intern({p0: p2, p1: p2}))
    assert alpha_images(u, AlphaInverseOf(Named("c")), p2) == [p0, p1]
    assert alpha_images(u, AlphaInverseOf(c), p1) == [ZERO]
    assert alpha_images(u, {p0: p1}, p0) == [p1]
    assert alpha_images(u, parse_alpha("phi0 -> phi1, phi0 -> phi2"), p0) == [p1, p2]
