"""Operations that build new terms out of old ones.

Each construction returns the unique term its defining conditions pin down;
the clause checkers (``is_composition``, ``is_successor``,
``check_restriction``) are exposed so tests can confirm the result
independently of how it was built.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Iterable

from .errors import (AlphaNotFunctional, CapExceeded, CyclicTermError,
                     DefinitionClauseViolated, ForbiddenOneCycle, GuardFailed,
                     InvalidTable, NonEmergentComponent, NonEmergentSelected,
                     NotAZfSet, UnboundedSupport, ZCompositionPreconditionFailed)
from .predicate import (Pred, alpha_images, eval_predicate, generic_value,
                        named_refs, resolve_ref)
from .terms import (ONE, PHI0, ZERO, TermId, Universe, acts, acts_on, evaluate,
                    images, support)


def identity_map(u: Universe, terms: Iterable[TermId]) -> TermId:
    """The Map sending each given term to itself."""
    return u.intern({t: t for t in terms if t != ZERO})


# -- successor and the phi ladder ------------------------------------------

def sigma(u: Universe, f: TermId) -> TermId:
    """f's table extended by f -> f, for any Map including cyclic nodes."""
    if f in (ZERO, ONE):
        return ZERO
    tab = dict(u.table(f))
    tab[f] = f
    return u.intern(tab)


def successor(u: Universe, f: TermId) -> TermId:
    """Successor of a well-founded term; Zero for the two sentinels."""
    if u.is_cyclic_node(f):
        raise CyclicTermError("successor of a cyclic node is handled by the hyper layer")
    return sigma(u, f)


def is_successor(u: Universe, f: TermId, g: TermId) -> bool:
    """g agrees with f everywhere except at g, and f does not act on g."""
    if ONE in (f, g):
        raise UnboundedSupport("successor relation against one")
    if evaluate(u, f, g) != ZERO:
        return False
    xs = {f}
    for t in (f, g):
        if u.is_map(t):
            xs |= set(u.table(t))
    return all(evaluate(u, g, x) == evaluate(u, f, x) for x in xs if x != g)


def phi(u: Universe, n: int) -> TermId:
    if n < 0:
        raise ValueError("phi index must be non-negative")
    if n > u.config.phi_cap:
        raise CapExceeded("phi", n, u.config.phi_cap)
    ladder = u.phi_ladder
    while len(ladder) <= n:
        t = successor(u, ladder[-1])
        u.phi_index.setdefault(t, len(ladder))
        ladder.append(t)
    return ladder[n]


# -- composition -----------------------------------------------------------

def is_composition(u: Universe, h: TermId, f: TermId, g: TermId) -> bool:
    """Check the five defining clauses of h = f o g on finite Maps."""
    if ONE in (f, g, h):
        raise UnboundedSupport("composition clauses with one need the sentinel rules")
    if h == ZERO:
        return False
    xs = set()
    for t in (g, h):
        if u.is_map(t):
            xs |= set(u.table(t))
    for x in xs - {f, g, h}:
        if evaluate(u, h, x) != evaluate(u, f, evaluate(u, g, x)):
            return False
    if h != f and evaluate(u, h, f) != ZERO:
        return False
    if h != g and evaluate(u, h, g) != ZERO:
        return False
    if g != h and f != h:
        gh = evaluate(u, g, h)
        if gh != ZERO and evaluate(u, f, gh) != ZERO:
            return False
    return True


def compose(u: Universe, f: TermId, g: TermId) -> TermId:
    """f o g. Tries f, then g, then the fresh pointwise table."""
    if u.is_cyclic_node(f) or u.is_cyclic_node(g):
        raise CyclicTermError("composition of cyclic nodes is not supported")
    if f == ZERO or g == ZERO:
        return PHI0
    if f == ONE and g == ONE:
        return ONE
    if ONE in (f, g):
        x = g if f == ONE else f
        if evaluate(u, x, ONE) == ZERO:
            return x
        raise UnboundedSupport(f"{u.name_of(x)} acts on one")
    fresh = {}
    for x in u.table(g):
        if x in (f, g):
            continue
        v = evaluate(u, f, evaluate(u, g, x))
        if v != ZERO:
            fresh[x] = v
    for h in (f, g):
        if is_composition(u, h, f, g):
            return h
    if fresh.get(ONE) == ONE:
        # the composite would fix one, which only one may do
        raise ForbiddenOneCycle(u.name_of(evaluate(u, g, ONE)))
    h = u.intern(fresh)
    if is_composition(u, h, f, g):
        return h
    raise DefinitionClauseViolated("composition", f"for {u.name_of(f)} o {u.name_of(g)}")


def _zf_only(u: Universe, terms) -> bool:
    from .zf import is_zf_set
    return all(is_zf_set(u, t) for t in terms)


def z_compose(u: Universe, f: TermId, g: TermId) -> TermId:
    """Apply f then g, for maps between ZF-sets where Dom g equals Im f."""
    for t in (f, g):
        if not u.is_map(t):
            raise ZCompositionPreconditionFailed(f"{u.name_of(t)} is not a Map")
        if not _zf_only(u, support(u, t)):
            raise ZCompositionPreconditionFailed(f"{u.name_of(t)} touches a non-ZF-set")
    if set(acts(u, g)) != set(images(u, f)):
        raise ZCompositionPreconditionFailed("domain of the second map differs from image of the first")
    if acts_on(u, f, g) or acts_on(u, g, f):
        raise ZCompositionPreconditionFailed("the two maps act on each other")
    return u.intern({t: evaluate(u, g, v) for t, v in u.table(f).items()})


# -- restriction -----------------------------------------------------------

def is_restriction(u: Universe, g: TermId, f: TermId, proper: bool = False) -> bool:
    """g is a sub-function of f: wherever g acts, f acts with the same image."""
    if g == ZERO:
        return False
    if proper and g == f:
        return False
    if g == ONE:
        return f == ONE
    for x, v in u.table(g).items():
        if not acts_on(u, f, x) or evaluate(u, f, x) != v:
            return False
    return True


def check_restriction(u: Universe, g: TermId, f: TermId, pred: Pred) -> str | None:
    """First violated clause of g = f restricted to pred, or None.

    Only clauses that can fail for a finite g are checked exhaustively: the
    pointwise clause is checked over acts(g) and acts(f).
    """
    if g == ZERO:
        return "i"
    if eval_predicate(u, pred, g, result=g) and evaluate(u, f, sigma(u, g)) != ZERO:
        return "ii"
    if g != f and evaluate(u, g, f) != ZERO:
        return "iii"
    if f == ONE:
        xs = set(u.table(g))
    else:
        xs = set(u.table(g)) | set(acts(u, f))
    for t in xs - {f, g}:
        want = evaluate(u, f, t) if eval_predicate(u, pred, t) and acts_on(u, f, t) else ZERO
        if evaluate(u, g, t) != want:
            return "iv"
    return None


def _one_candidates(u: Universe, pred: Pred) -> list[TermId]:
    if generic_value(pred) is not False:
        raise UnboundedSupport("formula may hold on infinitely many terms")
    return sorted({resolve_ref(u, r) for r in named_refs(pred)} - {ONE, ZERO})


def restrict(u: Universe, f: TermId, pred: Pred) -> TermId:
    """The sub-function of f on the emergent terms satisfying pred."""
    from .zf import is_emergent
    if f in (ZERO, PHI0):
        return PHI0
    if f == ONE:
        candidates = _one_candidates(u, pred)
        pool = candidates
    else:
        candidates = acts(u, f)
        pool = sorted(support(u, f))
    for x in pool:
        if eval_predicate(u, pred, x) and not is_emergent(u, x):
            raise NonEmergentSelected(u.name_of(x))
    g = u.intern({t: evaluate(u, f, t) for t in candidates
                  if acts_on(u, f, t) and eval_predicate(u, pred, t)})
    bad = check_restriction(u, g, f, pred)
    if bad is not None:
        raise DefinitionClauseViolated(bad, f"restricting {u.name_of(f)}")
    return g


# -- creation --------------------------------------------------------------

def create(u: Universe, f: TermId, alpha) -> TermId:
    """Relabel the images of an emergent f through alpha.

    ``alpha`` is an AlphaMap or a plain {TermId: TermId} dict; every term f
    acts on must receive exactly one image (Zero drops the entry).
    """
    from .zf import is_emergent
    if not is_emergent(u, f):
        raise GuardFailed(f"{u.name_of(f)} is not emergent")
    tab = {}
    for x in acts(u, f):
        imgs = alpha_images(u, alpha, x)
        if len(imgs) != 1:
            raise AlphaNotFunctional(u.name_of(x), imgs)
        tab[x] = imgs[0]
    return u.intern(tab)


# -- lurking and powers ----------------------------------------------------

def lurks(u: Universe, g: TermId, f: TermId) -> bool:
    """Every key and every image of g lies in the support of f."""
    if g == ZERO:
        return False
    if f == ONE:
        return True
    if g == ONE:
        return False
    s = support(u, f)
    return all(k in s and v in s for k, v in u.table(g).items())


def lurkers(u: Universe, f: TermId) -> list[TermId]:
    s = sorted(support(u, f))
    cap = u.config.full_power_support_cap
    if len(s) > cap:
        raise CapExceeded("full power support", len(s), cap)
    out = []
    for choice in product([ZERO] + s, repeat=len(s)):
        try:
            out.append(u.intern({k: v for k, v in zip(s, choice) if v != ZERO}))
        except (ForbiddenOneCycle, InvalidTable):
            continue
    return out


def full_power(u: Universe, f: TermId) -> TermId:
    """Identity-style Map on every term that lurks f."""
    if f == ONE:
        raise UnboundedSupport("full power of one")
    return identity_map(u, lurkers(u, f))


def restrictions(u: Universe, f: TermId) -> list[TermId]:
    if f == ONE:
        raise UnboundedSupport("restrictions of one")
    items = sorted(u.table(f).items()) if f != ZERO else []
    cap = u.config.restricted_power_cap
    if len(items) > cap:
        raise CapExceeded("restricted power", len(items), cap)
    return [u.intern(dict(c)) for r in range(len(items) + 1) for c in combinations(items, r)]


def restricted_power(u: Universe, f: TermId) -> TermId:
    """Identity-style Map on every restriction of f."""
    return identity_map(u, restrictions(u, f))


# -- ordered pairs ---------------------------------------------------------

class PairKind(Enum):
    KURATOWSKIAN = "kuratowskian"
    NON_KURATOWSKIAN = "non-kuratowskian"


@dataclass(frozen=True)
class PairParts:
    first: TermId
    second: TermId
    kind: PairKind


def make_pair(u: Universe, a: TermId, b: TermId) -> TermId:
    from .zf import is_emergent
    if a == ZERO:
        if b == ZERO:
            return phi(u, 1)
        raise NonEmergentComponent("a pair with first component zero needs second component zero")
    for c in (a, b):
        if c != ZERO and not is_emergent(u, c):
            raise NonEmergentComponent(f"{u.name_of(c)} is not emergent")
    alpha = identity_map(u, [a])
    beta = PHI0 if b == ZERO else identity_map(u, [a, b])
    return identity_map(u, [alpha, beta])


def _single_member(u: Universe, t: TermId) -> TermId | None:
    if not u.is_map(t):
        return None
    tab = u.table(t)
    if len(tab) == 1:
        (k, v), = tab.items()
        if k == v:
            return k
    return None


def pair_parts(u: Universe, p: TermId) -> PairParts | None:
    """Decode an ordered pair; None if p is not one."""
    if not u.is_map(p):
        return None
    tab = u.table(p)
    if any(k != v for k, v in tab.items()):
        return None
    members = sorted(tab)
    if members == [PHI0]:
        return PairParts(ZERO, ZERO, PairKind.KURATOWSKIAN)
    if len(members) == 1:
        a = _single_member(u, members[0])
        return None if a is None else PairParts(a, a, PairKind.KURATOWSKIAN)
    if len(members) != 2:
        return None
    for alpha, beta in (members, members[::-1]):
        a = _single_member(u, alpha)
        if a is None:
            continue
        if beta == PHI0:
            return PairParts(a, ZERO, PairKind.KURATOWSKIAN)
        btab = u.table(beta) if u.is_map(beta) else {}
        if len(btab) == 2 and a in btab and all(k == v for k, v in btab.items()):
            b = next(k for k in btab if k != a)
            kind = PairKind.NON_KURATOWSKIAN if b == alpha else PairKind.KURATOWSKIAN
            return PairParts(a, b, kind)
    return None


# -- union, intersection, domain, image ------------------------------------

def _require_zf(u: Universe, f: TermId):
    from .zf import is_zf_set
    if not is_zf_set(u, f):
        raise NotAZfSet(f"{u.name_of(f)} is not a ZF-set")


def union(u: Universe, f: TermId) -> TermId:
    """Identity-style Map on everything some member of f acts on."""
    _require_zf(u, f)
    out = set()
    for g in acts(u, f):
        out |= set(acts(u, g))
    return identity_map(u, out)


def intersection(u: Universe, f: TermId) -> TermId:
    """Identity-style Map on everything every member of f acts on."""
    _require_zf(u, f)
    members = acts(u, f)
    if not members:
        raise UnboundedSupport("intersection of an empty family")
    out = set(acts(u, members[0]))
    for g in members[1:]:
        out &= set(acts(u, g))
    return identity_map(u, out)


def union2(u: Universe, f: TermId, g: TermId) -> TermId:
    return union(u, identity_map(u, [f, g]))


def intersection2(u: Universe, f: TermId, g: TermId) -> TermId:
    return intersection(u, identity_map(u, [f, g]))


def domain(u: Universe, f: TermId) -> TermId:
    return identity_map(u, acts(u, f))


def image(u: Universe, f: TermId) -> TermId:
    return identity_map(u, images(u, f))


def is_injective(u: Universe, f: TermId) -> bool:
    if f == ONE:
        return True
    if f == ZERO:
        return True
    vals = list(u.table(f).values())
    return len(vals) == len(set(vals))


def inverse(u: Universe, f: TermId) -> TermId:
    """Inverse table of an injective Map."""
    if not is_injective(u, f) or f == ONE:
        raise GuardFailed(f"{u.name_of(f)} is not an injective Map")
    if f == ZERO:
        return PHI0
    return u.intern({v: k for k, v in u.table(f).items()})
