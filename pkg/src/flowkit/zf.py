"""Set-theoretic layer: hereditary predicates, equipotence and the ZF axiom suite."""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .algebra import (identity_map, make_pair, phi, restrict, restricted_power,
                      create, image, is_restriction, successor, union, union2)
from .errors import CapExceeded, FlowError, NotAZfSet, NotEquipotent
from .predicate import (AlphaIdentity, Pred, alpha_images, eval_predicate,
                        parse_predicate)
from .report import CheckReport
from .terms import (ONE, PHI0, ZERO, AxiomMode, TermId, Universe, acts,
                    acts_on, evaluate, is_identity_style)


# -- hereditary predicates -------------------------------------------------

def _hereditary(u: Universe, f: TermId, key: str, local, children) -> bool:
    """Decide a hereditary property over everything reachable from f.

    Well-founded terms admit one answer. Around cycles the least fixpoint is
    used under the well-foundedness axiom and the greatest under the
    hyperfunctions axiom.
    """
    cache = u.cache.setdefault(key, {})
    if f in cache:
        return cache[f]
    nodes, stack = set(), [f]
    while stack:
        t = stack.pop()
        if t in nodes or t in cache:
            continue
        nodes.add(t)
        if local(t):
            stack.extend(children(t))
    ok = {t: False for t in nodes}
    order = sorted(nodes)

    def fine(t):
        return local(t) and all(cache[c] if c in cache else ok[c] for c in children(t))

    if u.axiom_mode is AxiomMode.HYPERFUNCTIONS:
        ok = {t: local(t) for t in nodes}
        changed = True
        while changed:
            changed = False
            for t in order:
                if ok[t] and not fine(t):
                    ok[t] = False
                    changed = True
    else:
        changed = True
        while changed:
            changed = False
            for t in order:
                if not ok[t] and fine(t):
                    ok[t] = True
                    changed = True
    cache.update(ok)
    return cache[f]


def is_zf_set(u: Universe, f: TermId) -> bool:
    """Identity-style Map acting only on ZF-sets, all the way down."""
    if f in (ZERO, ONE):
        return False
    return _hereditary(u, f, "zf", lambda t: is_identity_style(u, t),
                       lambda t: list(u.table(t)))


def is_emergent(u: Universe, f: TermId) -> bool:
    """Map whose keys and images are all emergent, all the way down."""
    if f in (ZERO, ONE):
        return False

    def children(t):
        tab = u.table(t)
        return list(tab) + list(tab.values())
    return _hereditary(u, f, "emergent", u.is_map, children)


def membership(u: Universe, x: TermId, f: TermId) -> bool:
    return is_identity_style(u, f) and is_zf_set(u, x) and acts_on(u, f, x)


def is_ordinal(u: Universe, t: TermId) -> bool:
    if not is_zf_set(u, t):
        return False
    members = acts(u, t)
    if not all(is_restriction(u, x, t) for x in members):
        return False
    if not members:
        return True
    return any(not any(acts_on(u, y, s) for s in members) for y in members)


# -- equipotence -----------------------------------------------------------

@dataclass(frozen=True)
class Connector:
    tau: TermId


def is_connector(u: Universe, tau: TermId, g: TermId, h: TermId) -> bool:
    """Check the four connector clauses over every term that matters."""
    if ONE in (tau, g, h):
        return False
    ta, ga, ha = set(acts(u, tau)), set(acts(u, g)), set(acts(u, h))
    for t in ta:
        if evaluate(u, tau, evaluate(u, tau, t)) != t:
            return False
        if t not in ga and t not in ha:
            return False
    for t in ga:
        if t not in ta or not acts_on(u, h, evaluate(u, tau, t)):
            return False
    for t in ha:
        if t not in ta or not acts_on(u, g, evaluate(u, tau, t)):
            return False
    return True


def connector(u: Universe, g: TermId, h: TermId) -> Connector | None:
    """A connector of g/h, or None when they act on different counts."""
    ga, ha = acts(u, g), acts(u, h)
    if len(ga) != len(ha):
        return None
    if not ga:
        return Connector(ZERO)
    shared = set(ga) & set(ha)
    tab = {t: t for t in shared}
    for x, y in zip([t for t in ga if t not in shared], [t for t in ha if t not in shared]):
        tab[x] = y
        tab[y] = x
    return Connector(u.intern(tab))


def is_equipotent(u: Universe, g: TermId, h: TermId) -> bool:
    return connector(u, g, h) is not None


def disjoint_copy(u: Universe, f: TermId) -> TermId:
    """Identity-style Map on as many fresh ordinals as f has members."""
    n = len(acts(u, f))
    avoid = set(acts(u, f)) | {f}
    out, k = [], 0
    while len(out) < n:
        p = phi(u, k)
        if p not in avoid:
            out.append(p)
        k += 1
    return identity_map(u, out)


def is_finite(u: Universe, f: TermId) -> bool:
    if f == ONE:
        return False
    if not acts(u, f):
        return True  # empty carrier counts as finite by convention
    h = disjoint_copy(u, f)
    tau = connector(u, f, h)
    return tau is not None and not is_equipotent(u, tau.tau, f)


def cardinality(u: Universe, f: TermId) -> TermId:
    if not is_zf_set(u, f):
        raise NotAZfSet(f"{u.name_of(f)} is not a ZF-set")
    c = phi(u, len(acts(u, f)))
    assert is_ordinal(u, c) and is_equipotent(u, c, f)
    return c


def equipotent_successors_check(u: Universe, f: TermId, g: TermId) -> bool:
    """Extend a connector of f/g to one of their successors and verify it."""
    for t in (f, g):
        if not is_zf_set(u, t):
            raise NotAZfSet(f"{u.name_of(t)} is not a ZF-set")
    c = connector(u, f, g)
    if c is None:
        raise NotEquipotent(f"{u.name_of(f)} and {u.name_of(g)}")
    tab = {}
    if c.tau != ZERO:
        tab = {x: y for x, y in u.table(c.tau).items() if x not in (f, g)}
    tab[f] = g
    tab[g] = f
    tau2 = u.intern(tab)
    return is_connector(u, tau2, successor(u, f), successor(u, g))


# -- rank universes and closure -------------------------------------------

def generate_rank_universe(u: Universe, k: int, verify: bool = True) -> list[TermId]:
    """All ZF-sets of rank at most k, by iterating the restricted power."""
    if k > u.config.rank_cap:
        raise CapExceeded("rank", k, u.config.rank_cap)
    family = [PHI0]
    levels = [family]
    for _ in range(k):
        family = acts(u, restricted_power(u, identity_map(u, family)))
        levels.append(family)
    if verify:
        report = rank_closure_report(u, levels)
        if not report.ok:
            raise FlowError("rank universe not closed:\n" + report.text())
    return family


def rank_closure_report(u: Universe, levels: Sequence[Sequence[TermId]]) -> CheckReport:
    """Pairs and powers of rank k-1 sets, and unions of rank k sets, stay inside."""
    rep = CheckReport()
    top = set(levels[-1])
    below = levels[-2] if len(levels) > 1 else []
    for x, y in combinations(below, 2):
        p = identity_map(u, [x, y])
        rep.add(p in top, "check", "closure-pair", [u.name_of(x), u.name_of(y)])
    for x in below:
        rep.add(restricted_power(u, x) in top, "check", "closure-power", [u.name_of(x)])
    for x in levels[-1]:
        rep.add(union(u, x) in top, "check", "closure-union", [u.name_of(x)])
    return rep


def random_zf_sets(u: Universe, pool: Sequence[TermId], n: int, max_members: int,
                   seed: int = 0) -> list[TermId]:
    """n random identity-style Maps over subsets of a ZF-set pool."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        size = rng.randint(0, min(max_members, len(pool)))
        out.append(identity_map(u, rng.sample(list(pool), size)))
    return out


# -- translated ZF axioms --------------------------------------------------

class ZfAxiom(Enum):
    ZF1 = "ZF1"
    ZF2 = "ZF2"
    ZF3 = "ZF3"
    ZF4 = "ZF4"
    ZF5 = "ZF5"
    ZF6 = "ZF6"
    ZF7 = "ZF7"
    ZF8 = "ZF8"


DEFAULT_SEPARATION = "not x = phi0"


def check_zf_axiom(u: Universe, axiom: ZfAxiom | str, samples: Iterable[TermId],
                   pred: Pred | None = None, alpha=None, bound: int | None = None) -> CheckReport:
    """Evaluate one translated ZF axiom over ZF-set samples, one line per instance."""
    ax = ZfAxiom(axiom) if isinstance(axiom, str) else axiom
    samples = sorted(set(samples))
    for s in samples:
        if not is_zf_set(u, s):
            raise NotAZfSet(f"sample {u.name_of(s)} is not a ZF-set")
    rep = CheckReport()
    n = u.name_of
    tag = ax.value

    def line(ok, witness, note=""):
        rep.add(ok, "axiom", tag, [n(w) for w in witness], note)

    if ax is ZfAxiom.ZF1:
        for i, x in enumerate(samples):
            for y in samples[i + 1:]:
                same = set(acts(u, x)) == set(acts(u, y))
                line(not same, [x, y])
    elif ax is ZfAxiom.ZF2:
        line(is_zf_set(u, PHI0) and not acts(u, PHI0), [PHI0])
        for x in samples:
            line(bool(acts(u, x)) or x == PHI0, [x])
    elif ax is ZfAxiom.ZF3:
        for i, x in enumerate(samples):
            for y in samples[i:]:
                z = identity_map(u, [x, y])
                ok = is_zf_set(u, z) and all(membership(u, t, z) for t in (x, y)) \
                    and set(acts(u, z)) <= {x, y}
                line(ok, [x, y, z])
    elif ax is ZfAxiom.ZF4:
        for x in samples:
            try:
                y = restricted_power(u, x)
            except CapExceeded as e:
                line(False, [x], f"cap={e.cap}")
                continue
            members = acts(u, x)
            subsets = {identity_map(u, c) for r in range(len(members) + 1)
                       for c in combinations(members, r)}
            ok = is_zf_set(u, y) and set(acts(u, y)) == subsets \
                and all(is_restriction(u, z, x) for z in acts(u, y))
            line(ok, [x, y])
    elif ax is ZfAxiom.ZF5:
        pred = pred if pred is not None else parse_predicate(DEFAULT_SEPARATION)
        for x in samples:
            try:
                y = restrict(u, x, pred)
            except FlowError as e:
                line(False, [x], f"error={type(e).__name__}")
                continue
            want = {z for z in acts(u, x) if eval_predicate(u, pred, z)}
            line(is_zf_set(u, y) and set(acts(u, y)) == want, [x, y])
    elif ax is ZfAxiom.ZF6:
        alpha = alpha if alpha is not None else AlphaIdentity()
        for z in samples:
            w = image(u, create(u, z, alpha))
            want = set()
            for s in acts(u, z):
                want |= {t for t in alpha_images(u, alpha, s) if t != ZERO}
            ok = (w == PHI0 or is_zf_set(u, w)) and set(acts(u, w)) == want
            line(ok, [z, w])
    elif ax is ZfAxiom.ZF7:
        for x in samples:
            y = union(u, x)
            pool = set(acts(u, y))
            for t in acts(u, x):
                pool |= set(acts(u, t))
            ok = is_zf_set(u, y) and all(
                acts_on(u, y, z) == any(acts_on(u, t, z) for t in acts(u, x)) for z in pool)
            line(ok, [x, y])
    elif ax is ZfAxiom.ZF8:
        bound = bound if bound is not None else u.config.infinity_bound
        top = phi(u, bound)
        line(membership(u, PHI0, top), [PHI0, top], f"bounded={bound}")
        for k in range(bound - 1):
            y = phi(u, k)
            step = union2(u, y, identity_map(u, [y]))
            ok = membership(u, y, top) and membership(u, step, top) and step == successor(u, y)
            line(ok, [y, step], f"bounded={bound}")
    return rep


def check_zf_suite(u: Universe, samples: Iterable[TermId], pred: Pred | None = None,
                   alphas=None, bound: int | None = None) -> CheckReport:
    samples = list(samples)
    rep = CheckReport()
    for ax in ZfAxiom:
        if ax is ZfAxiom.ZF6:
            for alpha in alphas or [AlphaIdentity()]:
                rep.extend(check_zf_axiom(u, ax, samples, alpha=alpha))
        else:
            rep.extend(check_zf_axiom(u, ax, samples, pred=pred, bound=bound))
    return rep


# -- the model <u, [], => --------------------------------------------------

@dataclass(frozen=True)
class ModelTerms:
    pairs: TermId
    mem: TermId
    eq: TermId


def build_model(u: Universe, carrier: Iterable[TermId]) -> ModelTerms:
    carrier = sorted(set(carrier))
    for c in carrier:
        if not is_zf_set(u, c):
            raise NotAZfSet(f"{u.name_of(c)} is not a ZF-set")
    if len(carrier) ** 2 > u.config.model_pair_cap:
        raise CapExceeded("model pairs", len(carrier) ** 2, u.config.model_pair_cap)
    pairs, mem, eq = [], [], []
    for a in carrier:
        for b in carrier:
            p = make_pair(u, a, b)
            pairs.append(p)
            if acts_on(u, a, b):
                mem.append(p)
            if a == b:
                eq.append(p)
    return ModelTerms(identity_map(u, pairs), identity_map(u, mem), identity_map(u, eq))
