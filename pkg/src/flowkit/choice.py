"""Choice witnesses for surjections and the staged well-ordering attempt."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

from .algebra import (create, domain, identity_map, image, is_injective,
                      is_restriction, lurks, phi)
from .errors import GuardFailed
from .predicate import AlphaInverseOf
from .terms import TermId, Universe, acts, evaluate, images
from .zf import is_emergent, is_zf_set


@dataclass
class ChoiceSelector:
    """Which witness to pick when a choice axiom only promises existence.

    ``deterministic`` draws from a PRNG seeded once per selector, so two fresh
    selectors with the same seed make the same choices. ``adversarial`` always
    perturbs the assignment of the smallest image, which is what breaks
    extension between well-ordering stages.
    """

    strategy: str = "deterministic"
    seed: int = 0
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        if self.strategy not in ("deterministic", "adversarial"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        self.rng = random.Random(self.seed)

    @classmethod
    def deterministic(cls, seed: int = 0) -> "ChoiceSelector":
        return cls("deterministic", seed)

    @classmethod
    def adversarial(cls) -> "ChoiceSelector":
        return cls("adversarial")

    def pick(self, options: list[TermId]) -> TermId:
        if self.strategy == "adversarial":
            return options[0]
        return options[self.rng.randrange(len(options))]

    def pick_pair(self, options: list[TermId]) -> tuple[TermId, TermId]:
        if self.strategy == "adversarial":
            return options[0], options[-1]
        a, b = self.rng.sample(options, 2)
        return a, b


class WellOrderVariant(Enum):
    # whether the choice witness may be a restriction of the surjection
    NON_RESTRICTING = "f11"
    RESTRICTING = "f11prime"


def _guarded(u: Universe, f: TermId) -> dict[TermId, TermId]:
    if not is_emergent(u, f):
        raise GuardFailed(f"{u.name_of(f)} is not emergent")
    tab = u.table(f)
    if not tab:
        raise GuardFailed(f"{u.name_of(f)} acts on nothing")
    return tab


def _one_preimage_each(u: Universe, tab, sel: ChoiceSelector) -> dict[TermId, TermId]:
    pre: dict[TermId, list[TermId]] = {}
    for k in sorted(tab):
        pre.setdefault(tab[k], []).append(k)
    return {sel.pick(ks): v for v, ks in sorted(pre.items())}


def restriction_choice(u: Universe, f: TermId, sel: ChoiceSelector) -> TermId:
    """An injective restriction of f with the same image."""
    return u.intern(_one_preimage_each(u, _guarded(u, f), sel))


def f_choice(u: Universe, f: TermId, sel: ChoiceSelector) -> TermId:
    """Injective c lurking f with f's image that is not a restriction of f."""
    tab = _guarded(u, f)
    if len(set(tab.values())) < 2:
        raise GuardFailed(f"{u.name_of(f)} is constant; use the trivial choice")
    c = _one_preimage_each(u, tab, sel)
    by_image = {v: k for k, v in c.items()}
    v1, v2 = sel.pick_pair(sorted(by_image))
    c[by_image[v1]], c[by_image[v2]] = v2, v1
    return u.intern(c)


def f_trivial_choice(u: Universe, f: TermId) -> TermId:
    """Single-entry restriction of a constant f at its least member."""
    tab = _guarded(u, f)
    if len(set(tab.values())) != 1:
        raise GuardFailed(f"{u.name_of(f)} is not constant")
    r = min(tab)
    return u.intern({r: tab[r]})


def choice_witness_violations(u: Universe, c: TermId, f: TermId) -> list[str]:
    """Names of the choice-witness conditions c fails for f."""
    bad = []
    if not lurks(u, c, f):
        bad.append("lurks")
    if not is_injective(u, c):
        bad.append("injective")
    if not is_restriction(u, domain(u, c), domain(u, f)):
        bad.append("domain")
    if image(u, c) != image(u, f):
        bad.append("image")
    if is_restriction(u, c, f):
        bad.append("not-restriction")
    return bad


def partition_injection(u: Universe, f: TermId, sel: ChoiceSelector,
                        variant: WellOrderVariant = WellOrderVariant.NON_RESTRICTING) -> TermId:
    """Injection from Im f back into Dom f, built as the inverse of a choice."""
    tab = _guarded(u, f)
    if variant is WellOrderVariant.RESTRICTING:
        c = restriction_choice(u, f, sel)
    elif len(set(tab.values())) == 1:
        c = f_trivial_choice(u, f)
    else:
        c = f_choice(u, f, sel)
    carrier = identity_map(u, set(acts(u, c)) | set(images(u, f)))
    return create(u, carrier, AlphaInverseOf(c))


@dataclass(frozen=True)
class Stage:
    step: int
    choice: TermId
    extends_previous: bool
    injection: TermId


@dataclass
class WellOrderTrace:
    stages: list[Stage]
    order: list[TermId]

    def lines(self, u: Universe) -> list[str]:
        return [f"step={s.step} choice={u.name_of(s.choice)} "
                f"extends={str(s.extends_previous).lower()}" for s in self.stages]


def attempt_well_order(u: Universe, f: TermId, variant: WellOrderVariant,
                       sel: ChoiceSelector) -> WellOrderTrace:
    """Assign ordinals to the members of f one stage at a time.

    Stage k maps the terms fixed so far to their ordinals and everything else
    to phi_k, then asks the partition injection which term gets phi_k.
    """
    if not is_zf_set(u, f):
        raise GuardFailed(f"{u.name_of(f)} is not a ZF-set")
    members = acts(u, f)
    fixed: list[TermId] = []
    prev = None
    stages = []
    for k in range(len(members)):
        rank = {t: j for j, t in enumerate(fixed)}
        fk = u.intern({t: phi(u, rank.get(t, k)) for t in members})
        g = partition_injection(u, fk, sel, variant)
        extends = prev is None or is_restriction(u, prev, g)
        fixed = [evaluate(u, g, phi(u, j)) for j in range(k + 1)]
        stages.append(Stage(k, fixed[k], extends, g))
        prev = g
    return WellOrderTrace(stages, fixed)
