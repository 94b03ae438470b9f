"""Non-well-founded terms and depth-bounded hyperfunction verification.

Hyperfunctions are infinite, so verification is always relative to a depth.
Every member of a candidate carries a level. Declared cyclic nodes sit at
level 0, taking a successor adds one, and a restriction inherits the level of
the term it restricts. Members below the depth must have their successor in
the carrier; members at the depth are the frontier.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .algebra import identity_map, sigma
from .config import FlowConfig
from .errors import CapExceeded, GuardFailed, UnboundedSupport, UnboundName, UnknownNode
from .terms import (ONE, PHI0, ZERO, AxiomMode, Mode, TermId, Universe, acts,
                    is_identity_style)


@dataclass
class CyclicSpec:
    nodes: list[str] = field(default_factory=list)
    edges: list[tuple[str, str]] = field(default_factory=list)

    def text(self) -> str:
        members: dict[str, list[str]] = {n: [] for n in self.nodes}
        for a, b in self.edges:
            members[a].append(b)
        return "\n".join(f"node {n}: {', '.join(ms)}".rstrip() for n, ms in members.items())


_NODE = re.compile(r"node\s+([A-Za-z_][A-Za-z0-9_']*)\s*:\s*(.*)$")


def parse_cyclic_spec(text: str) -> CyclicSpec:
    spec = CyclicSpec()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _NODE.fullmatch(line)
        if not m:
            from .errors import UniverseSyntaxError
            raise UniverseSyntaxError(lineno, "expected 'node NAME: member, ...'")
        name = m.group(1)
        if name in spec.nodes:
            raise UnknownNode(f"node {name} declared twice")
        spec.nodes.append(name)
        for member in filter(None, (s.strip() for s in m.group(2).split(","))):
            spec.edges.append((name, member))
    return spec


def build_cyclic_universe(spec: CyclicSpec, config: FlowConfig | None = None,
                          u: Universe | None = None) -> Universe:
    """Declare every node, then give each an identity-style table of members."""
    if u is None:
        u = Universe(Mode.CYCLIC, config)
    ids = {name: u.declare(name) for name in spec.nodes}
    members: dict[str, list[TermId]] = {name: [] for name in spec.nodes}
    for a, b in spec.edges:
        if a not in ids:
            raise UnknownNode(a)
        if b in ids:
            members[a].append(ids[b])
        else:
            try:
                members[a].append(u.resolve(b))
            except UnboundName:
                raise UnknownNode(b) from None
    for name, ms in members.items():
        u.define(ids[name], {m: m for m in ms})
    return u


# -- well-foundedness ------------------------------------------------------

@dataclass(frozen=True)
class WellFoundedness:
    holds: bool
    witness: TermId | None = None
    cycle: tuple[TermId, ...] = ()


def check_well_foundedness(u: Universe, f: TermId) -> WellFoundedness:
    """Look for a member of f sharing no member with f."""
    if f in (ZERO, PHI0):
        raise GuardFailed("the well-foundedness axiom says nothing about zero or phi0")
    if f == ONE:
        raise UnboundedSupport("one acts on every term")
    members = acts(u, f)
    inside = set(members)
    for x in members:
        if u.is_map(x) and not any(t in inside for t in u.table(x) if t != x):
            return WellFoundedness(True, witness=x)
        if not u.is_map(x):
            return WellFoundedness(True, witness=x)
    # every member meets f: walk until a member repeats
    path, seen = [], {}
    x = members[0]
    while x not in seen:
        seen[x] = len(path)
        path.append(x)
        x = min(t for t in u.table(x) if t in inside and t != x)
    return WellFoundedness(False, cycle=tuple(path[seen[x]:]))


# -- hyperfunctions --------------------------------------------------------

@dataclass(frozen=True)
class ConfirmedUpTo:
    depth: int


@dataclass(frozen=True)
class Refuted:
    clause: str
    witness: TermId | None


def cyclic_successor(u: Universe, f: TermId) -> TermId:
    """Successor of any Map, cyclic nodes included."""
    return sigma(u, f)


def _sub_tables(u: Universe, x: TermId):
    items = sorted(u.table(x).items())
    cap = u.config.restricted_power_cap
    if len(items) > cap:
        raise CapExceeded("restrictions", len(items), cap)
    for r in range(1, len(items) + 1):
        for c in combinations(items, r):
            yield dict(c)


def _sigma_lookup(u: Universe, x: TermId) -> TermId | None:
    tab = dict(u.table(x))
    tab[x] = x
    return u.lookup(tab)


def member_levels(u: Universe, members) -> dict[TermId, int]:
    """Least derivation level of each member (see module docstring)."""
    members = set(members)
    order = sorted(members)
    children = {x: [] for x in members}
    for x in order:
        for sub in _sub_tables(u, x):
            y = u.lookup(sub)
            if y in members and y != x:
                children[x].append((y, 0))
    for x in order:
        s = _sigma_lookup(u, x)
        if s in members:
            children[x].append((s, 1))
    level: dict[TermId, int] = {}
    seeds = [t for t in order if u.is_declared(t)]
    pending = [t for t in order if not u.is_declared(t)]
    while True:
        dq = deque()
        for t in seeds:
            if t not in level:
                level[t] = 0
                dq.append(t)
        while dq:
            x = dq.popleft()
            for y, w in children[x]:
                if level.get(y, 1 << 30) > level[x] + w:
                    level[y] = level[x] + w
                    (dq.appendleft if w == 0 else dq.append)(y)
        rest = [t for t in pending if t not in level]
        if not rest:
            return level
        seeds = [rest[0]]


def materialize_hyperfunction(u: Universe, base, depth: int) -> TermId:
    """Close a set of identity-style terms under successors up to ``depth``
    levels and under non-empty restrictions, and return the carrier."""
    level = {t: 0 for t in base}
    work = deque(sorted(level))
    while work:
        x = work.popleft()
        lx = level[x]
        nxt = []
        if lx < depth:
            nxt.append((cyclic_successor(u, x), lx + 1))
        nxt.extend((u.intern(sub), lx) for sub in _sub_tables(u, x))
        for y, ly in nxt:
            if y not in level or level[y] > ly:
                level[y] = ly
                work.append(y)
    return identity_map(u, level)


def check_hyperfunction(u: Universe, psi: TermId, depth: int):
    """ConfirmedUpTo(depth) or Refuted(clause, witness); never an outright yes."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if psi == ONE or not is_identity_style(u, psi) or not u.table(psi):
        return Refuted("i", psi)
    members = acts(u, psi)
    inside = set(members)
    for x in members:
        if not is_identity_style(u, x):
            return Refuted("ii", x)
        for sub in _sub_tables(u, x):
            y = u.intern(sub)
            if y not in inside:
                return Refuted("iii", y)
    level = member_levels(u, members)
    for x in members:
        if not any(t in inside for t in u.table(x) if t != x):
            return Refuted("ii", x)
        if level[x] < depth and cyclic_successor(u, x) not in inside:
            return Refuted("ii", x)
    return ConfirmedUpTo(depth)


def generate_sigma_chain(u: Universe, x0: TermId, k: int) -> TermId:
    """Identity-style Map on x0, sigma(x0), ..., sigma^k(x0)."""
    if x0 in (ZERO, ONE):
        raise GuardFailed("the successor of a sentinel is zero")
    cap = u.config.sigma_chain_cap
    if k > cap:
        raise CapExceeded("sigma chain", k, cap)
    chain = [x0]
    for _ in range(k):
        chain.append(cyclic_successor(u, chain[-1]))
    return identity_map(u, chain)


def set_axiom_mode(u: Universe, mode: AxiomMode) -> None:
    if u.mode is Mode.WELL_FOUNDED and mode is AxiomMode.HYPERFUNCTIONS:
        raise GuardFailed("hyperfunctions need a cyclic universe")
    u.axiom_mode = mode
    u.cache.clear()
