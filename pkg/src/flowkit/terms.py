"""Hash-consed term store.

Every term is a node in a :class:`Universe`. Three nodes always exist: the
rigid function ``ZERO``, the identity ``ONE`` and the empty map ``PHI0``.
All other terms are finite Maps whose tables list the terms they act on.

In well-founded mode interning is canonical, so two TermIds are equal exactly
when the terms are extensionally equal. Cyclic mode additionally allows
declared nodes whose tables may point back at themselves.
"""
from __future__ import annotations

from enum import Enum
from typing import Iterable, Mapping

from .config import FlowConfig
from .errors import (CycleInWellFoundedMode, FlowError, ForbiddenOneCycle,
                     InvalidTable, UnboundedSupport)

TermId = int

ZERO: TermId = 0
ONE: TermId = 1
PHI0: TermId = 2
SENTINELS = (ZERO, ONE)


class Mode(Enum):
    WELL_FOUNDED = "well-founded"
    CYCLIC = "cyclic"


class AxiomMode(Enum):
    WELL_FOUNDEDNESS = "well-foundedness"
    HYPERFUNCTIONS = "hyperfunctions"


RESERVED = {"zero", "one", "x", "self", "true", "false", "and", "or", "not",
            "E", "Z", "acts", "subset", "term", "node", "cyclic"}


def is_reserved(name: str) -> bool:
    return name in RESERVED or (name.startswith("phi") and name[3:].isdigit())


class Universe:
    def __init__(self, mode: Mode = Mode.WELL_FOUNDED, config: FlowConfig | None = None,
                 axiom_mode: AxiomMode | None = None):
        self.mode = mode
        self.config = config or FlowConfig()
        if axiom_mode is None:
            axiom_mode = (AxiomMode.HYPERFUNCTIONS if mode is Mode.CYCLIC
                          else AxiomMode.WELL_FOUNDEDNESS)
        if mode is Mode.WELL_FOUNDED and axiom_mode is AxiomMode.HYPERFUNCTIONS:
            raise FlowError("hyperfunctions need a cyclic universe")
        self.axiom_mode = axiom_mode
        # tables[t] is None for the two sentinels
        self._tables: list[dict[TermId, TermId] | None] = [None, None, {}]
        self._index: dict[tuple, TermId] = {(): PHI0}
        self._cyclic: list[bool] = [False, False, False]
        self._declared: set[TermId] = set()
        self._undefined: set[TermId] = set()
        self.names: dict[str, TermId] = {}
        self._names_by_id: dict[TermId, str] = {}
        self.phi_ladder: list[TermId] = [PHI0]
        self.phi_index: dict[TermId, int] = {PHI0: 0}
        self.cache: dict[str, dict] = {}

    # -- basic access -------------------------------------------------

    def __len__(self) -> int:
        return len(self._tables)

    def __contains__(self, t) -> bool:
        return isinstance(t, int) and 0 <= t < len(self._tables)

    def ids(self) -> range:
        return range(len(self._tables))

    def is_map(self, t: TermId) -> bool:
        return t not in SENTINELS

    def table(self, t: TermId) -> dict[TermId, TermId]:
        """The stored table of a Map. Callers must not mutate it."""
        tab = self._tables[t]
        if tab is None:
            raise FlowError(f"{self.name_of(t)} is a sentinel and has no table")
        return tab

    def is_cyclic_node(self, t: TermId) -> bool:
        return self._cyclic[t]

    def is_declared(self, t: TermId) -> bool:
        return t in self._declared

    # -- names ----------------------------------------------------------

    def bind(self, name: str, t: TermId) -> TermId:
        if is_reserved(name):
            raise FlowError(f"{name!r} is a reserved word")
        self._check_id(t)
        old = self.names.get(name)
        if old is not None and self._names_by_id.get(old) == name:
            del self._names_by_id[old]
        self.names[name] = t
        self._names_by_id.setdefault(t, name)
        return t

    def resolve(self, name: str) -> TermId:
        from .errors import UnboundName
        if name == "zero":
            return ZERO
        if name == "one":
            return ONE
        if name.startswith("phi") and name[3:].isdigit():
            from .algebra import phi
            return phi(self, int(name[3:]))
        if name not in self.names:
            raise UnboundName(name)
        return self.names[name]

    def name_of(self, t: TermId) -> str:
        if t == ZERO:
            return "zero"
        if t == ONE:
            return "one"
        if t in self._names_by_id:
            return self._names_by_id[t]
        if t in self.phi_index:
            return f"phi{self.phi_index[t]}"
        return f"_t{t}"

    def render(self, t: TermId) -> str:
        """Name if the term has a readable one, else its table literal."""
        name = self.name_of(t)
        if not name.startswith("_t"):
            return name
        tab = self.table(t)
        body = ", ".join(f"{self.name_of(k)} -> {self.name_of(v)}"
                         for k, v in sorted(tab.items()))
        return "{" + body + "}"

    # -- construction ---------------------------------------------------

    def _check_id(self, t):
        if t not in self:
            raise FlowError(f"unknown term id {t!r}")

    def canonical(self, table, owner: TermId | None = None) -> tuple:
        """Validate a table and return its canonical sorted form."""
        items = table.items() if isinstance(table, Mapping) else table
        out: dict[TermId, TermId] = {}
        for k, v in items:
            self._check_id(k)
            self._check_id(v)
            if k in out and out[k] != v:
                raise InvalidTable(f"key {self.name_of(k)} has two images")
            out[k] = v
        for k in [k for k, v in out.items() if v == ZERO or k == owner]:
            del out[k]
        if ZERO in out:
            raise InvalidTable("zero cannot be mapped to anything but zero")
        if out.get(ONE) == ONE:
            raise InvalidTable("only one itself is flexible with one")
        one_img = out.get(ONE)
        if one_img is not None and out.get(one_img) == ONE:
            raise ForbiddenOneCycle(self.name_of(one_img))
        return tuple(sorted(out.items()))

    def intern(self, table: Mapping | Iterable = ()) -> TermId:
        key = self.canonical(table)
        hit = self._index.get(key)
        if hit is not None:
            if self.mode is Mode.WELL_FOUNDED and any(hit in kv for kv in key):
                raise CycleInWellFoundedMode(f"{self.name_of(hit)} refers to itself")
            return hit
        t = len(self._tables)
        self._tables.append(dict(key))
        self._cyclic.append(any(self._cyclic[k] or self._cyclic[v] for k, v in key))
        self._index[key] = t
        return t

    def lookup(self, table) -> TermId | None:
        """Existing term carrying exactly this table, without creating one."""
        return self._index.get(self.canonical(table))

    def declare(self, name: str | None = None) -> TermId:
        """Create a cyclic node with identity independent of its table."""
        if self.mode is not Mode.CYCLIC:
            raise CycleInWellFoundedMode("declared nodes need a cyclic universe")
        t = len(self._tables)
        self._tables.append({})
        self._cyclic.append(True)
        self._declared.add(t)
        self._undefined.add(t)
        if name is not None:
            self.bind(name, t)
        return t

    def define(self, t: TermId, table) -> TermId:
        if t not in self._undefined:
            raise FlowError(f"{self.name_of(t)} is not an undefined declared node")
        key = self.canonical(table, owner=t)
        self._tables[t] = dict(key)
        self._undefined.discard(t)
        self._index.setdefault(key, t)
        self.cache.clear()
        return t


# -- kernel operations ---------------------------------------------------

def intern(u: Universe, table) -> TermId:
    return u.intern(table)


def evaluate(u: Universe, f: TermId, x: TermId) -> TermId:
    """f(x): self-reference first, then the sentinel rules, then the table."""
    if x == f:
        return f
    if f == ZERO or x == ZERO:
        return ZERO
    if f == ONE:
        return x
    return u.table(f).get(x, ZERO)


def acts_on(u: Universe, f: TermId, t: TermId) -> bool:
    return t != f and evaluate(u, f, t) != ZERO


def acts(u: Universe, f: TermId) -> list[TermId]:
    """Sorted list of terms a Map acts on."""
    if f == ZERO:
        return []
    if f == ONE:
        raise UnboundedSupport("one acts on every term but itself")
    return sorted(u.table(f))


def images(u: Universe, f: TermId) -> list[TermId]:
    if f == ZERO:
        return []
    if f == ONE:
        raise UnboundedSupport("one has every term as an image")
    return sorted(set(u.table(f).values()))


def support(u: Universe, f: TermId) -> set[TermId]:
    """Terms f acts on together with f's images, Zero excluded."""
    if f == ZERO:
        return set()
    if f == ONE:
        raise UnboundedSupport("one has unbounded support")
    tab = u.table(f)
    return set(tab) | set(tab.values())


def is_identity_style(u: Universe, f: TermId) -> bool:
    return u.is_map(f) and all(k == v for k, v in u.table(f).items())


def similar(u: Universe, f: TermId, g: TermId) -> bool:
    """Same actions and same images away from f and g themselves."""
    if f == g:
        return True
    if ONE in (f, g):
        return False
    keys = set(acts(u, f)) | set(acts(u, g)) | {f, g}
    for t in keys:
        if acts_on(u, f, t) != acts_on(u, g, t):
            return False
        if t not in (f, g) and evaluate(u, f, t) != evaluate(u, g, t):
            return False
    return True


def reachable(u: Universe, roots: Iterable[TermId]) -> set[TermId]:
    seen: set[TermId] = set()
    stack = list(roots)
    while stack:
        t = stack.pop()
        if t in seen:
            continue
        seen.add(t)
        if u.is_map(t):
            for k, v in u.table(t).items():
                stack.append(k)
                stack.append(v)
    return seen


def extensional_eq(u: Universe, f: TermId, g: TermId) -> bool:
    """Identity for well-founded terms; largest bisimulation otherwise.

    Bisimulation compares tables entry-wise up to the relation itself, with
    each node's implicit self-entry left out on both sides.
    """
    if f == g:
        return True
    if not (u.is_cyclic_node(f) or u.is_cyclic_node(g)):
        return False
    nodes = sorted(reachable(u, (f, g)))
    block = {t: (t if t in SENTINELS else -1) for t in nodes}
    count = len(set(block.values()))
    while True:
        sigs: dict[tuple, int] = {}
        new = {}
        for t in nodes:
            if t in SENTINELS:
                sig = ("s", t)
            else:
                sig = (block[t], frozenset((block[k], block[v]) for k, v in u.table(t).items()))
            new[t] = sigs.setdefault(sig, len(sigs))
        block = new
        if len(sigs) == count:
            break
        count = len(sigs)
    return block[f] == block[g]
