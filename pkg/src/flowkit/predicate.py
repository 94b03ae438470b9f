"""A small first-order formula language over one bound variable ``x``.

    pred    := or_expr
    or_expr := and_expr ("or" and_expr)*
    and_expr:= unary ("and" unary)*
    unary   := "not" unary | "(" pred ")" | atom
    atom    := "x" ("=" | "!=") ref | "E(x)" | "Z(x)" | "acts(" ref "," "x)"
             | "acts(x," ref ")" | "subset(x," ref ")" | "true" | "false"
    ref     := NAME | "zero" | "one" | "phi" NAT | "self" | "x"

``self`` names the term being constructed by a restriction; ``x`` on the
right of ``=`` is the bound variable itself.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import PredicateSyntaxError, UnboundName
from .terms import ONE, ZERO, TermId, Universe, acts_on

# -- term references ----------------------------------------------------


@dataclass(frozen=True)
class Named:
    name: str


@dataclass(frozen=True)
class ZeroRef:
    pass


@dataclass(frozen=True)
class OneRef:
    pass


@dataclass(frozen=True)
class PhiRef:
    n: int


@dataclass(frozen=True)
class VarRef:
    pass


@dataclass(frozen=True)
class SelfRef:
    pass


# A bare TermId is also accepted wherever a reference is, for programmatic use.
TermRef = Union[Named, ZeroRef, OneRef, PhiRef, VarRef, SelfRef, int]

# -- formulas -------------------------------------------------------------


@dataclass(frozen=True)
class Eq:
    ref: TermRef


@dataclass(frozen=True)
class Neq:
    ref: TermRef


@dataclass(frozen=True)
class IsEmergent:
    pass


@dataclass(frozen=True)
class IsZfSet:
    pass


@dataclass(frozen=True)
class ActsOnX:
    """``acts(ref, x)``: the referenced term acts on x."""
    ref: TermRef


@dataclass(frozen=True)
class XActsOn:
    """``acts(x, ref)``: x acts on the referenced term."""
    ref: TermRef


@dataclass(frozen=True)
class SubsetOf:
    ref: TermRef


@dataclass(frozen=True)
class And:
    left: "Pred"
    right: "Pred"


@dataclass(frozen=True)
class Or:
    left: "Pred"
    right: "Pred"


@dataclass(frozen=True)
class Not:
    arg: "Pred"


@dataclass(frozen=True)
class Const:
    value: bool


Pred = Union[Eq, Neq, IsEmergent, IsZfSet, ActsOnX, XActsOn, SubsetOf, And, Or, Not, Const]
TRUE, FALSE = Const(True), Const(False)

# -- lexer ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<op>!=|->|[=(),])|(?P<word>[A-Za-z_][A-Za-z0-9_']*)|(?P<num>\d+))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            skipped = len(text) - len(text[pos:].lstrip())
            raise PredicateSyntaxError(skipped, "a token", text)
        start = m.start(m.lastgroup)
        out.append((m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("<end>", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, bindings: Iterable[str] | None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.bindings = None if bindings is None else set(bindings)

    def peek(self, ahead: int = 0) -> str:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)][0]

    def pos(self) -> int:
        return self.toks[self.i][1]

    def fail(self, expected: str):
        raise PredicateSyntaxError(self.pos(), expected, self.text)

    def take(self, tok: str):
        if self.peek() != tok:
            self.fail(repr(tok))
        self.i += 1

    def parse(self) -> Pred:
        p = self.or_expr()
        if self.peek() != "<end>":
            self.fail("end of input")
        return p

    def or_expr(self) -> Pred:
        p = self.and_expr()
        while self.peek() == "or":
            self.i += 1
            p = Or(p, self.and_expr())
        return p

    def and_expr(self) -> Pred:
        p = self.unary()
        while self.peek() == "and":
            self.i += 1
            p = And(p, self.unary())
        return p

    def unary(self) -> Pred:
        tok = self.peek()
        if tok == "not":
            self.i += 1
            return Not(self.unary())
        if tok == "(":
            self.i += 1
            p = self.or_expr()
            self.take(")")
            return p
        return self.atom()

    def atom(self) -> Pred:
        tok = self.peek()
        if tok in ("true", "false"):
            self.i += 1
            return Const(tok == "true")
        if tok in ("E", "Z") and self.peek(1) == "(":
            self.i += 1
            self.take("(")
            self.take("x")
            self.take(")")
            return IsEmergent() if tok == "E" else IsZfSet()
        if tok == "acts":
            self.i += 1
            self.take("(")
            if self.peek() == "x" and self.peek(1) == ",":
                self.i += 2
                ref = self.termref()
                self.take(")")
                return XActsOn(ref)
            ref = self.termref()
            self.take(",")
            self.take("x")
            self.take(")")
            return ActsOnX(ref)
        if tok == "subset":
            self.i += 1
            self.take("(")
            self.take("x")
            self.take(",")
            ref = self.termref()
            self.take(")")
            return SubsetOf(ref)
        if tok == "x":
            self.i += 1
            op = self.peek()
            if op not in ("=", "!="):
                self.fail("'=' or '!='")
            self.i += 1
            ref = self.termref()
            return Eq(ref) if op == "=" else Neq(ref)
        self.fail("an atom")

    def termref(self) -> TermRef:
        tok = self.peek()
        start = self.pos()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok):
            self.fail("a term reference")
        self.i += 1
        if tok == "zero":
            return ZeroRef()
        if tok == "one":
            return OneRef()
        if tok == "self":
            return SelfRef()
        if tok == "x":
            return VarRef()
        m = re.fullmatch(r"phi(\d+)", tok)
        if m:
            return PhiRef(int(m.group(1)))
        if tok == "phi" and self.peek().isdigit():
            n = int(self.peek())
            self.i += 1
            return PhiRef(n)
        if tok in ("and", "or", "not", "true", "false"):
            self.i -= 1
            raise PredicateSyntaxError(start, "a term reference", self.text)
        if self.bindings is not None and tok not in self.bindings:
            raise UnboundName(tok)
        return Named(tok)


def parse_predicate(text: str, bindings: Iterable[str] | None = None) -> Pred:
    """Parse a formula. With ``bindings`` given, unknown names fail early."""
    return _Parser(text, bindings).parse()


# -- printing -------------------------------------------------------------


def format_ref(ref: TermRef) -> str:
    if isinstance(ref, int):
        return f"_t{ref}"
    if isinstance(ref, Named):
        return ref.name
    if isinstance(ref, PhiRef):
        return f"phi{ref.n}"
    return {ZeroRef: "zero", OneRef: "one", VarRef: "x", SelfRef: "self"}[type(ref)]


def format_predicate(p: Pred) -> str:
    """Canonical text; binary nodes are parenthesised so parsing inverts it."""
    if isinstance(p, Const):
        return "true" if p.value else "false"
    if isinstance(p, Eq):
        return f"x = {format_ref(p.ref)}"
    if isinstance(p, Neq):
        return f"x != {format_ref(p.ref)}"
    if isinstance(p, IsEmergent):
        return "E(x)"
    if isinstance(p, IsZfSet):
        return "Z(x)"
    if isinstance(p, ActsOnX):
        return f"acts({format_ref(p.ref)}, x)"
    if isinstance(p, XActsOn):
        return f"acts(x, {format_ref(p.ref)})"
    if isinstance(p, SubsetOf):
        return f"subset(x, {format_ref(p.ref)})"
    if isinstance(p, Not):
        return f"not {format_predicate(p.arg)}"
    op = "and" if isinstance(p, And) else "or"
    return f"({format_predicate(p.left)} {op} {format_predicate(p.right)})"


# -- evaluation -----------------------------------------------------------


def resolve_ref(u: Universe, ref: TermRef, x: TermId | None = None,
                result: TermId | None = None) -> TermId | None:
    """TermId of a reference. ``self`` without a known result gives None."""
    if isinstance(ref, int):
        return ref
    if isinstance(ref, Named):
        if ref.name not in u.names:
            raise UnboundName(ref.name)
        return u.names[ref.name]
    if isinstance(ref, ZeroRef):
        return ZERO
    if isinstance(ref, OneRef):
        return ONE
    if isinstance(ref, PhiRef):
        from .algebra import phi
        return phi(u, ref.n)
    if isinstance(ref, VarRef):
        return x
    return result


def eval_predicate(u: Universe, p: Pred, x: TermId, result: TermId | None = None) -> bool:
    """Truth of ``p`` at ``x``.

    When ``result`` is None, atoms mentioning ``self`` are inert: ``x = self``
    is false and ``x != self`` true, matching candidates distinct from the
    term being built. Other ``self`` atoms are false.
    """
    from .zf import is_emergent, is_zf_set
    from .algebra import is_restriction

    if isinstance(p, Const):
        return p.value
    if isinstance(p, And):
        return eval_predicate(u, p.left, x, result) and eval_predicate(u, p.right, x, result)
    if isinstance(p, Or):
        return eval_predicate(u, p.left, x, result) or eval_predicate(u, p.right, x, result)
    if isinstance(p, Not):
        return not eval_predicate(u, p.arg, x, result)
    if isinstance(p, IsEmergent):
        return is_emergent(u, x)
    if isinstance(p, IsZfSet):
        return is_zf_set(u, x)
    r = resolve_ref(u, p.ref, x, result)
    if r is None:
        return isinstance(p, Neq)
    if isinstance(p, Eq):
        return x == r
    if isinstance(p, Neq):
        return x != r
    if isinstance(p, ActsOnX):
        return acts_on(u, r, x)
    if isinstance(p, XActsOn):
        return acts_on(u, x, r)
    if isinstance(p, SubsetOf):
        return is_restriction(u, x, r)
    raise TypeError(p)


def generic_value(p: Pred) -> bool | None:
    """Three-valued truth of ``p`` at a term equal to nothing it names.

    Equality atoms with a fixed reference are false there; every other atom
    is unknown (None). A definite False means ``p`` holds only on the finite
    set of terms it names.
    """
    if isinstance(p, Const):
        return p.value
    if isinstance(p, (Eq, Neq)):
        if isinstance(p.ref, VarRef):
            return isinstance(p, Eq)
        if isinstance(p.ref, SelfRef):
            return None
        return isinstance(p, Neq)
    if isinstance(p, Not):
        v = generic_value(p.arg)
        return None if v is None else not v
    if isinstance(p, (And, Or)):
        a, b = generic_value(p.left), generic_value(p.right)
        if isinstance(p, And):
            if a is False or b is False:
                return False
            return True if a and b else None
        if a or b:
            return True
        return False if a is False and b is False else None
    return None


def named_refs(p: Pred) -> list[TermRef]:
    """Fixed references appearing in equality atoms."""
    if isinstance(p, (Eq, Neq)):
        return [] if isinstance(p.ref, (VarRef, SelfRef)) else [p.ref]
    if isinstance(p, (And, Or)):
        return named_refs(p.left) + named_refs(p.right)
    if isinstance(p, Not):
        return named_refs(p.arg)
    return []


# -- alpha maps -----------------------------------------------------------


@dataclass(frozen=True)
class AlphaEntries:
    pairs: tuple[tuple[TermRef, TermRef], ...]


@dataclass(frozen=True)
class AlphaIdentity:
    pass


@dataclass(frozen=True)
class AlphaInverseOf:
    ref: TermRef


@dataclass(frozen=True)
class AlphaConstantTo:
    ref: TermRef


AlphaMap = Union[AlphaEntries, AlphaIdentity, AlphaInverseOf, AlphaConstantTo]


def parse_alpha(text: str, bindings: Iterable[str] | None = None) -> AlphaMap:
    """``identity``, ``inverse(NAME)``, ``const(REF)`` or ``a -> b, c -> d``."""
    p = _Parser(text, bindings)
    tok = p.peek()
    if tok == "identity" and p.peek(1) == "<end>":
        return AlphaIdentity()
    if tok in ("inverse", "const") and p.peek(1) == "(":
        p.i += 2
        ref = p.termref()
        p.take(")")
        p.take("<end>")
        return AlphaInverseOf(ref) if tok == "inverse" else AlphaConstantTo(ref)
    pairs = []
    while True:
        k = p.termref()
        p.take("->")
        v = p.termref()
        pairs.append((k, v))
        if p.peek() == "<end>":
            break
        p.take(",")
    return AlphaEntries(tuple(pairs))


def format_alpha(a: AlphaMap) -> str:
    if isinstance(a, AlphaIdentity):
        return "identity"
    if isinstance(a, AlphaInverseOf):
        return f"inverse({format_ref(a.ref)})"
    if isinstance(a, AlphaConstantTo):
        return f"const({format_ref(a.ref)})"
    return ", ".join(f"{format_ref(k)} -> {format_ref(v)}" for k, v in a.pairs)


def alpha_images(u: Universe, a: AlphaMap, x: TermId) -> list[TermId]:
    """All images alpha assigns to x (a functional alpha gives exactly one).

    A plain ``{TermId: TermId}`` dict is accepted as an explicit alpha.
    """
    if isinstance(a, dict):
        return [a[x]] if x in a else []
    if isinstance(a, AlphaIdentity):
        return [x]
    if isinstance(a, AlphaConstantTo):
        return [resolve_ref(u, a.ref, x)]
    if isinstance(a, AlphaInverseOf):
        c = resolve_ref(u, a.ref, x)
        pre = sorted(k for k, v in u.table(c).items() if v == x) if u.is_map(c) else []
        return pre if pre else [ZERO]
    out = []
    for k, v in a.pairs:
        if resolve_ref(u, k, x) == x:
            img = resolve_ref(u, v, x)
            if img not in out:
                out.append(img)
    return out
