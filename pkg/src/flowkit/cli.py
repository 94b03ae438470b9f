"""The flowkit command line and the universe file format it reads.

Universe files are line oriented::

    # comments run to end of line
    cyclic                          # optional, must come first
    term g = { phi1 -> phi1 }
    term h = g                      # alias
    node a: b, c                    # cyclic only: a acts identity-style on b, c

Without the ``cyclic`` header every name must be defined before use.
"""
from __future__ import annotations

import argparse
import re
import sys
from itertools import combinations, product
from pathlib import Path

from .algebra import (compose, create, full_power, identity_map,
                      intersection, intersection2, is_composition, is_injective,
                      is_restriction, is_successor, make_pair, phi, restrict,
                      restricted_power, successor, union, union2)
from .choice import (ChoiceSelector, WellOrderVariant, attempt_well_order,
                     choice_witness_violations, f_choice, f_trivial_choice,
                     partition_injection)
from .config import FlowConfig
from .errors import FlowError, UnboundName, UniverseSyntaxError
from .hyper import (ConfirmedUpTo, check_hyperfunction, check_well_foundedness,
                    generate_sigma_chain, materialize_hyperfunction)
from .predicate import parse_alpha, parse_predicate
from .report import CheckReport
from .terms import (ONE, PHI0, ZERO, Mode, TermId, Universe, acts, evaluate,
                    extensional_eq, images, is_identity_style, is_reserved)
from .zf import (cardinality, check_zf_suite, generate_rank_universe,
                 is_emergent, is_zf_set, rank_closure_report)

SUITES = ("theorems", "zf-axioms", "choice-pp", "hyper")

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_TERM_LINE = re.compile(rf"term\s+({_NAME})\s*=\s*(.+)$")
_NODE_LINE = re.compile(rf"node\s+({_NAME})\s*:\s*(.*)$")
_ENTRY = re.compile(rf"\s*({_NAME})\s*->\s*({_NAME})\s*$")


# -- universe files --------------------------------------------------------

def _parse_table(body: str, lineno: int, col: int) -> list[tuple[str, str]]:
    inner = body.strip()
    if not (inner.startswith("{") and inner.endswith("}")):
        raise UniverseSyntaxError(lineno, "expected '{ key -> image, ... }'", col)
    inner = inner[1:-1]
    entries = []
    offset = col + body.index("{") + 1
    for chunk in inner.split(","):
        if chunk.strip():
            m = _ENTRY.fullmatch(chunk)
            if not m:
                raise UniverseSyntaxError(lineno, "expected 'key -> image'",
                                          offset + len(chunk) - len(chunk.lstrip()))
            entries.append((m.group(1), m.group(2)))
        offset += len(chunk) + 1
    return entries


def parse_universe(text: str, config: FlowConfig | None = None,
                   cyclic: bool = False) -> Universe:
    decls = []          # (kind, lineno, name, payload)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        if stripped == "cyclic":
            if decls:
                raise UniverseSyntaxError(lineno, "'cyclic' must precede declarations", col)
            cyclic = True
            continue
        if m := _TERM_LINE.fullmatch(stripped):
            name, rhs = m.group(1), m.group(2)
            rhs_col = col + m.start(2)
            if rhs.strip().startswith("{"):
                decls.append(("table", lineno, name, _parse_table(rhs, lineno, rhs_col)))
            elif re.fullmatch(_NAME, rhs.strip()):
                decls.append(("alias", lineno, name, rhs.strip()))
            else:
                raise UniverseSyntaxError(lineno, "expected a table or a name", rhs_col)
        elif m := _NODE_LINE.fullmatch(stripped):
            members = [s.strip() for s in m.group(2).split(",") if s.strip()]
            for s in members:
                if not re.fullmatch(_NAME, s):
                    raise UniverseSyntaxError(lineno, f"bad member {s!r}", col + m.start(2))
            decls.append(("table", lineno, m.group(1), [(s, s) for s in members]))
            if not cyclic:
                raise UniverseSyntaxError(lineno, "node lines need the 'cyclic' header", col)
        else:
            raise UniverseSyntaxError(lineno, "expected 'term', 'node' or 'cyclic'", col)

    u = Universe(Mode.CYCLIC if cyclic else Mode.WELL_FOUNDED, config)
    seen = set()
    for _, lineno, name, _ in decls:
        if is_reserved(name):
            raise UniverseSyntaxError(lineno, f"{name!r} is reserved")
        if name in seen:
            raise UniverseSyntaxError(lineno, f"{name!r} defined twice")
        seen.add(name)

    def look(name, lineno):
        try:
            return u.resolve(name)
        except UnboundName:
            raise UniverseSyntaxError(lineno, f"unbound name {name!r}") from None

    if cyclic:
        for kind, _, name, _ in decls:
            if kind == "table":
                u.declare(name)
        for kind, lineno, name, entries in decls:
            if kind == "table":
                u.define(u.names[name], [(look(k, lineno), look(v, lineno)) for k, v in entries])
    pending = [d for d in decls if d[0] == "alias"] if cyclic else decls
    for kind, lineno, name, payload in pending:
        if kind == "alias":
            u.bind(name, look(payload, lineno))
        else:
            u.bind(name, u.intern([(look(k, lineno), look(v, lineno)) for k, v in payload]))
    return u


def load_universe(path, config: FlowConfig | None = None, cyclic: bool = False) -> Universe:
    return parse_universe(Path(path).read_text(), config, cyclic)


def _printable(u: Universe) -> list[TermId]:
    """Bound terms plus every anonymous Map they reach, in definition order."""
    out, stack = set(), [t for t in u.names.values()]
    while stack:
        t = stack.pop()
        if t in out or not u.is_map(t):
            continue
        out.add(t)
        for kv in u.table(t).items():
            stack.extend(kv)
    return sorted(t for t in out if not re.fullmatch(r"phi\d+", u.name_of(t)))


def print_universe(u: Universe) -> str:
    lines = ["cyclic"] if u.mode is Mode.CYCLIC else []
    for t in _printable(u):
        body = ", ".join(f"{u.name_of(k)} -> {u.name_of(v)}" for k, v in sorted(u.table(t).items()))
        lines.append(f"term {u.name_of(t)} = {{ {body} }}" if body else f"term {u.name_of(t)} = {{ }}")
    for name, t in u.names.items():
        if u.name_of(t) != name:
            lines.append(f"term {name} = {u.name_of(t)}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_term(u: Universe, text: str) -> TermId:
    """A bound or builtin name, or a table literal like ``{phi0 -> phi1}``."""
    text = text.strip()
    if text.startswith("{"):
        return u.intern([(u.resolve(k), u.resolve(v)) for k, v in _parse_table(text, 1, 1)])
    return u.resolve(text)


# -- dot export ------------------------------------------------------------

def _q(s: str) -> str:
    return '"' + s.replace('"', r'\"') + '"'


def render_dot(u: Universe, f: TermId) -> str:
    """Directed graph in dot syntax: f's rectangle holds the terms it acts on,
    images it does not act on sit outside, identity entries become loops."""
    name = u.name_of(f)
    out = [f"digraph {_q(name)} {{", "  node [shape=circle];"]
    if f == ZERO:
        out.append(f"  {_q('zero')} [shape=box, label={_q('zero')}];")
        out.append("}")
        return "\n".join(out) + "\n"
    out.append(f"  subgraph {_q('cluster_' + name)} {{")
    out.append(f"    label={_q(name)};")
    if f == ONE:
        out.append("    style=filled; fillcolor=black; fontcolor=white;")
        out.append(f"    {_q('one_anchor')} [style=invis, label=\"\"];")
        out.append("  }")
        out.append("}")
        return "\n".join(out) + "\n"
    tab = u.table(f)
    out.append("    style=solid;")
    if not tab:
        out.append(f"    {_q(name + '_anchor')} [style=invis, label=\"\"];")
    for k in sorted(tab):
        out.append(f"    {_q(u.name_of(k))};")
    out.append("  }")
    for v in sorted(set(tab.values()) - set(tab)):
        out.append(f"  {_q(u.name_of(v))};")
    for k, v in sorted(tab.items()):
        out.append(f"  {_q(u.name_of(k))} -> {_q(u.name_of(v))};")
    out.append("}")
    return "\n".join(out) + "\n"


# -- suites ----------------------------------------------------------------

def _pool(u: Universe, limit: int = 40) -> list[TermId]:
    """Well-founded Maps currently in the universe plus a few ladder terms."""
    for n in range(5):
        phi(u, n)
    return [t for t in u.ids() if u.is_map(t) and not u.is_cyclic_node(t)][:limit]


def _first_bad(u: Universe, items, ok) -> tuple[bool, list[str]]:
    for it in items:
        try:
            good = ok(it)
        except FlowError:
            good = False
        if not good:
            its = it if isinstance(it, tuple) else (it,)
            return False, [u.name_of(t) if isinstance(t, int) else str(t) for t in its]
    return True, []


def _theorems(u: Universe) -> CheckReport:
    rep = CheckReport()
    pool = _pool(u)
    ids = list(u.ids())

    def check(ident, items, ok):
        good, witness = _first_bad(u, items, ok)
        rep.add(good, "check", ident, witness)

    check("compose-zero", pool + [ZERO],
          lambda x: compose(u, x, ZERO) == PHI0 == compose(u, ZERO, x))
    check("compose-one-one", [ONE], lambda x: compose(u, ONE, ONE) == ONE)
    check("eval-zero", ids, lambda f: evaluate(u, f, ZERO) == ZERO)
    check("eval-self", ids, lambda f: evaluate(u, f, f) == f)
    small = pool[:12]
    check("composition-clauses", list(product(small, small)),
          lambda fg: is_composition(u, compose(u, *fg), *fg))
    check("successor", pool, lambda f: is_successor(u, f, successor(u, f)))
    ladder = list(product(range(5), range(5)))
    check("phi-ladder", ladder, lambda mn: (
        evaluate(u, phi(u, mn[0] + mn[1]), phi(u, mn[1])) == phi(u, mn[1])
        and evaluate(u, phi(u, mn[1]), phi(u, mn[1] + 2)) == ZERO
        and union2(u, phi(u, mn[0]), phi(u, mn[1])) == phi(u, max(mn))
        and intersection2(u, phi(u, mn[0]), phi(u, mn[1])) == compose(u, phi(u, mn[0]), phi(u, mn[1]))))
    check("restricted-power-count", [f for f in pool if len(u.table(f)) <= 6],
          lambda f: len(acts(u, restricted_power(u, f))) == 2 ** len(u.table(f)))
    check("full-power-count",
          [f for f in pool if is_identity_style(u, f) and 0 < len(u.table(f)) <= 3],
          lambda f: len(acts(u, full_power(u, f))) == (len(u.table(f)) + 1) ** len(u.table(f)))
    rank2 = generate_rank_universe(u, 2, verify=False)
    quads = [(a, b, c, d) for a, b, c, d in product(rank2, repeat=4)]
    check("pair-injective", quads, lambda q: (make_pair(u, q[0], q[1]) == make_pair(u, q[2], q[3]))
          == (q[:2] == q[2:]))
    if u.mode is Mode.WELL_FOUNDED:
        check("identity-is-extensional", list(combinations(small, 2)),
              lambda fg: not extensional_eq(u, *fg))
    return rep


def _zf_axioms(u: Universe) -> CheckReport:
    # power sets are enumerated outright, so keep samples small
    samples = [t for t in _pool(u, limit=200)
               if len(u.table(t)) <= 6 and is_zf_set(u, t)]
    levels = [generate_rank_universe(u, k, verify=False) for k in range(4)]
    samples = sorted(set(samples) | set(levels[-1]))
    rep = check_zf_suite(u, samples)
    for k in range(1, 4):
        rep.extend(rank_closure_report(u, levels[:k + 1]))
    return rep


def _surjection_pool(u: Universe) -> list[TermId]:
    base = u.intern({phi(u, 0): phi(u, 7), phi(u, 1): phi(u, 8), phi(u, 2): phi(u, 8)})
    extra = [t for t in _pool(u) if 0 < len(u.table(t)) <= 5 and is_emergent(u, t)]
    return [base] + [t for t in extra if t != base]


def _choice_pp(u: Universe, seed: int = 0) -> CheckReport:
    rep = CheckReport()
    for f in _surjection_pool(u):
        constant = len(set(images(u, f))) == 1
        c = f_trivial_choice(u, f) if constant else f_choice(u, f, ChoiceSelector.deterministic(seed))
        bad = [] if constant else choice_witness_violations(u, c, f)
        rep.add(not bad, "check", "choice-witness", [u.name_of(f), u.name_of(c)],
                f"violated={','.join(bad)}" if bad else "")
        g = partition_injection(u, f, ChoiceSelector.deterministic(seed))
        keys = set(acts(u, f))
        ok = is_injective(u, g) and set(images(u, g)) <= keys \
            and set(acts(u, g)) == set(images(u, f))
        rep.add(ok, "check", "pp-injection", [u.name_of(f), u.name_of(g)])
    sets = [t for t in _pool(u) if is_zf_set(u, t) and len(u.table(t)) <= 6]
    for s in sets:
        members = acts(u, s)
        tr = attempt_well_order(u, s, WellOrderVariant.RESTRICTING, ChoiceSelector.deterministic(seed))
        ok = sorted(tr.order) == members and all(st.extends_previous for st in tr.stages)
        rep.add(ok, "check", "wellorder-restricting", [u.name_of(s)])
        if len(members) >= 2:
            tr = attempt_well_order(u, s, WellOrderVariant.NON_RESTRICTING, ChoiceSelector.adversarial())
            broke = [st.step for st in tr.stages if not st.extends_previous]
            rep.add(bool(broke), "check", "wellorder-nonrestricting-breaks", [u.name_of(s)],
                    f"steps={','.join(map(str, broke))}" if broke else "")
    return rep


def _hyper(u: Universe) -> CheckReport:
    rep = CheckReport()
    depth = u.config.hyper_depth
    declared = sorted(t for t in u.ids() if u.is_declared(t))
    targets = [identity_map(u, declared)] if declared else \
        [t for t in generate_rank_universe(u, 2, verify=False) if t != PHI0]
    for t in targets:
        wf = check_well_foundedness(u, t)
        if wf.holds:
            rep.add(True, "check", "well-foundedness", [u.name_of(t), u.name_of(wf.witness)])
        else:
            rep.add(False, "check", "well-foundedness", [u.name_of(c) for c in wf.cycle],
                    "cycle")
    if declared:
        psi = materialize_hyperfunction(u, declared, depth)
        verdict = check_hyperfunction(u, psi, depth)
        if isinstance(verdict, ConfirmedUpTo):
            rep.add(True, "check", "hyperfunction", [u.name_of(psi)],
                    f"confirmed-up-to={verdict.depth}")
        else:
            rep.add(False, "check", "hyperfunction", [u.name_of(verdict.witness)],
                    f"clause={verdict.clause}")
        rep.add(is_zf_set(u, psi), "check", "hyper-zf-set", [u.name_of(psi)],
                f"mode={u.axiom_mode.value}")
    chain = generate_sigma_chain(u, PHI0, depth)
    members = acts(u, chain)
    comparable = all(is_restriction(u, a, b) or is_restriction(u, b, a)
                     for a, b in combinations(members, 2))
    rep.add(members == acts(u, phi(u, depth + 1)) and comparable, "check", "sigma-chain",
            [u.name_of(chain)], f"length={len(members)}")
    return rep


def run_suite(u: Universe, suite: str, seed: int = 0) -> CheckReport:
    if suite == "theorems":
        return _theorems(u)
    if suite == "zf-axioms":
        return _zf_axioms(u)
    if suite == "choice-pp":
        return _choice_pp(u, seed)
    if suite == "hyper":
        return _hyper(u)
    raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")


# -- command line ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flowkit", description="Compute with Flow terms.")
    p.add_argument("--universe", metavar="FILE", help="universe file to load")
    p.add_argument("--cyclic", action="store_true", help="allow non-well-founded terms")
    p.add_argument("--cap-power", type=int, metavar="N", help="largest support for full powers")
    p.add_argument("--depth", type=int, metavar="K", help="hyperfunction verification depth")
    p.add_argument("--bound", type=int, metavar="N", help="infinity-axiom bound")
    sub = p.add_subparsers(dest="cmd", required=True)

    def cmd(name, *terms, **kw):
        sp = sub.add_parser(name, **kw)
        for t in terms:
            sp.add_argument(t)
        return sp

    cmd("eval", "f", "x", help="f(x)")
    cmd("compose", "f", "g", help="f o g")
    cmd("succ", "f", help="successor")
    sp = sub.add_parser("phi", help="the n-th ladder term")
    sp.add_argument("n", type=int)
    cmd("restrict", "f", help="restriction under a predicate").add_argument(
        "-p", "--predicate", required=True)
    cmd("create", "f", help="creation under an alpha map").add_argument(
        "-a", "--alpha", required=True)
    sp = cmd("power", "f", help="full or restricted power")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--full", action="store_true")
    g.add_argument("--restricted", action="store_true")
    cmd("pair", "a", "b", help="ordered pair")
    sp = cmd("union", "f", help="union of a family, or of two sets")
    sp.add_argument("g", nargs="?")
    sp = cmd("intersect", "f", help="intersection of a family, or of two sets")
    sp.add_argument("g", nargs="?")
    cmd("card", "f", help="cardinality of a finite ZF-set")
    sp = cmd("choice", "f", help="choice witness for a surjection")
    sp.add_argument("--trivial", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp = cmd("pp", "f", help="partition injection")
    sp.add_argument("--seed", type=int, default=0)
    sp = cmd("wellorder", "f", help="staged well-ordering attempt")
    sp.add_argument("--variant", choices=[v.value for v in WellOrderVariant], default="f11")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--selector", choices=["deterministic", "adversarial"],
                    default="deterministic")
    sp = sub.add_parser("check", help="run a property suite")
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.add_argument("--seed", type=int, default=0)
    cmd("dot", "f", help="graph description of a term")
    sub.add_parser("print", help="print the loaded universe")
    return p


def _config(args) -> FlowConfig:
    cfg = FlowConfig()
    if args.cap_power is not None:
        cfg.full_power_support_cap = args.cap_power
    if args.depth is not None:
        cfg.hyper_depth = args.depth
    if args.bound is not None:
        cfg.infinity_bound = args.bound
    return cfg


def execute(args) -> tuple[str, int]:
    cfg = _config(args)
    if args.universe:
        u = load_universe(args.universe, cfg, cyclic=args.cyclic)
    else:
        u = Universe(Mode.CYCLIC if args.cyclic else Mode.WELL_FOUNDED, cfg)
    phi(u, 10)      # so ladder terms print by name
    T = lambda s: parse_term(u, s)  # noqa: E731
    r = u.render
    c = args.cmd
    if c == "eval":
        return r(evaluate(u, T(args.f), T(args.x))), 0
    if c == "compose":
        return r(compose(u, T(args.f), T(args.g))), 0
    if c == "succ":
        return r(successor(u, T(args.f))), 0
    if c == "phi":
        return r(phi(u, args.n)), 0
    if c == "restrict":
        return r(restrict(u, T(args.f), parse_predicate(args.predicate))), 0
    if c == "create":
        return r(create(u, T(args.f), parse_alpha(args.alpha))), 0
    if c == "power":
        p = (full_power if args.full else restricted_power)(u, T(args.f))
        return f"{r(p)}\nmembers={len(acts(u, p))}", 0
    if c == "pair":
        return r(make_pair(u, T(args.a), T(args.b))), 0
    if c in ("union", "intersect"):
        one, two = (union, union2) if c == "union" else (intersection, intersection2)
        res = one(u, T(args.f)) if args.g is None else two(u, T(args.f), T(args.g))
        return r(res), 0
    if c == "card":
        return r(cardinality(u, T(args.f))), 0
    if c == "choice":
        f = T(args.f)
        res = f_trivial_choice(u, f) if args.trivial else \
            f_choice(u, f, ChoiceSelector.deterministic(args.seed))
        return r(res), 0
    if c == "pp":
        return r(partition_injection(u, T(args.f), ChoiceSelector.deterministic(args.seed))), 0
    if c == "wellorder":
        sel = ChoiceSelector(args.selector, args.seed)
        tr = attempt_well_order(u, T(args.f), WellOrderVariant(args.variant), sel)
        return "\n".join(tr.lines(u)), 0
    if c == "check":
        rep = run_suite(u, args.suite, args.seed)
        return rep.text(), 0 if rep.ok else 1
    if c == "dot":
        return render_dot(u, T(args.f)).rstrip("\n"), 0
    if c == "print":
        return print_universe(u).rstrip("\n"), 0
    raise AssertionError(c)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = execute(args)
    except (FlowError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
