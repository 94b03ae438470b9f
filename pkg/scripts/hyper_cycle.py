"""Materialise and verify a hyperfunction over a cyclic universe at growing
depths, timing each step."""
import argparse
import time

from flowkit import FlowConfig, Mode, acts
from flowkit.hyper import (build_cyclic_universe, check_hyperfunction,
                           check_well_foundedness, materialize_hyperfunction,
                           parse_cyclic_spec)
from flowkit.algebra import identity_map

DEFAULT = "node a: b\nnode b: c\nnode c: a\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("spec", nargs="?", help="file of 'node a: b, c' lines (default: a 3-cycle)")
    ap.add_argument("--max-depth", type=int, default=5)
    args = ap.parse_args()
    text = open(args.spec).read() if args.spec else DEFAULT
    spec = parse_cyclic_spec(text)
    u = build_cyclic_universe(spec, FlowConfig())
    assert u.mode is Mode.CYCLIC
    base = [u.resolve(n) for n in spec.nodes]
    wf = check_well_foundedness(u, identity_map(u, base))
    if wf.holds:
        print(f"well-founded, witness {u.name_of(wf.witness)}")
    else:
        print("not well-founded, cycle " + " -> ".join(u.name_of(t) for t in wf.cycle))
    print(f"{'depth':>5} {'members':>8} {'verdict':>22} {'build s':>8} {'check s':>8}")
    for depth in range(1, args.max_depth + 1):
        t0 = time.perf_counter()
        psi = materialize_hyperfunction(u, base, depth)
        t1 = time.perf_counter()
        verdict = check_hyperfunction(u, psi, depth)
        t2 = time.perf_counter()
        print(f"{depth:>5} {len(acts(u, psi)):>8} {str(verdict):>22} {t1 - t0:>8.3f} {t2 - t1:>8.3f}")


if __name__ == "__main__":
    main()
