"""Run the staged well-ordering attempt under both choice variants and
report how often a stage fails to extend the previous one."""
import argparse

from flowkit import Universe, acts
from flowkit.algebra import identity_map, phi
from flowkit.choice import ChoiceSelector, WellOrderVariant, attempt_well_order


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-members", type=int, default=6)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--trace", type=int, default=None, metavar="N",
                    help="print the stage lines for phi_N")
    args = ap.parse_args()
    u = Universe()

    if args.trace is not None:
        s = phi(u, args.trace)
        for variant, sel in [(WellOrderVariant.RESTRICTING, ChoiceSelector.deterministic()),
                             (WellOrderVariant.NON_RESTRICTING, ChoiceSelector.adversarial())]:
            print(f"# {variant.value} {sel.strategy}")
            print("\n".join(attempt_well_order(u, s, variant, sel).lines(u)))
        return

    print(f"{'members':>7} {'variant':>9} {'selector':>13} {'runs':>5} {'broken':>7} {'breaks/run':>10}")
    for n in range(1, args.max_members + 1):
        s = identity_map(u, [phi(u, 2 * k + 1) for k in range(n)])   # not an ordinal
        assert len(acts(u, s)) == n
        for variant in WellOrderVariant:
            for strategy in ("deterministic", "adversarial"):
                runs = args.seeds if strategy == "deterministic" else 1
                broken = breaks = 0
                for seed in range(runs):
                    tr = attempt_well_order(u, s, variant, ChoiceSelector(strategy, seed))
                    b = sum(not st.extends_previous for st in tr.stages)
                    broken += b > 0
                    breaks += b
                print(f"{n:>7} {variant.value:>9} {strategy:>13} {runs:>5} {broken:>7} "
                      f"{breaks / runs:>10.2f}")


if __name__ == "__main__":
    main()
