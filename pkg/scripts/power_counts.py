"""Member counts of the full and restricted powers of phi_n."""
import argparse

from flowkit import FlowConfig, Universe, acts
from flowkit.algebra import full_power, phi, restricted_power


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-full", type=int, default=4)
    ap.add_argument("--max-restricted", type=int, default=8)
    args = ap.parse_args()
    cfg = FlowConfig(full_power_support_cap=args.max_full,
                     restricted_power_cap=args.max_restricted)
    u = Universe(config=cfg)
    print(f"{'n':>2} {'full':>8} {'(n+1)^n':>8} {'restricted':>10} {'2^n':>6}")
    for n in range(max(args.max_full, args.max_restricted) + 1):
        f = phi(u, n)
        full = len(acts(u, full_power(u, f))) if n <= args.max_full else None
        restr = len(acts(u, restricted_power(u, f))) if n <= args.max_restricted else None
        print(f"{n:>2} {'-' if full is None else full:>8} {(n + 1) ** n:>8} "
              f"{'-' if restr is None else restr:>10} {2 ** n:>6}")


if __name__ == "__main__":
    main()
