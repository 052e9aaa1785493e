"""How fast the table-driven machine pushes products outward.

For each g, replay a fixed number of pairs and report table size, the
longest key produced, and the largest factor multiset seen.

    python3 scripts/gconstruct_growth.py --pairs 50000
"""
import argparse
import time

from assocamb.ambiguity import G_BOUNDS
from assocamb.gconstruct import GMachine


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--pairs", type=int, default=20_000)
    p.add_argument("--g", choices=sorted(G_BOUNDS), action="append")
    args = p.parse_args()
    print("g,pairs,rows,longest_key,max_factors,seconds")
    for name in args.g or sorted(G_BOUNDS):
        m = GMachine(g=G_BOUNDS[name])
        start = time.perf_counter()
        m.replay_to(args.pairs)
        elapsed = time.perf_counter() - start
        longest = max(len(k) for k, _ in m.table.entries)
        widest = max(len(v) for _, v in m.table.entries)
        print(f"{name},{args.pairs},{len(m.table)},{longest},{widest},{elapsed:.2f}")


if __name__ == "__main__":
    main()
