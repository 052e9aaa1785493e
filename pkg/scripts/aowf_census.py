"""Preimage counts of sigma against the (n-2)(f(n-2)+9)^2 cap.

Brute-force counts come from the rank box; exact counts come from the
structural inverse and are valid for every image, complete or not.

    python3 scripts/aowf_census.py --relation mod3-few --max-rank 126
"""
import argparse

from assocamb.ambiguity import preimage_census
from assocamb.aowf import RELATIONS, SigmaAOWF, ambiguity_cap, sigma_preimages


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--relation", choices=sorted(RELATIONS), default="parity-up")
    p.add_argument("--max-rank", type=int, default=62)
    args = p.parse_args()
    rel = RELATIONS[args.relation]
    m = SigmaAOWF(rel)
    cap = ambiguity_cap(rel)
    census = preimage_census(m.as_operation(), args.max_rank)
    worst = {}
    for y, report in census.items():
        exact = len(sigma_preimages(m, y))
        n = len(y)
        prev = worst.get(n, (0, 0))
        worst[n] = (max(prev[0], report.count), max(prev[1], exact))
    print("length,box_max,exact_max,cap")
    for n in sorted(worst):
        box_max, exact_max = worst[n]
        print(f"{n},{box_max},{exact_max},{cap(n)}")


if __name__ == "__main__":
    main()
