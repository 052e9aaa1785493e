"""Ambiguity profile of the built-in operations: max preimage count per
output length, complete rows only, side by side.

    python3 scripts/profile_growth.py --max-rank 510
"""
import argparse

from assocamb.ambiguity import BUILTIN_OPS, ambiguity_profile


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-rank", type=int, default=254)
    args = p.parse_args()
    table = {}
    for name, op in BUILTIN_OPS.items():
        for row in ambiguity_profile(op, args.max_rank):
            table.setdefault(row.length, {})[name] = (
                str(row.max_count) if row.complete else f"{row.max_count}?")
    names = list(BUILTIN_OPS)
    print("length," + ",".join(names))
    for n in sorted(table):
        print(f"{n}," + ",".join(table[n].get(k, "") for k in names))
    print("# '?' marks a length with no census-complete image")


if __name__ == "__main__":
    main()
