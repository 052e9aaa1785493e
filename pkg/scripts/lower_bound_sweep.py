"""Lower-bound demonstration for several census radii N.

Prints n, the witness image length m, verified preimages and g(m); the
ratio is informational only.

    python3 scripts/lower_bound_sweep.py --op concat --max-n 4
"""
import argparse

from assocamb.ambiguity import BUILTIN_OPS
from assocamb.prober import LengthBoundParams, lower_bound_demo


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--op", choices=["concat", "max"], default="concat")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--i", type=int, default=2)
    args = p.parse_args()
    op = BUILTIN_OPS[args.op]
    params = LengthBoundParams(args.m, args.i)
    print("N,census_max,n,m,verified,g_of_m,ratio")
    for N in range(args.max_n + 1):
        d = lower_bound_demo(op, params, N)
        print(f"{N},{d.census_max},{d.n},{d.m},{d.verified_preimages},{d.g_of_m},{d.ratio:.2f}")


if __name__ == "__main__":
    main()
