"""Exhaustive good-pair counts for all colorings of [N].

For each (N, m) prints the smallest brute-force good-pair count, the certified
bound B(m) and ceil(m^2/9); rows where the minimum falls below ceil(m^2/9) are
marked as findings.
"""

import argparse
import math
from collections import defaultdict
from fractions import Fraction

from zarankiewicz_geom.curves import brute_good_pairs, coloring_bound, restricted_growth_strings


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()
    print("N  m  min_count  B(m)  ceil(m^2/9)  finding")
    for N in range(1, args.max_n + 1):
        lowest = defaultdict(lambda: math.inf)
        for colors in restricted_growth_strings(N):
            m = max(colors)
            lowest[m] = min(lowest[m], len(brute_good_pairs(colors)))
        for m in sorted(lowest):
            sq = math.ceil(Fraction(m * m, 9))
            flag = "yes" if lowest[m] < sq else ""
            print(f"{N:<3}{m:<3}{lowest[m]:<11}{coloring_bound(m):<6}{sq:<13}{flag}")


if __name__ == "__main__":
    main()
