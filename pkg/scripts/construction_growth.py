"""Incidences per point of the C4-free point-ellipse construction as k grows.

    python scripts/construction_growth.py --u 3 --ks 3 4 5 6 --seeds 5 > growth.csv
"""

import argparse
import csv
import sys

from zarankiewicz_geom.constructions import CSV_COLUMNS, run_construction


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--u", type=int, default=3)
    ap.add_argument("--ks", type=int, nargs="+", default=[3, 4, 5, 6])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--bits", type=int, default=40)
    args = ap.parse_args()
    w = csv.DictWriter(sys.stdout, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for seed in range(args.seeds):
        for k in args.ks:
            res = run_construction(args.u, k, seed, args.bits)
            w.writerow(res.csv_row())
            sys.stdout.flush()


if __name__ == "__main__":
    main()
