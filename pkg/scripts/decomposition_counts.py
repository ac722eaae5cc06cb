"""Piece counts of the parallelogram / parallelotope covers against the 4h bound.

Prints one line per polygon size h (max and mean pieces over random convex
polygons) and then per halfspace-family size for 3D polytopes.
"""

import argparse
import statistics

from zarankiewicz_geom.constructions import SceneSpec, generate_scene
from zarankiewicz_geom.decomp import decompose_polygon, decompose_polytope, random_halfspace_family, random_pol_polytope
from zarankiewicz_geom.seeding import mix64


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--polygons", type=int, default=50, help="polygons per size")
    ap.add_argument("--polytopes", type=int, default=5, help="polytopes per family size")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print("h  max_pieces  mean_pieces  bound_4h")
    for h in range(3, 13):
        counts = [len(decompose_polygon(generate_scene(SceneSpec("convex_polygon", h, mix64(args.seed, 100 * h + i))).polygon))
                  for i in range(args.polygons)]
        print(f"{h:<3}{max(counts):<12}{statistics.mean(counts):<13.2f}{4 * h}")

    print("\n|H|  prisms  pieces (per polytope)")
    for h in range(4, 9):
        H = random_halfspace_family(h, mix64(args.seed, h))
        rows = []
        for j in range(args.polytopes):
            dec = decompose_polytope(random_pol_polytope(H, mix64(h, j)), H)
            rows.append((dec.n_prisms, len(dec.pieces)))
        print(f"{h:<5}{rows}")


if __name__ == "__main__":
    main()
