#!/usr/bin/env python3
"""Collapsing two specials of the MH-not-HH structure blocks a whole copy.

Run:  python demos/mainthm_collapse.py [--q D2]
"""

import argparse
from itertools import permutations

from homlab import PartialMap, one_point_targets
from homlab.constructions import mainthm_structure, specials_of
from homlab.io import load_poset


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", default="D2", help="edge-color poset: file or shorthand")
    args = ap.parse_args()

    rep = mainthm_structure(load_poset(args.q))
    G = rep.graph
    X = specials_of(rep)
    print(f"{len(G)} vertices, specials {X}, colors below the top {rep.parameters['tops']}")

    j, k, l = 1, 2, 3
    f = PartialMap.endo(G, {f"x{k}": f"x{k}", f"x{l}": f"x{k}", f"x{j}": f"x{j}"})
    copy = [v for v in G.vertices if G.label(v, "copy_index") == j and not G.label(v, "special")]
    blocked = [v for v in copy if not one_point_targets(f, v)]
    print(f"{f.pairs()} blocks {len(blocked)}/{len(copy)} vertices of copy {j}")

    # an injective map on the specials always extends
    for img in permutations(X):
        g = PartialMap.endo(G, dict(zip(X, img)))
        stuck = [v for v in G.vertices if v not in g.mapping and not one_point_targets(g, v)]
        print(f"  specials -> {img}: {len(stuck)} blocked vertices")


if __name__ == "__main__":
    main()
