#!/usr/bin/env python3
"""The diamond structure: every monomorphism extends, some homomorphism does not.

Run:  python demos/diamond_separation.py [--clique K]
"""

import argparse
import logging

from homlab import PartialMap, classify, is_homomorphism, one_point_targets
from homlab.constructions import diamond_M, diamond_extend
from homlab.constructions.diamond import iter_two_special_monos


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--clique", type=int, default=2, help="size of each clique M_x^s")
    args = ap.parse_args()

    M = diamond_M(args.clique).graph
    print(f"M has {len(M)} vertices over Q = {list(M.Q.elements)}")

    # collapse a and b, keep c: no vertex of M_c^0 has a target
    f = PartialMap.endo(M, {"a": "a", "b": "a", "c": "c"})
    blocked = [d for d in M.vertices if d.startswith("Mc0/") and not one_point_targets(f, d)]
    print(f"{f.pairs()} is blocked at {blocked}")

    # the explicit extension rule, checked on every mono over <= 3 vertices hitting two specials
    logging.disable(logging.WARNING)
    bad = total = 0
    for g in iter_two_special_monos(M, 3):
        for d in M.vertices:
            if d in g.mapping:
                continue
            total += 1
            r = diamond_extend(M, g, d)
            bad += r is None or not is_homomorphism(g.extend(d, r))
    print(f"extension rule: {total} (mono, vertex) cases, {bad} failures")

    if len(M) <= 15:
        c = classify(M, max_domain=3)
        # a finite clique cannot absorb a shifted copy of itself, so the search sees MH fail too
        print(f"finite search up to domain 3: MH={c.is_MH} HH={c.is_HH}, MH witness {c.mh_witness.map.pairs()}")


if __name__ == "__main__":
    main()
