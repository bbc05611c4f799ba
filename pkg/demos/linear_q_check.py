#!/usr/bin/env python3
"""Random chain-colored graphs: whenever MH holds, so does HH.

Run:  python demos/linear_q_check.py [--graphs N] [--seed S]
"""

import argparse
import random

from homlab import classify, make_chain, trivial
from homlab.random_graphs import random_graph


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graphs", type=int, default=200)
    ap.add_argument("--vertices", type=int, default=5)
    ap.add_argument("--chain", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    Q = make_chain(args.chain)
    mh = mh_only = 0
    for _ in range(args.graphs):
        G = random_graph(rng, rng.randint(2, args.vertices), trivial(), Q)
        c = classify(G)
        mh += c.is_MH
        mh_only += c.is_MH and not c.is_HH
    print(f"{args.graphs} graphs over {list(Q.elements)}: {mh} MH, {mh_only} MH but not HH")


if __name__ == "__main__":
    main()
