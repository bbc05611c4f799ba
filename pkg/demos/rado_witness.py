#!/usr/bin/env python3
"""Finite approximants of the F_n-colored random graph and their extension certificates.

Run:  python demos/rado_witness.py [--n N] [--rounds R]
"""

import argparse

from homlab.constructions import rado_approx, verify_certificate


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--base", type=int, default=2)
    ap.add_argument("--rounds", type=int, default=2)
    ap.add_argument("--cap", type=int, default=1)
    args = ap.parse_args()

    rep = rado_approx(args.n, args.base, args.rounds, args.cap)
    G = rep.graph
    print(f"{len(G)} vertices, {len(rep.certificate.axioms)} certified one-point extensions")
    for ax in rep.certificate.axioms[:6]:
        print(f"  over {ax.A} with pattern {dict(ax.t)}: witness {ax.witness}")
    failures = verify_certificate(G, rep.certificate)
    print(f"certificate failures: {len(failures)}")
    for note in rep.notes:
        print(f"note: {note}")


if __name__ == "__main__":
    main()
