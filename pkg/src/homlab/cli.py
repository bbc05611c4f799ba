"""Command-line interface: ``homlab gen|classify|witness|verify-cert|check-extension``.

Exit codes: 0 success / property holds, 1 property fails, 2 invalid input.
Every command prints a short human summary; ``--report FILE`` also writes a
machine-readable JSON report that is byte-identical for identical inputs.
"""

from __future__ import annotations

import argparse
import hashlib
import logging
import random
import sys
import time
from pathlib import Path

from . import io
from .constructions import (
    diamond_M,
    lattice_counterexample,
    mainthm_structure,
    partitioned_rado,
    rado_approx,
    verify_certificate,
)
from .constructions.certificate import LevelCertificate
from .errors import HomlabError
from .morphism import classify, is_homomorphism, iter_failure_witnesses, one_point_targets
from .oracle import brute_force_classify, naive_one_point_targets
from .random_graphs import random_graph

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("homlab")


def _digest(path: str) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _report(args, payload: dict, code: int, inputs: dict[str, str] | None = None) -> int:
    if args.report:
        body = {
            "command": args.command,
            "arguments": {k: v for k, v in sorted(vars(args).items()) if k not in _UNREPORTED},
            "inputs": {k: _digest(p) for k, p in (inputs or {}).items()},
            **payload,
            "exit_code": code,
        }
        io.write_json(args.report, body)
    return code


# excluded from reports: they do not change results
_UNREPORTED = {"command", "report", "threads", "func", "verbose"}


# --------------------------------------------------------------------------- gen


def _cmd_gen(args) -> int:
    kind = args.kind
    if kind == "rado":
        rep = rado_approx(args.n, args.base, args.rounds, args.cap)
    elif kind == "partitioned":
        rep = partitioned_rado(args.n, args.m, args.base, args.cap, args.passes)
    elif kind == "diamond":
        rep = diamond_M(args.clique)
    elif kind == "mainthm":
        P = io.load_poset(args.p) if args.p else None
        rep = mainthm_structure(
            io.load_poset(args.q), args.base, args.cap, args.passes, args.seed, args.vertex_colored, P
        )
    elif kind == "lattice":
        rep = lattice_counterexample(io.load_poset(args.p), io.load_poset(args.q), args.base, args.cap, args.passes)
    elif kind == "random":
        G = random_graph(random.Random(args.seed), args.vertices, io.load_poset(args.p), io.load_poset(args.q))
        rep = None
    else:  # argparse restricts the choices
        raise AssertionError(kind)
    G = rep.graph if rep else G
    cert = rep.certificate if rep else LevelCertificate()
    out = args.out or kind
    gpath, cpath = f"{out}.graph.json", f"{out}.cert.json"
    io.write_json(gpath, io.graph_to_json(G))
    io.write_json(cpath, io.certificate_to_json(cert))
    print(f"{kind}: {len(G)} vertices, {sum(1 for _ in G.edges())} colored pairs, {len(cert.axioms)} certified axioms")
    print(f"wrote {gpath} and {cpath}")
    if rep:
        for note in rep.notes:
            print(f"note: {note}")
    payload = {
        "kind": kind,
        "vertices": len(G),
        "axioms": len(cert.axioms),
        "outputs": {"graph": _digest(gpath), "certificate": _digest(cpath)},
        "parameters": rep.parameters if rep else {"kind": "random"},
        "witnesses": rep.witnesses if rep else {},
    }
    return _report(args, payload, EXIT_OK)


# --------------------------------------------------------------------------- classify


def _cmd_classify(args) -> int:
    G = io.load_graph(args.graph)
    if args.naive:
        res = brute_force_classify(G)
    else:
        res = classify(G, args.max_domain, threads=args.threads)
    scope = "exact" if res.exact else f"domains up to {res.search_bound}"
    print(f"{len(G)} vertices ({scope}{', brute force' if args.naive else ''})")
    for name, ok, w in (
        ("MH", res.is_MH, res.mh_witness),
        ("HH", res.is_HH, res.hh_witness),
        ("MM", res.is_MM, res.mm_witness),
    ):
        line = f"{name}={'true' if ok else 'false'}"
        if w is not None:
            line += f"  witness {io.format_map(w.map)}"
            if w.vertex is not None:
                line += f" blocked at {w.vertex}"
        print(line)
    return _report(args, {"classification": res.to_json()}, EXIT_OK, {"graph": args.graph})


# --------------------------------------------------------------------------- witness


def _pool(G, text):
    if text is None:
        return None
    names = [s.strip() for s in text.split(",") if s.strip()]
    for v in names:
        G.vidx(v)
    return names


def _cmd_witness(args) -> int:
    G = io.load_graph(args.graph)
    pool = _pool(G, args.pool)
    found = next(iter_failure_witnesses(G, args.max_domain, args.mode, pool, pool), None)
    payload: dict = {"mode": args.mode, "max_domain": args.max_domain}
    if found is None:
        print(f"none found with domain <= {args.max_domain}")
        payload["witness"] = None
    else:
        f, c = found
        print(f"witness {io.format_map(f)} blocked at {c} (minimal domain size {len(f)})")
        payload["witness"] = {"map": [list(p) for p in f.pairs()], "vertex": c}
    ok = True
    if args.expect is not None:
        ok = (found is not None) == (args.expect == "found")
    if args.expect_map is not None:
        exp = io.parse_map(G, args.expect_map)
        if not is_homomorphism(exp) or (args.mode == "mh" and not exp.is_injective()):
            raise HomlabError(f"expected map {args.expect_map!r} is not a partial {'mono' if args.mode == 'mh' else 'homo'}morphism")
        blocked = [v for v in G.vertices if v not in exp.mapping and not one_point_targets(exp, v)]
        minimal = found is not None and len(exp) == len(found[0])
        hit = bool(blocked) and minimal
        if args.expect_vertex is not None:
            hit = hit and args.expect_vertex in blocked
        print(f"expected map {io.format_map(exp)}: blocked at {blocked or 'nothing'}; "
              f"{'is' if hit else 'is not'} a minimal witness")
        payload["expected"] = {"map": [list(p) for p in exp.pairs()], "blocked": blocked, "minimal": hit}
        ok = ok and hit
    code = EXIT_OK if ok else EXIT_FAIL
    if not ok:
        print("expectation not met")
    return _report(args, payload, code, {"graph": args.graph})


# --------------------------------------------------------------------------- verify-cert


def _cmd_verify_cert(args) -> int:
    G = io.load_graph(args.graph)
    cert = io.load_certificate(args.cert)
    failures = verify_certificate(G, cert)
    for msg in failures[:20]:
        print(f"FAIL {msg}")
    if len(failures) > 20:
        print(f"... {len(failures) - 20} more")
    print(f"{len(cert.axioms)} axioms over {len(cert.levels)} levels: {'ok' if not failures else f'{len(failures)} failures'}")
    code = EXIT_OK if not failures else EXIT_FAIL
    return _report(args, {"axioms": len(cert.axioms), "failures": failures}, code, {"graph": args.graph, "cert": args.cert})


# --------------------------------------------------------------------------- check-extension


def _cmd_check_extension(args) -> int:
    G = io.load_graph(args.graph)
    f = io.parse_map(G, args.map)
    targets = naive_one_point_targets(f, args.vertex) if args.naive else one_point_targets(f, args.vertex)
    print(f"{args.vertex}: {len(targets)} targets" + (f" {', '.join(targets)}" if targets else ""))
    code = EXIT_OK if targets else EXIT_FAIL
    return _report(args, {"map": [list(p) for p in f.pairs()], "vertex": args.vertex, "targets": targets}, code, {"graph": args.graph})


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="homlab", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="log construction diagnostics")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--report", help="write a machine-readable JSON report here")

    g = sub.add_parser("gen", help="generate a structure and its certificate")
    g.add_argument("kind", choices=["rado", "partitioned", "diamond", "mainthm", "lattice", "random"])
    g.add_argument("--out", help="output prefix (default: the kind)")
    g.add_argument("--n", type=int, default=2, help="antichain size of F_n (rado, partitioned)")
    g.add_argument("--m", type=int, default=2, help="number of classes (partitioned)")
    g.add_argument("--base", type=int, default=None, help="base vertices")
    g.add_argument("--rounds", type=int, default=1)
    g.add_argument("--cap", type=int, default=None, help="largest certified subset")
    g.add_argument("--passes", type=int, default=1)
    g.add_argument("--clique", type=int, default=1, help="clique size (diamond)")
    g.add_argument("--p", default=None, help="vertex-color poset: file or shorthand")
    g.add_argument("--q", default=None, help="edge-color poset: file or shorthand")
    g.add_argument("--seed", type=int, default=0, help="fill offset (mainthm) or RNG seed (random)")
    g.add_argument("--vertices", type=int, default=5, help="vertex count (random)")
    g.add_argument("--vertex-colored", action="store_true", help="mainthm: maximal P-color on the specials")
    common(g)
    g.set_defaults(func=_with_gen_defaults)

    c = sub.add_parser("classify", help="MH/HH/MM verdicts with witnesses")
    c.add_argument("graph")
    c.add_argument("--max-domain", type=int, default=None, help="bound the partial-map domain size")
    c.add_argument("--naive", action="store_true", help="use the brute-force oracle")
    c.add_argument("--threads", type=int, default=None, help="worker threads (default HOMLAB_THREADS or 1)")
    common(c)
    c.set_defaults(func=_cmd_classify)

    w = sub.add_parser("witness", help="first one-point-blocked partial map")
    w.add_argument("graph")
    w.add_argument("--mode", choices=["hh", "mh"], default="hh")
    w.add_argument("--max-domain", type=int, default=3)
    w.add_argument("--pool", help="comma-separated vertices to draw domains and images from")
    w.add_argument("--expect", choices=["found", "none"])
    w.add_argument("--expect-map", help="a map such as a:a,b:a,c:c that must be a minimal witness")
    w.add_argument("--expect-vertex", help="with --expect-map: a vertex that must block it")
    common(w)
    w.set_defaults(func=_cmd_witness)

    v = sub.add_parser("verify-cert", help="recheck a certificate against its graph")
    v.add_argument("graph")
    v.add_argument("cert")
    common(v)
    v.set_defaults(func=_cmd_verify_cert)

    e = sub.add_parser("check-extension", help="one-point extension targets of a map")
    e.add_argument("graph")
    e.add_argument("--map", required=True, help="e.g. a:a,b:a")
    e.add_argument("--vertex", required=True)
    e.add_argument("--naive", action="store_true", help="use the definition-checking oracle")
    common(e)
    e.set_defaults(func=_cmd_check_extension)
    return ap


_GEN_DEFAULTS = {
    "rado": {"base": 2, "cap": 2},
    "partitioned": {"base": 2, "cap": 1},
    "mainthm": {"base": 2, "cap": 2, "q": "D2"},
    "lattice": {"cap": 2, "p": "trivial", "q": "F2"},
    "random": {"p": "trivial", "q": "chain3"},
}


def _with_gen_defaults(args) -> int:
    for k, val in _GEN_DEFAULTS.get(args.kind, {}).items():
        if getattr(args, k) is None:
            setattr(args, k, val)
    return _cmd_gen(args)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except (ValueError, KeyError, TypeError, OSError) as exc:  # HomlabError is a ValueError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"time {time.perf_counter() - t0:.3f} s")
    return code


if __name__ == "__main__":
    sys.exit(main())
