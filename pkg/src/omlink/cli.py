"""Command line entry point: ``omlink {scan,analyze,embed,random,validate}``.

Exit codes: 0 clean, 1 failures found, 2 usage or data error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .core import FormatError, circuits_from_chirotope, is_acyclic, parse_chirotope
from .geometry import (DegeneracyError, GenerationError, chirotope_from_points, geometric_linked,
                       random_general_position, read_points)
from .linkage import find_triple_link, linked_triangle_graph, verify_certificate
from .scan import (DataError, ResumeError, analyze_orientation_class, class_result_to_dict,
                   emit_report, scan_database, validate_database)

EXIT_OK, EXIT_FAILURES, EXIT_ERROR = 0, 1, 2


def _print(doc: dict | str, out=None) -> None:
    text = doc if isinstance(doc, str) else json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_scan(args) -> int:
    report = scan_database(args.db, start=args.start, stop=args.stop, workers=args.workers,
                           checkpoint=args.checkpoint, resume=args.resume,
                           block_size=args.block_size, validate=not args.no_validate)
    _print(emit_report(report, include_timing=not args.no_timing), args.output)
    if not report.accounting_ok:
        print("accounting mismatch: tested + skipped != classes * reorientations",
              file=sys.stderr)
        return EXIT_ERROR
    return EXIT_FAILURES if report.failures else EXIT_OK


def cmd_analyze(args) -> int:
    text = sys.stdin.read() if args.chirotope == "-" else args.chirotope
    chi = parse_chirotope(text, args.n, args.rank)
    res = analyze_orientation_class(chi, keep_certificates=True)
    _print(class_result_to_dict(res, chi), args.output)
    return EXIT_FAILURES if res.failures else EXIT_OK


def cmd_embed(args) -> int:
    config = read_points(args.points)
    chi = chirotope_from_points(config)
    circuits = circuits_from_chirotope(chi)
    doc = {
        "format": "omlink-embedding/1",
        "n": config.n,
        "chirotope": str(chi),
        "acyclic": is_acyclic(circuits),
        "circuits": [str(c) for c in circuits],
    }
    status = EXIT_OK
    if config.n >= 6:
        graph = linked_triangle_graph(circuits)
        doc["linked_pairs"] = sorted([list(t.vertices), list(u.vertices)]
                                     for t, adj in graph.items() for u in adj if t < u)
    if config.n == 9:
        cert = find_triple_link(circuits)
        doc["certificate"] = cert.to_dict() if cert else None
        if cert is None:
            status = EXIT_FAILURES
    _print(doc, args.output)
    return status


def cmd_random(args) -> int:
    found = verified = 0
    failures = []
    for seed in range(args.seed, args.seed + args.count):
        config = random_general_position(args.n, seed, args.box)
        circuits = circuits_from_chirotope(chirotope_from_points(config))
        cert = find_triple_link(circuits)
        if cert is None:
            failures.append(seed)
            continue
        found += 1
        m = config.labelled(cert.middle.vertices)
        ok = (verify_certificate(circuits, cert)
              and geometric_linked(m, config.labelled(cert.left.vertices))
              and geometric_linked(m, config.labelled(cert.right.vertices)))
        if ok:
            verified += 1
        else:
            failures.append(seed)
    _print({"format": "omlink-random/1", "n": args.n, "box": args.box,
            "seeds": [args.seed, args.seed + args.count], "found": found,
            "verified": verified, "failures": failures}, args.output)
    return EXIT_FAILURES if failures else EXIT_OK


def cmd_validate(args) -> int:
    count, bad = validate_database(args.db, args.n, args.rank)
    _print({"format": "omlink-validation/1", "records": count, "valid": count - len(bad),
            "invalid": [{"line": l, "axiom": a, "detail": d} for l, a, d in bad]}, args.output)
    return EXIT_FAILURES if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="omlink", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scan", help="scan a chirotope database for three-component links")
    s.add_argument("db")
    s.add_argument("--from", dest="start", type=int, default=0,
                   help="first class index (0-based, inclusive)")
    s.add_argument("--to", dest="stop", type=int, default=None,
                   help="end class index (exclusive)")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--checkpoint")
    s.add_argument("--resume", action="store_true")
    s.add_argument("--block-size", type=int, default=1024)
    s.add_argument("--no-validate", action="store_true", help="skip the circuit-axiom check")
    s.add_argument("--no-timing", action="store_true", help="omit elapsed time from the report")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_scan)

    a = sub.add_parser("analyze", help="analyze one chirotope ('-' reads stdin)")
    a.add_argument("chirotope")
    a.add_argument("--n", type=int, default=9)
    a.add_argument("--rank", type=int, default=4)
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("embed", help="analyze a points file")
    e.add_argument("points")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_embed)

    r = sub.add_parser("random", help="generate random embeddings and verify each")
    r.add_argument("--n", type=int, default=9)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--count", type=int, default=100)
    r.add_argument("--box", type=int, default=100)
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_random)

    v = sub.add_parser("validate", help="check the circuit axioms for every record")
    v.add_argument("db")
    v.add_argument("--n", type=int, default=9)
    v.add_argument("--rank", type=int, default=4)
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (FormatError, DataError, ResumeError, DegeneracyError, GenerationError,
            ValueError, OSError) as exc:
        print(f"omlink {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
