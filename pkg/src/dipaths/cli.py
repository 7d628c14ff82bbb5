"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 solver budget exceeded,
3 verification failure.  Set ``DIPATHS_TIME_BUDGET`` (seconds) to bound
each solver call.
"""

from __future__ import annotations

import argparse
import json
import sys

from dipaths import certificates as certs
from dipaths import knorm
from dipaths.constructive import (
    NotMinimumDicoloring,
    good_path_partition,
    greedy_dicoloring,
    linial_dual_certificate,
    linial_primal_certificate,
    orthogonal_partition_to_mas,
    orthogonal_path,
)
from dipaths.digraph import parse_edge_list, to_dot, to_edge_list
from dipaths.generators import MODELS, GeneratorSpec, instances
from dipaths.harness import SEARCHES, sweep_theorems
from dipaths.solvers import BudgetExceeded, min_dicoloring

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class VerificationFailed(Exception):
    pass


def _read_graph(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_edge_list(text)


def _emit(obj) -> None:
    if isinstance(obj, certs.Certificate):
        sys.stdout.write(obj.to_json())
    else:
        sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _require(D, cert) -> certs.Certificate:
    verdict = certs.verify_certificate(D, cert)
    if not verdict:
        _emit(cert)
        raise VerificationFailed(verdict.reason)
    return cert


def cmd_analyze(args) -> None:
    D = _read_graph(args.input)
    out = {"n": D.n, "arcs": len(D.arcs), "values": {}, "certificates": {}}
    for name, fn in knorm.PARAMETERS.items():
        if D.n == 0:
            break
        report = fn(D, 1)
        cert = _require(D, certs.certify_report(D, report))
        out["values"][name] = report.value
        out["certificates"][name] = json.loads(cert.to_json())
    _emit(out)


def cmd_greedy(args) -> None:
    D = _read_graph(args.input)
    G = greedy_dicoloring(D)
    verdict = certs.check_greedy_dicoloring(D, [sorted(c) for c in G.classes])
    _emit({"classes": [sorted(c) for c in G.classes], "sizes": G.sizes()})
    if not verdict:
        raise VerificationFailed(verdict.reason)


def cmd_good_partition(args) -> None:
    D = _read_graph(args.input)
    good = good_path_partition(D, greedy_dicoloring(D))
    _emit(_require(D, certs.certify_good_partition(D, good)))


def cmd_orthogonal_path(args) -> None:
    D = _read_graph(args.input)
    classes = json.loads(args.classes) if args.classes else min_dicoloring(D)
    try:
        path = orthogonal_path(D, classes)
    except NotMinimumDicoloring as exc:
        _emit({"error": str(exc), "smaller_dicoloring": [sorted(c) for c in exc.smaller]})
        raise VerificationFailed("dicoloring is not minimum") from None
    _emit(_require(D, certs.certify_orthogonal_path(D, classes, path)))


def cmd_orthogonal_partition(args) -> None:
    D = _read_graph(args.input)
    T = json.loads(args.set) if args.set else None
    T, paths = orthogonal_partition_to_mas(D, T)
    _emit(_require(D, certs.certify_orthogonal_partition(D, T, paths)))


def cmd_linial(args) -> None:
    D = _read_graph(args.input)
    good = good_path_partition(D, greedy_dicoloring(D))
    primal = linial_primal_certificate(D, args.k, good=good)
    dual = linial_dual_certificate(D, args.k, good=good)
    cert = certs.certify_linial(D, primal, dual)
    bad = primal.violations() + dual.violations()
    if bad:
        _emit(cert)
        raise VerificationFailed("; ".join(bad))
    _emit(_require(D, cert))


def cmd_search(args) -> None:
    found = SEARCHES[args.question](args.n)
    _emit({"question": args.question, "n": args.n, "failures": [[m, list(w)] for m, w in found]})


def cmd_sweep(args) -> None:
    items = instances(args.model, args.n, count=args.count, p=args.p, seed=args.seed)
    report = sweep_theorems(items, kmax=args.kmax, workers=args.workers)
    for record in report.records:
        sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
    sys.stderr.write(json.dumps(report.summary(), sort_keys=True) + "\n")
    if not report.passed:
        raise VerificationFailed(f"{len(report.failures)} instance(s) failed")


def cmd_verify(args) -> None:
    D = _read_graph(args.graph)
    with open(args.certificate, encoding="utf-8") as fh:
        cert = certs.Certificate.from_json(fh.read())
    verdict = certs.verify_certificate(D, cert)
    _emit({"accepted": verdict.ok, "reason": verdict.reason})
    if not verdict:
        raise VerificationFailed(verdict.reason)


def cmd_gen(args) -> None:
    spec = GeneratorSpec(args.model, args.n, args.p, args.seed, args.index)
    sys.stdout.write(to_edge_list(spec.build()))


def cmd_export_dot(args) -> None:
    sys.stdout.write(to_dot(_read_graph(args.input)))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dipaths", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("input", help="edge-list file, or - for stdin")
        p.set_defaults(func=fn)
        return p

    graph_cmd("analyze", cmd_analyze, "alpha, alpha', chi, chi', pi, lambda with certificates")
    graph_cmd("greedy-dicolor", cmd_greedy, "greedy dicoloring by successive maximum acyclic sets")
    graph_cmd("good-partition", cmd_good_partition, "good path partition certificate")
    p = graph_cmd("orthogonal-path", cmd_orthogonal_path, "path orthogonal to a minimum dicoloring")
    p.add_argument("--classes", help="dicoloring as a JSON list of lists (default: solver's minimum)")
    p = graph_cmd("orthogonal-partition", cmd_orthogonal_partition, "path partition orthogonal to a maximum acyclic set")
    p.add_argument("--set", help="maximum acyclic set as a JSON list (default: solver's)")
    p = graph_cmd("linial", cmd_linial, "k-norm chain certificate")
    p.add_argument("--k", type=int, required=True)
    graph_cmd("export-dot", cmd_export_dot, "DOT rendering of the digraph")

    p = sub.add_parser("search", help="orthogonality failures over odd cycle orientations")
    p.add_argument("--question", type=int, choices=sorted(SEARCHES), required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sweep", help="theorem suite over generated instances (JSON lines)")
    p.add_argument("--model", choices=MODELS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--kmax", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="verify a certificate against a digraph")
    p.add_argument("certificate")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance as an edge list")
    p.add_argument("--model", choices=MODELS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--index", type=int)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, OSError) as exc:
        print(f"dipaths: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"dipaths: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationFailed as exc:
        print(f"dipaths: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
