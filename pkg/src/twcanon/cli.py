"""Batch command line: canonize, compare, and inspect graphs.

Exit codes: 0 success, 1 usage or input errors, 2 verified treewidth >= k,
3 non-isomorphic (iso only), 4 pair budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import terms as tm
from .atoms import atom_decomposition
from .bags import Params, bags_no_cliqueseps, bags_with_atoms
from .canonize import canonize, isomorphic
from .decomposition import validate
from .errors import BudgetExceededError, TooWideError
from .formats import (
    FormatError,
    format_graph,
    parse_graph,
    parse_tree_decomposition,
)
from .improved import improve
from .oracle import gen_partial_ktree

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOO_WIDE = 2
EXIT_NON_ISOMORPHIC = 3
EXIT_BUDGET = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _load_graph(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}")
    return parse_graph(text, source=str(path))


def _build_params(args):
    params = Params.for_k(args.k)
    if getattr(args, "pair_budget", None) is not None:
        params = params.override(pair_budget=args.pair_budget)
    for item in getattr(args, "param", None) or []:
        name, _, value = item.partition("=")
        if not value:
            raise _UsageError(f"--param expects NAME=VALUE, got {item!r}")
        try:
            params = params.override(**{name: int(value)})
        except (ValueError, TypeError) as exc:
            raise _UsageError(f"bad --param {item!r}: {exc}")
    if params.non_canonical:
        print(
            "warning: non-default parameters; output is NOT a canonical form",
            file=sys.stderr,
        )
    return params


def _add_common(sub, budget=True):
    sub.add_argument("-k", type=int, required=True, help="treewidth bound (exclusive)")
    if budget:
        sub.add_argument(
            "--pair-budget", type=int, default=None,
            help="max (L,R) pairs per enumeration step (default 2e6)",
        )
        sub.add_argument(
            "--param", action="append", metavar="NAME=VALUE",
            help="override tau/rho/zeta/pair_budget; taints canonicity",
        )


def main(argv=None) -> int:
    parser = _Parser(prog="twcanon", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p_canon = subs.add_parser("canon", help="print the canonical construction term")
    _add_common(p_canon)
    p_canon.add_argument("graph")

    p_iso = subs.add_parser("iso", help="decide isomorphism of two graphs")
    _add_common(p_iso)
    p_iso.add_argument("graph1")
    p_iso.add_argument("graph2")

    p_improve = subs.add_parser("improve", help="print the k-improved graph")
    _add_common(p_improve, budget=False)
    p_improve.add_argument("graph")

    p_atoms = subs.add_parser(
        "atoms", help="print the clique minimal separator decomposition bags"
    )
    p_atoms.add_argument("graph")

    p_bags = subs.add_parser("bags", help="print the candidate bag family")
    _add_common(p_bags)
    p_bags.add_argument(
        "--stage", choices=["raw", "atoms"], default="atoms",
        help="raw: single clique-separator-free graph; atoms: general",
    )
    p_bags.add_argument("graph")

    p_td = subs.add_parser("td-validate", help="validate a tree decomposition")
    p_td.add_argument("graph")
    p_td.add_argument("decomposition")

    p_term = subs.add_parser("term-eval", help="evaluate a term file to a graph")
    p_term.add_argument("term")

    p_gen = subs.add_parser("gen", help="generate a random partial k-tree")
    p_gen.add_argument("-k", type=int, required=True)
    p_gen.add_argument("-n", type=int, required=True)
    p_gen.add_argument("--keep-prob", type=float, default=1.0)
    p_gen.add_argument("--seed", type=int, default=0)

    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except _UsageError as exc:
        print(f"twcanon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, tm.TermError) as exc:
        print(f"twcanon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TooWideError:
        print("TOOWIDE")
        return EXIT_TOO_WIDE
    except BudgetExceededError as exc:
        print("BUDGETEXCEEDED")
        print(f"twcanon: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def _dispatch(args) -> int:
    if args.command == "canon":
        params = _build_params(args)
        res = canonize(_load_graph(args.graph), args.k, params)
        print(res.term.ser)
        return EXIT_OK

    if args.command == "iso":
        params = _build_params(args)
        g1 = _load_graph(args.graph1)
        g2 = _load_graph(args.graph2)
        mapping = isomorphic(g1, g2, args.k, params)
        if mapping is None:
            print("NONISOMORPHIC")
            return EXIT_NON_ISOMORPHIC
        print("ISOMORPHIC")
        for u in sorted(mapping):
            print(f"{u + 1} {mapping[u] + 1}")
        return EXIT_OK

    if args.command == "improve":
        if args.k < 1:
            raise _UsageError("k must be at least 1")
        print(format_graph(improve(_load_graph(args.graph), args.k)), end="")
        return EXIT_OK

    if args.command == "atoms":
        g = _load_graph(args.graph)
        if not g.is_connected():
            raise _UsageError("atoms requires a connected graph")
        dec = atom_decomposition(g)
        for bag in sorted(dec.bags, key=sorted):
            print(" ".join(str(v + 1) for v in sorted(bag)))
        return EXIT_OK

    if args.command == "bags":
        params = _build_params(args)
        g = _load_graph(args.graph)
        if not g.is_connected():
            raise _UsageError("bags requires a connected graph")
        h = improve(g, args.k)
        if args.stage == "raw":
            if len(atom_decomposition(h).bags) > 1:
                raise _UsageError(
                    "--stage raw requires a clique-separator-free improved graph"
                )
            family = bags_no_cliqueseps(h, params).family
        else:
            family = bags_with_atoms(h, params)
        for bag in sorted(family, key=lambda b: (len(b), sorted(b))):
            print(" ".join(str(v + 1) for v in sorted(bag)))
        return EXIT_OK

    if args.command == "td-validate":
        g = _load_graph(args.graph)
        try:
            text = Path(args.decomposition).read_text()
        except OSError as exc:
            raise _UsageError(f"cannot read {args.decomposition}: {exc.strerror}")
        td = parse_tree_decomposition(text, source=str(args.decomposition))
        report = validate(g, td)
        if report.ok:
            print(f"ok width {report.width} adhesion-width {report.adhesion_width}")
            return EXIT_OK
        for violation in report.violations:
            print(violation)
        return EXIT_USAGE

    if args.command == "term-eval":
        try:
            text = Path(args.term).read_text()
        except OSError as exc:
            raise _UsageError(f"cannot read {args.term}: {exc.strerror}")
        res = tm.eval(tm.parse(text))
        print(format_graph(res.graph), end="")
        for v in sorted(res.labelling):
            print(f"l {res.labelling[v]} {v + 1}")
        return EXIT_OK

    if args.command == "gen":
        try:
            g = gen_partial_ktree(args.n, args.k, args.keep_prob, args.seed)
        except ValueError as exc:
            raise _UsageError(str(exc))
        print(format_graph(g), end="")
        return EXIT_OK

    raise _UsageError(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
