"""Command-line entry point.

Exit codes: 0 success, 1 domain error (bad candidate, cycle, syntax, failed
verification), 2 usage error. ``--output machine`` prints a single JSON
document with sorted keys and no timestamps.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import cantor, convergence, interval, poset, topology, witness
from .bitset import members
from .errors import InvalidCandidate, OrdTopError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, top: bool = False) -> None:
    default = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--output", choices=["human", "machine"], default=default("human"))
    p.add_argument("--seed", type=int, default=default(0))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ordtop", description="Interval and order topologies on posets and Boolean algebras.")
    _common(parser, top=True)
    sub = parser.add_subparsers(dest="group", parser_class=_Parser)

    def leaf(group, name, help):
        p = group.add_parser(name, help=help)
        _common(p)
        return p

    g = sub.add_parser("poset", help="inspect a poset").add_subparsers(dest="cmd", parser_class=_Parser)
    p = leaf(g, "show", "order structure and lattice classification")
    p.add_argument("--poset", required=True, help="family name (chain4, powerset3, n5, m3, ...) or JSON file")

    g = sub.add_parser("topology", help="interval and order topologies").add_subparsers(dest="cmd", parser_class=_Parser)
    for name, help in (("interval", "interval topology"), ("order", "order-convergence topology")):
        p = leaf(g, name, help)
        p.add_argument("--poset", required=True)
        p.add_argument("--dump", action="store_true", help="print every open set")
    p = leaf(g, "compare", "compare order and interval topologies")
    p.add_argument("--poset", required=True)

    g = sub.add_parser("convergence", help="convergence spaces").add_subparsers(dest="cmd", parser_class=_Parser)
    p = leaf(g, "explore", "unique limits vs Hausdorff on finite convergence spaces")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "sampled"])
    p.add_argument("--samples", type=int)
    p.add_argument("--q", type=float, default=0.25)

    g = sub.add_parser("ba", help="the free atomless Boolean algebra").add_subparsers(dest="cmd", parser_class=_Parser)
    p = leaf(g, "show", "canonical form and support of a term")
    p.add_argument("term")
    p = leaf(g, "leq", "decide a <= b")
    p.add_argument("a")
    p.add_argument("b")
    p = leaf(g, "atoms", "atoms of the subalgebra generated by some terms")
    p.add_argument("--gens", required=True)
    p = leaf(g, "witness", "escape a candidate closed cover of 0 and 1")
    p.add_argument("--ideal", required=True)
    p.add_argument("--filter", required=True)
    p = leaf(g, "witness-rel", "escape a candidate cover inside [a, b]")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--ideal", required=True)
    p.add_argument("--filter", required=True)
    p = leaf(g, "fuzz", "run the witness construction on random candidates")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--max-gens", type=int, default=4)
    p.add_argument("--max-depth", type=int, default=4)
    p.add_argument("--max-var", type=int, default=4)
    return parser


# -- helpers -------------------------------------------------------------------


def load_poset(source: str) -> poset.FinitePoset:
    try:
        return poset.named(source)
    except KeyError:
        pass
    if not os.path.exists(source):
        raise OrdTopError(f"{source!r} is neither a poset family name nor a readable file")
    with open(source) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise OrdTopError(f"poset file {source}: {exc}") from None
    return poset.build_poset(doc)


def _terms(text: str) -> list[cantor.BoolTerm]:
    return [cantor.parse_term(t) for t in text.split(",") if t.strip()]


def _topology_doc(t: topology.Topology, dump: bool) -> dict:
    sep = topology.separation_report(t)
    doc = {"ground_size": t.ground_size, "open_count": len(t.opens), **sep._asdict()}
    if dump:
        doc["opens"] = t.sorted_opens()
    return doc


# -- commands -------------------------------------------------------------------


def cmd_poset_show(args) -> tuple[dict, int]:
    p = load_poset(args.poset)
    cls = poset.lattice_classify(p)
    doc = {
        "size": p.size,
        "labels": [p.label(x) for x in range(p.size)],
        "covers": [list(c) for c in p.covers()],
        "top": poset.top(p),
        "bottom": poset.bottom(p),
        "kind": cls.kind.value,
        "atoms": members(cls.atoms),
        "coatoms": members(cls.coatoms),
    }
    if cls.complement_map is not None:
        doc["complement"] = {str(k): v for k, v in sorted(cls.complement_map.items())}
    return doc, 0


def cmd_topology(args) -> tuple[dict, int]:
    p = load_poset(args.poset)
    if args.cmd == "compare":
        res = interval.compare_order_vs_interval(p)
        return {
            "poset": args.poset,
            "relation": res.relation.value,
            "order": _topology_doc(res.order, False),
            "interval": _topology_doc(res.interval, False),
        }, 0
    t = interval.interval_topology(p) if args.cmd == "interval" else convergence.order_topology(p)
    if args.dump and args.output == "human":
        return topology.dump(t), 0
    return {"poset": args.poset, "topology": args.cmd, **_topology_doc(t, args.dump)}, 0


def cmd_explore(args) -> tuple[dict, int]:
    mode = args.mode or ("sampled" if args.samples is not None else "exhaustive")
    if mode == "sampled" and args.samples is None:
        raise UsageError("--mode sampled needs --samples")
    rep = convergence.explore_prop23(
        args.n, mode=mode, samples=args.samples or 0, seed=args.seed, q=args.q
    )
    # Direction (1) => (2) is a theorem; any violation means a bug.
    return rep.to_dict(), 1 if rep.dir1_violations else 0


def cmd_ba(args) -> tuple[dict, int]:
    if args.cmd == "show":
        t = cantor.parse_term(args.term)
        return {"term": str(t), "support": sorted(cantor.support(t))}, 0
    if args.cmd == "leq":
        a, b = cantor.parse_term(args.a), cantor.parse_term(args.b)
        return {"a": str(a), "b": str(b), "leq": cantor.leq(a, b)}, 0
    if args.cmd == "atoms":
        basis = cantor.subalgebra_atoms(_terms(args.gens))
        return {
            "generators": [str(t) for t in basis.generators],
            "atoms": [str(t) for t in basis.atoms],
            "coatoms": [str(t) for t in basis.coatoms],
        }, 0
    if args.cmd == "fuzz":
        summary = witness.fuzz_refute(
            args.trials, args.max_gens, args.max_depth, args.max_var, args.seed
        )
        doc = {
            "parameters": {
                "trials": args.trials,
                "max_gens": args.max_gens,
                "max_depth": args.max_depth,
                "max_var": args.max_var,
                "seed": args.seed,
            },
            **summary.to_dict(),
        }
        return doc, 0 if summary.failures == 0 else 1
    gens = interval.GeneratorSets(_terms(args.ideal), _terms(args.filter))
    if args.cmd == "witness":
        rep = witness.separation_witness(gens, strict=False)
    else:
        rep = witness.relativized_witness(
            cantor.parse_term(args.a), cantor.parse_term(args.b), gens, strict=False
        )
    return rep.to_dict(), 0 if rep.valid else 1


# -- rendering ----------------------------------------------------------------------


def _human(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict) and set(item) == {"name", "passed"}:
                lines.append(f"{pad}[{'ok' if item['passed'] else 'FAIL'}] {item['name']}")
            elif isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.extend(_human(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(f"{pad}{_inline(value)}")
    return lines


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) for x in v) and len(v) <= 16


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return str(v)


def emit(doc, mode: str, stream) -> None:
    if isinstance(doc, str):
        stream.write(doc)
    elif mode == "machine":
        stream.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        stream.write("\n".join(_human(doc)) + "\n")


_DISPATCH = {
    ("poset", "show"): cmd_poset_show,
    ("topology", "interval"): cmd_topology,
    ("topology", "order"): cmd_topology,
    ("topology", "compare"): cmd_topology,
    ("convergence", "explore"): cmd_explore,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cmd = getattr(args, "cmd", None)
    if args.group is None or cmd is None:
        parser.print_help(sys.stderr)
        return 2
    handler = cmd_ba if args.group == "ba" else _DISPATCH[(args.group, cmd)]
    try:
        doc, code = handler(args)
    except UsageError as exc:
        print(f"ordtop: error: {exc}", file=sys.stderr)
        return 2
    except OrdTopError as exc:
        if isinstance(exc, InvalidCandidate):
            print(f"ordtop: {exc}", file=sys.stderr)
        else:
            print(f"ordtop: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    emit(doc, args.output, sys.stdout)
    return code


run = main

if __name__ == "__main__":
    sys.exit(main())
