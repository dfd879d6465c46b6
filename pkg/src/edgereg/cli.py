"""Command-line interface.

Exit codes: 0 when every check holds, 1 when a violation or counterexample
was found (evidence is printed), 2 for usage and resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import harness
from .errors import EdgeRegError
from .evenconn import EdgeMultiset, colon_graph, connected_pairs, find_even_connection
from .graph import enumerate_graphs, is_chordal, parse_graph, to_graph6
from .homology import parse_field
from .invariants import (
    cochordal_cover_number,
    induced_matching_number,
    is_vertex_decomposable,
    matching_number,
    min_max_matching,
    zeta,
)
from .regularity import colon_regularity, power_regularity


def _edges_arg(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.replace(" ", "").split(";"):
        if not part:
            continue
        try:
            u, v = (int(x) for x in part.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad edge {part!r}; expected i,j[;k,l...]") from None
        out.append((u, v))
    if not out:
        raise argparse.ArgumentTypeError("no edges given")
    return out


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def cmd_invariants(args) -> int:
    g = parse_graph(args.graph)
    z, packing = zeta(g)
    data = {
        "graph6": to_graph6(g),
        "n": g.n,
        "edges": g.num_edges,
        "nu": induced_matching_number(g),
        "zeta": z,
        "zeta_centers": list(packing.centers),
        "cochord": cochordal_cover_number(g, args.guard_override),
        "matching": matching_number(g),
        "min_max_matching": min_max_matching(g),
        "chordal": is_chordal(g),
        "vertex_decomposable": is_vertex_decomposable(g, args.guard_override),
    }
    text = (
        f"nu={data['nu']} zeta={data['zeta']} cochord={data['cochord']} "
        f"min-max={data['min_max_matching']} matching={data['matching']} "
        f"chordal={data['chordal']} vertex-decomposable={data['vertex_decomposable']}"
    )
    _emit(args, data, text)
    return 0


def cmd_reg(args) -> int:
    g = parse_graph(args.graph)
    report = power_regularity(g, args.power, args.field, args.guard_override)
    data = {"graph6": to_graph6(g), "q": args.power, **report.to_json()}
    _emit(args, data, str(report.value))
    return 0


def cmd_colon(args) -> int:
    g = parse_graph(args.graph)
    e = EdgeMultiset.of(g, args.edges)
    gp, vmap = colon_graph(g, e)
    certs = []
    for u, v in sorted(connected_pairs(g, e)):
        if u != v and g.has_edge(u, v):
            continue
        cert = find_even_connection(g, e, u, v)
        certs.append({"u": u, "v": v, **cert.to_json()})
    report = colon_regularity(g, e, args.field, args.guard_override)
    names = [str(lab[0]) + ("" if lab[1] == 1 else f"^({lab[1]})") for lab in gp.vertex_labels()]
    edges = [[names[a], names[b]] for a, b in gp.edges()]
    bound = harness.zeta_of(g) + 1
    data = {
        "graph6": to_graph6(g),
        "multiset": [list(x) for x in e.edges],
        "colon_graph": {"graph6": to_graph6(gp), "vertices": names, "edges": edges},
        "certificates": certs,
        "regularity": report.to_json(),
        "zeta_bound": bound,
    }
    lines = [f"G' = {to_graph6(gp)} on {len(names)} vertices"]
    lines.append("edges: " + " ".join(f"{a}-{b}" for a, b in edges))
    for c in certs:
        lines.append(f"  {c['u']}~{c['v']}: path {c['path']} uses {c['assignment']}")
    lines.append(f"reg = {report.value} (zeta + 1 = {bound})")
    _emit(args, data, "\n".join(lines))
    return 0


def _family(args, defn: harness.CheckDef) -> harness.FamilySpec:
    fam = defn.family
    updates = {}
    for name in ("nmin", "nmax", "qmax", "smax", "samples", "seed"):
        value = getattr(args, name, None)
        if value is not None:
            updates[name] = value
    if "qmax" in updates:
        updates["extra_q"] = ()
    if getattr(args, "connected", False):
        updates["connected"] = True
    if args.guard_override:
        updates["guard_override"] = True
    return replace(fam, **updates)


def _run_sweep(args, check_id: str) -> int:
    defn = harness.get_check(check_id)
    if getattr(args, "graph", None):
        params = {}
        if args.q is not None:
            params["q"] = args.q
        if args.edges is not None:
            params["edges"] = tuple(args.edges)
        chk = harness.verify(defn.id, args.graph, args.field, **params)
        _emit(args, chk.to_json(), f"{chk.id}: {chk.verdict} (lhs={chk.lhs}, rhs={chk.rhs})")
        return 1 if chk.verdict == harness.VIOLATED else 0
    fam = _family(args, defn)
    report = harness.sweep(defn.id, fam, args.field, args.jobs)
    if args.csv:
        print(harness.SweepReport.CSV_HEADER)
        print(report.csv_row())
    elif args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True, default=str))
    else:
        word = "counterexamples" if report.label == "evidence" else "violations"
        print(
            f"{report.id}: checked {report.checked}, {word} {len(report.violations)}, "
            f"skipped {len(report.skipped)}, {report.elapsed_ms} ms ({report.label})"
        )
        for v in report.violations:
            print("  " + json.dumps(v, default=str))
    return 1 if report.violations else 0


def cmd_verify(args) -> int:
    return _run_sweep(args, args.id)


def cmd_question(args) -> int:
    if args.number not in ("4.10",):
        raise EdgeRegError(f"unknown question {args.number!r}; available: 4.10")
    return _run_sweep(args, "q-4.10")


def cmd_enumerate(args) -> int:
    graphs = list(enumerate_graphs(args.n, no_isolated=args.no_isolated, guard_override=args.guard_override))
    if args.json:
        print(json.dumps({"n": args.n, "count": len(graphs), "graph6": [to_graph6(g) for g in graphs]}))
    else:
        for g in graphs:
            print(to_graph6(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=parse_field, default="QQ", help="qq (default), gfp or GF(p)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help="sampling seed")
    common.add_argument("--guard-override", action="store_true", help="lift size guards")

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--nmin", type=int)
    family.add_argument("--nmax", type=int)
    family.add_argument("--qmax", type=int)
    family.add_argument("--smax", type=int)
    family.add_argument("--samples", type=int)
    family.add_argument("--connected", action="store_true")
    family.add_argument("--csv", action="store_true", help="one-line CSV summary")
    family.add_argument("--graph", help="check a single graph instead of a family")
    family.add_argument("--q", type=int, help="power for --graph")
    family.add_argument("--edges", type=_edges_arg, help="edge multiset for --graph, i,j;k,l")

    parser = argparse.ArgumentParser(prog="edgereg", description="Regularity of powers of edge ideals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="nu, zeta, cochord, min-max matching, chordal, VD")
    p.add_argument("graph", help="graph6, JSON or a name like C5, P4, house, C5+C7")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("reg", parents=[common], help="regularity of I(G)^q")
    p.add_argument("graph")
    p.add_argument("--power", type=int, default=1)
    p.set_defaults(func=cmd_reg)

    p = sub.add_parser("colon", parents=[common], help="colon graph, certificates and regularity")
    p.add_argument("graph")
    p.add_argument("--edges", type=_edges_arg, required=True, help="i,j[;k,l...]")
    p.set_defaults(func=cmd_colon)

    p = sub.add_parser("verify", parents=[common, family], help="run a named check")
    p.add_argument("id", help="check id; 'list' prints them")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", parents=[common], help="graph6 list of graphs on n vertices")
    p.add_argument("n", type=int)
    p.add_argument("--no-isolated", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("question", parents=[common, family], help="counterexample search")
    p.add_argument("number", help="4.10")
    p.set_defaults(func=cmd_question)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "id", None) == "list":
        for cid in harness.check_ids():
            print(f"{cid}: {harness.REGISTRY[cid].anchor}")
        return 0
    try:
        return args.func(args)
    except EdgeRegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
