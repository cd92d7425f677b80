"""circsym command line: info, params, table, verify, appendix, export."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import zmod
from .autgroup import (
    CheckStatus,
    build_graph,
    closed_form_group,
    group_order,
    group_report,
    verify_group,
)
from .brute import DEFAULT_MAX_VERTICES, brute_automorphisms, default_max_nodes
from .circulant import (
    connected_specs,
    connectivity,
    is_edge_transitive,
    normalize,
    twin_classification,
)
from .errors import BudgetExceededError, CircsymError
from .subdivided import Arc, Regime, SubdividedSpec, twin_classification_subdivided
from .symparams import (
    VerifyStatus,
    closed_form_condition,
    closed_form_params,
    search_params,
    verify_appendix,
    verify_spec,
)

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3

CSV_HEADER = ["n", "i", "j", "arc", "p", "connected", "twin_class", "det", "dist", "cost",
              "aut_order", "method"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt_set(values) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"


def _opt(v) -> str:
    return "-" if v is None else str(v)


# -- spec handling ------------------------------------------------------------


def spec_from_args(args):
    if args.n is None or args.i is None or args.j is None:
        raise CircsymError("--n, --i and --j are required")
    base = normalize(args.n, args.i, args.j)
    if args.subdivide is None:
        if args.p is not None:
            raise CircsymError("--p needs --subdivide i|j")
        return base
    return SubdividedSpec(base, Arc(args.subdivide), 1 if args.p is None else args.p)


def spec_range(args, subdivided_default: bool = False) -> list:
    lo = 4 if args.n_min is None else args.n_min
    hi = 12 if args.n_max is None else args.n_max
    bases = connected_specs(lo, hi)
    arcs = []
    if args.subdivide is not None:
        arcs = [Arc(args.subdivide)]
    elif getattr(args, "subdivided", False) or subdivided_default:
        arcs = [Arc.I, Arc.J]
    if not arcs:
        return list(bases)
    p_max = 3 if args.p_max is None else args.p_max
    return [SubdividedSpec(b, arc, p) for b in bases for arc in arcs for p in range(1, p_max + 1)]


def spec_fields(spec) -> dict:
    if isinstance(spec, SubdividedSpec):
        b = spec.base
        return {"n": b.n, "i": b.i, "j": b.j, "arc": spec.arc.value, "p": spec.p}
    return {"n": spec.n, "i": spec.i, "j": spec.j, "arc": "", "p": 0}


def twin_label(spec) -> str:
    if isinstance(spec, SubdividedSpec):
        tc = twin_classification_subdivided(spec)
        return tc.variant.value if spec.regime is Regime.GENERIC or spec.p > 1 else "HalfSumArcTwins"
    return twin_classification(spec).variant.value


def sort_key(spec):
    if isinstance(spec, SubdividedSpec):
        return spec.sort_key()
    return (spec.n, spec.i, spec.j, "", 0)


# -- output -------------------------------------------------------------------


def emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def progress(args, msg: str) -> None:
    if not args.quiet:
        print(msg, file=sys.stderr)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: r[k] for k in CSV_HEADER})
    return buf.getvalue()


def rows_to_md(rows: list[dict], grouped: bool = True) -> str:
    cols = CSV_HEADER
    out = []
    buckets: dict[str, list[dict]] = {}
    for r in rows:
        buckets.setdefault(r.get("condition", "") if grouped else "", []).append(r)
    for cond, items in buckets.items():
        if cond:
            out.append(f"### {cond}")
            out.append("")
        out.append("| " + " | ".join(cols) + " |")
        out.append("|" + "---|" * len(cols))
        for r in items:
            out.append("| " + " | ".join(str(r[c]) for c in cols) + " |")
        out.append("")
    return "\n".join(out)


def params_row(spec, report, order: int) -> dict:
    row = spec_fields(spec)
    row.update(
        connected=True,
        twin_class=twin_label(spec),
        det=report.det,
        dist=report.dist,
        cost=_opt(report.cost),
        aut_order=order,
        method=report.method.value,
        condition=closed_form_condition(spec),
    )
    return row


# -- commands -----------------------------------------------------------------


def cmd_info(args) -> int:
    n, i, j = args.n, args.i, args.j
    if n is None or i is None or j is None:
        raise CircsymError("--n, --i and --j are required")
    base = normalize(n, i, j)
    info: dict = {"input": [n, i, j], "normalized": str(base)}
    conn = connectivity(base)
    info["connected"] = conn.connected
    if not conn.connected:
        info["components"] = conn.component_count
        info["component"] = str(conn.component_spec) if conn.component_spec else None
        return _print_info(args, info)
    spec = spec_from_args(args)
    tc = twin_classification(base)
    info["twin_class"] = tc.variant.value
    info["twin_classes"] = [list(c) for c in tc.classes if len(c) > 1]
    info["co_twin_pairs"] = [list(c) for c in tc.co_twin_pairs]
    stab = zmod.symbol_stabilizer(base.n, base.i, base.j)
    info["H"] = list(stab.h)
    info["H_prime"] = list(stab.h_prime)
    info["edge_transitive"] = is_edge_transitive(base)
    info["special_conditions"] = (
        [] if base.half else [f.value for f in zmod.special_conditions(base.n, base.i, base.j)]
    )
    if isinstance(spec, SubdividedSpec):
        info["subdivided"] = str(spec)
        info["regime"] = spec.regime.value
        info["subdivided_twin_class"] = twin_label(spec)
    report = group_report(closed_form_group(spec))
    info["structure_tag"] = report["structure_tag"]
    info["aut_order"] = report["order"]
    return _print_info(args, info)


def _print_info(args, info: dict) -> int:
    if args.format == "json":
        emit(args, json.dumps(info, indent=2))
        return EXIT_OK
    lines = []
    for k, v in info.items():
        if isinstance(v, list) and v and all(isinstance(x, int) for x in v) and k != "input":
            v = fmt_set(v)
        elif isinstance(v, list) and v and isinstance(v[0], list):
            v = " ".join(fmt_set(x) for x in v)
        elif isinstance(v, list):
            v = "none" if not v else ", ".join(str(x) for x in v)
        lines.append(f"{k}: {v}")
    emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_params(args) -> int:
    spec = spec_from_args(args)
    closed = closed_form_params(spec)
    order = group_order(spec)
    rows = [params_row(spec, closed, order)]
    status = EXIT_OK
    searched = None
    if args.search:
        G = build_graph(spec)
        try:
            raw = brute_automorphisms(G, args.budget_vertices, args.budget_nodes)
            searched = search_params(G, raw, args.budget_nodes)
            rows.append(params_row(spec, searched, raw.order))
            if searched.triple != closed.triple:
                status = EXIT_MISMATCH
        except BudgetExceededError as exc:
            progress(args, f"search skipped: {exc}")
            status = EXIT_BUDGET if args.strict else EXIT_OK
    if args.format == "json":
        payload = {"spec": str(spec), "aut_order": order, "closed_form": closed.to_dict()}
        if searched is not None:
            payload["search"] = searched.to_dict()
        emit(args, json.dumps(payload, indent=2))
    elif args.format == "csv":
        emit(args, rows_to_csv(rows))
    elif args.format == "md":
        emit(args, rows_to_md(rows, grouped=False))
    else:
        lines = [f"{spec}  [{closed_form_condition(spec)}]", f"aut_order: {order}"]
        for rep in filter(None, (closed, searched)):
            lines.append(
                f"{rep.method.value}: det {rep.det}, dist {rep.dist}, cost {_opt(rep.cost)}"
            )
            if rep.det_witness is not None:
                lines.append(f"  det witness: {fmt_set(rep.det_witness)}")
            if rep.cost_witness is not None:
                lines.append(f"  cost witness: {fmt_set(rep.cost_witness)}")
        if searched is not None:
            lines.append("MATCH" if status == EXIT_OK else "MISMATCH")
        emit(args, "\n".join(lines))
    return status


def cmd_table(args) -> int:
    specs = sorted(spec_range(args), key=sort_key)
    rows = [params_row(s, closed_form_params(s), group_order(s)) for s in specs]
    if args.format == "csv":
        emit(args, rows_to_csv(rows))
    elif args.format == "json":
        emit(args, json.dumps([{k: r[k] for k in CSV_HEADER + ["condition"]} for r in rows],
                              indent=2))
    elif args.format in ("md", "text"):
        # buckets in table order, spec order inside each (sorted() is stable)
        ordered = sorted(rows, key=lambda r: _BUCKETS.index(r["condition"]))
        emit(args, rows_to_md(ordered))
    else:
        raise CircsymError(f"format {args.format} not supported by table")
    return EXIT_OK


_BUCKETS = [
    "n in {4,5}",
    "(n,i,j) = (6,1,3)",
    "(n,i,j) = (8,1,3)",
    "(n,i,j) = (10,1,3)",
    "i + j = n/2, n != 8",
    "twin-free, otherwise",
    "p >= 2, H' = {+-1}",
    "p = 1 or H' != {+-1}",
    "j = n/2, p = 1, j = 2",
    "j = n/2, p = 1, j >= 3",
    "j = n/2, p = 2 and j in {2,3,4,5}, or p = j = 3",
    "j = n/2, p >= 2, otherwise",
]


def _verify_one(job):
    spec, max_vertices, max_nodes = job
    return verify_spec(spec, max_vertices, max_nodes), verify_group(spec, max_vertices, max_nodes)


def cmd_verify(args) -> int:
    specs = sorted(spec_range(args), key=sort_key)
    jobs = [(s, args.budget_vertices, args.budget_nodes) for s in specs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_one, jobs, chunksize=4))
    else:
        results = []
        for k, job in enumerate(jobs, 1):
            results.append(_verify_one(job))
            progress(args, f"[{k}/{len(jobs)}] {job[0]}")
    mismatches = skipped = 0
    lines, records = [], []
    for (sv, gv) in results:
        params_status = sv.status.value
        if sv.status is VerifyStatus.MISMATCH or gv.status is CheckStatus.FAIL:
            mismatches += 1
        if sv.status is VerifyStatus.SKIPPED or gv.status is CheckStatus.SKIPPED:
            skipped += 1
        search = sv.search.triple if sv.search else None
        lines.append(
            f"{params_status:8} {str(sv.spec):18} closed={_triple(sv.closed.triple)} "
            f"search={_triple(search) if search else '-'} group={gv.status.value} "
            f"order={gv.closed_order}/{_opt(gv.brute_order)}"
            + (f"  {sv.detail}" if sv.detail else "")
            + (f"  {gv.detail}" if gv.detail and gv.status is not CheckStatus.PASS else "")
        )
        records.append({
            "spec": str(sv.spec),
            "params": params_status,
            "closed": list(sv.closed.triple),
            "search": list(search) if search else None,
            "group": gv.status.value,
            "closed_order": gv.closed_order,
            "brute_order": gv.brute_order,
            "detail": "; ".join(d for d in (sv.detail, gv.detail) if d),
        })
    summary = f"{len(results)} specs: {mismatches} mismatches, {skipped} skipped"
    if args.format == "json":
        emit(args, json.dumps({"results": records, "summary": summary}, indent=2))
    else:
        emit(args, "\n".join(lines + [summary]))
    if mismatches:
        return EXIT_MISMATCH
    if skipped and args.strict:
        return EXIT_BUDGET
    return EXIT_OK


def _triple(t) -> str:
    return "(" + ",".join(_opt(x) for x in t) + ")"


def cmd_appendix(args) -> int:
    checks = []
    which = args.check
    if which in ("Table3", "all"):
        checks.append(("Table3", None))
    if which in ("C1", "all"):
        checks += [("C1", j) for j in ([args.j] if args.j else [2, 3, 4, 5])]
    if which in ("C2", "all"):
        checks += [("C2", j) for j in ([args.j] if args.j else range(6, 13))]
    if which in ("C3", "all"):
        checks.append(("C3", None))
    reports = [verify_appendix(c, j) for c, j in checks]
    if args.format == "json":
        emit(args, json.dumps(
            [{"check": r.check, "passed": r.passed, "lines": list(r.lines)} for r in reports],
            indent=2,
        ))
    else:
        out = []
        for r in reports:
            out.append(f"{'PASS' if r.passed else 'FAIL'} {r.check}")
            out.extend(f"  {line}" for line in r.lines)
        emit(args, "\n".join(out))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_MISMATCH


def cmd_export(args) -> int:
    spec = spec_from_args(args)
    if args.what == "group":
        emit(args, json.dumps(group_report(closed_form_group(spec)), indent=2))
        return EXIT_OK
    G = build_graph(spec)
    if args.format == "dot":
        emit(args, G.to_dot())
    elif args.format == "json":
        emit(args, G.to_json())
    else:
        raise CircsymError("export writes --format dot or json")
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circsym", description="Symmetry of two-generator circulant graphs")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, formats, default):
        p.add_argument("--n", type=int)
        p.add_argument("--i", type=int)
        p.add_argument("--j", type=int)
        p.add_argument("--subdivide", choices=["i", "j"])
        p.add_argument("--p", type=int)
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out")
        p.add_argument("--quiet", action="store_true")
        p.add_argument("--budget-vertices", type=int, default=DEFAULT_MAX_VERTICES)
        p.add_argument("--budget-nodes", type=int, default=default_max_nodes())
        p.add_argument("--strict", action="store_true")

    def ranged(p):
        p.add_argument("--n-min", type=int)
        p.add_argument("--n-max", type=int)
        p.add_argument("--p-max", type=int)
        p.add_argument("--subdivided", action="store_true",
                       help="include subdivisions of both arcs")

    p = sub.add_parser("info", help="normalization, twins, H/H', group")
    common(p, ["text", "json"], "text")

    p = sub.add_parser("params", help="det, dist, cost for one spec")
    common(p, ["text", "json", "csv", "md"], "text")
    p.add_argument("--search", action="store_true", help="confirm by search over the brute group")

    p = sub.add_parser("table", help="closed-form parameters over a range")
    common(p, ["md", "csv", "json", "text"], "md")
    ranged(p)

    p = sub.add_parser("verify", help="closed form versus brute-force oracle")
    common(p, ["text", "json"], "text")
    ranged(p)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("appendix", help="representative-set checks")
    common(p, ["text", "json"], "text")
    p.add_argument("--check", choices=["Table3", "C1", "C2", "C3", "all"], default="all")

    p = sub.add_parser("export", help="DOT/JSON of the graph, or the group report")
    common(p, ["dot", "json"], "dot")
    p.add_argument("--what", choices=["graph", "group"], default="graph")
    return parser


COMMANDS = {
    "info": cmd_info,
    "params": cmd_params,
    "table": cmd_table,
    "verify": cmd_verify,
    "appendix": cmd_appendix,
    "export": cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    if args.command in ("table", "verify") and args.n is not None:
        parser.error("table and verify take --n-min/--n-max, not --n")
    try:
        return COMMANDS[args.command](args)
    except BudgetExceededError as exc:
        print(f"circsym: budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CircsymError, ValueError) as exc:
        print(f"circsym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
