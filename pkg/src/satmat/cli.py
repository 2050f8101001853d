"""Command-line front end; one subcommand per operation family.

Results go to standard output, diagnostics to standard error.  Exit status
is 0 on success, 1 when a yes/no style query resolves negatively (no copy,
not a witness, search exhausted) or a search gives up within budget, and 2
on usage or input-format errors.  Output is deterministic for fixed inputs
and flags; --threads only changes how the exact solver splits work.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from satmat.pattern import Pattern, PatternParseError, contains, parse_pattern, serialize_pattern
from satmat.saturate import (
    WitnessCertificate,
    certificate_report,
    check_witness,
    is_saturating,
    is_semisaturating,
)


class _UsageError(Exception):
    """Bad file contents or ill-posed arguments; maps to exit status 2."""


def _load_pattern(path: str) -> Pattern:
    try:
        with open(path) as fh:
            return parse_pattern(fh.read())
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    except PatternParseError as exc:
        raise _UsageError(f"{path}: {exc}") from exc


def _load_dpattern(path: str):
    from satmat.ddim import parse_dpattern

    try:
        with open(path) as fh:
            return parse_dpattern(fh.read())
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise _UsageError(f"{path}: {exc}") from exc


def _fmt_range(r: range) -> str:
    if len(r) == 0:
        return "-"
    if len(r) == 1:
        return str(r[0])
    return f"{r[0]}-{r[-1]}"


def _parse_cell3(text: str, d: int) -> tuple[int, ...]:
    try:
        cell = tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise _UsageError(f"bad cell {text!r}: expected comma-separated integers") from exc
    if len(cell) != d:
        raise _UsageError(f"cell {text!r} has {len(cell)} coordinates, need {d}")
    return cell


# ======================================================================
# Subcommand handlers
# ======================================================================


def _cmd_contain(args: argparse.Namespace) -> int:
    host = _load_pattern(args.host)
    p = _load_pattern(args.pattern)
    if args.cell is not None:
        from satmat.pattern import contains_using_cell

        r, c = args.cell
        if not (1 <= r <= host.rows and 1 <= c <= host.cols):
            raise _UsageError(f"cell ({r},{c}) outside the host")
        if not host.get(r, c):
            raise _UsageError(f"cell ({r},{c}) is not a one of the host")
        pl = contains_using_cell(host, p, (r, c))
    else:
        pl = contains(host, p)
    if pl is None:
        print("no copy")
        return 1
    print(
        "copy at rows "
        + " ".join(map(str, pl.row_choice))
        + "; cols "
        + " ".join(map(str, pl.col_choice))
    )
    return 0


def _cmd_check_witness(args: argparse.Namespace) -> int:
    w = _load_pattern(args.witness)
    p = _load_pattern(args.pattern)
    cert = check_witness(w, p, args.kind)
    if cert is None:
        print(f"not a {args.kind} witness")
        return 1
    parts = [f"{args.kind} witness"]
    if args.kind in ("horizontal", "full"):
        parts.append(f"expandable columns {_fmt_range(cert.expandable_cols)}")
    if args.kind in ("vertical", "full"):
        parts.append(f"expandable rows {_fmt_range(cert.expandable_rows)}")
    print("; ".join(parts))
    if args.explain:
        print(certificate_report(cert))
    return 0


def _cmd_check_saturating(args: argparse.Namespace) -> int:
    m = _load_pattern(args.matrix)
    p = _load_pattern(args.pattern)
    checker = is_semisaturating if args.semi else is_saturating
    noun = "semisaturating" if args.semi else "saturating"
    res = checker(m, p)
    if res.ok:
        print(noun)
        return 0
    if res.containment is not None:
        why = (
            "contains the pattern at rows "
            + " ".join(map(str, res.containment.row_choice))
            + " cols "
            + " ".join(map(str, res.containment.col_choice))
        )
    else:
        why = f"cell {res.cell} flips without creating a copy"
    print(f"not {noun}: {why}")
    return 1


def _cmd_classify(args: argparse.Namespace) -> int:
    from satmat.classify import sat_verdict, ssat_class, ssat_fixed_class

    p = _load_pattern(args.pattern)
    try:
        v = sat_verdict(p)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    print(v.status if v.reason == "none" else f"{v.status} ({v.reason})")
    if args.explain:
        print(f"semisaturation: {ssat_class(p)}")
        print(f"fixed-row semisaturation: {ssat_fixed_class(p)}")
        for note in v.notes:
            print(f"note: {note}")
        if isinstance(v.certificate, WitnessCertificate):
            print(certificate_report(v.certificate))
        elif v.certificate is not None:
            print(f"certificate: {v.certificate}")
    return 0


def _cmd_sat_exact(args: argparse.Namespace) -> int:
    from satmat.solver import sat_exact

    p = _load_pattern(args.pattern)
    try:
        res = sat_exact(args.rows, args.cols, p, budget=args.budget, threads=args.threads)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    if not res.complete:
        print(
            f"budget exhausted after {res.nodes_explored} nodes; "
            f"best upper bound {res.min_weight}",
            file=sys.stderr,
        )
        return 1
    print(res.min_weight)
    if args.explain:
        print(serialize_pattern(res.optimum), end="")
        print(f"nodes explored: {res.nodes_explored}", file=sys.stderr)
    return 0


def _cmd_emit_ilp(args: argparse.Namespace) -> int:
    from satmat.solver import emit_ilp

    p = _load_pattern(args.pattern)
    try:
        print(emit_ilp(args.rows, args.cols, p), end="")
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    return 0


def _cmd_decide_fixed_rows(args: argparse.Namespace) -> int:
    from satmat.solver import decide_fixed_rows

    p = _load_pattern(args.pattern)
    try:
        res = decide_fixed_rows(args.rows, p, budget=args.budget)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    if res.status == "found":
        print("found")
        print(serialize_pattern(res.witness), end="")
        if args.explain:
            print(
                f"nodes: {res.nodes}; width cap: {res.width_cap}", file=sys.stderr
            )
        return 0
    print(res.status)
    if res.status == "inconclusive":
        print(
            "node budget exhausted before the width cap; raise SATMAT_BUDGET "
            "or --budget for a definite answer",
            file=sys.stderr,
        )
    if args.explain:
        print(f"nodes: {res.nodes}; width cap: {res.width_cap}", file=sys.stderr)
    return 1


_CONSTRUCT_NEEDS = {
    "wv-q2like": ("pattern",),
    "wh-q2like": ("pattern",),
    "wk": ("k",),
    "family-pk": ("k",),
    "family-qk": ("k",),
    "append-row": ("witness", "pattern"),
    "glue": ("horizontal", "vertical", "pattern", "row_split", "col_split"),
    "dilate-cols": ("witness", "pattern", "target"),
    "dilate-rows": ("witness", "pattern", "target"),
    "fixed-ssat": ("rows", "pattern"),
    "prepend-ones": ("pattern", "matrix"),
}


def _require(args: argparse.Namespace, names: Sequence[str]) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise _UsageError(f"{args.op} requires {flags}")


def _cmd_construct(args: argparse.Namespace) -> int:
    from satmat import construct as C

    _require(args, _CONSTRUCT_NEEDS[args.op])
    try:
        if args.op == "wv-q2like":
            out = C.build_wv_q2like(_load_pattern(args.pattern))
        elif args.op == "wh-q2like":
            out = C.build_wh_q2like(_load_pattern(args.pattern))
        elif args.op == "wk":
            out = C.build_wk(args.k)
        elif args.op == "family-pk":
            out = C.family_pk(args.k)
        elif args.op == "family-qk":
            out = C.family_qk(args.k)
        elif args.op == "append-row":
            out = _load_pattern(args.witness)
            p = _load_pattern(args.pattern)
            for _ in range(args.times):
                out = C.append_witness_row(out, p)
        elif args.op == "glue":
            res = C.glue_witnesses(
                _load_pattern(args.horizontal),
                _load_pattern(args.vertical),
                _load_pattern(args.pattern),
                args.row_split,
                args.col_split,
            )
            if res.certificate is None:
                print("glued matrix fails the full witness check", file=sys.stderr)
                return 1
            out = res.matrix
        elif args.op == "dilate-cols":
            out = C.dilate_columns(
                _load_pattern(args.witness),
                _load_pattern(args.pattern),
                _load_pattern(args.target),
            )
        elif args.op == "dilate-rows":
            out = C.dilate_rows(
                _load_pattern(args.witness),
                _load_pattern(args.pattern),
                _load_pattern(args.target),
            )
        elif args.op == "fixed-ssat":
            out = C.build_fixed_ssat(args.rows, _load_pattern(args.pattern), args.cols)
        elif args.op == "prepend-ones":
            out = C.prepend_allones_matrix(
                _load_pattern(args.pattern), _load_pattern(args.matrix)
            )
        else:  # pragma: no cover - argparse restricts choices
            raise _UsageError(f"unknown construction {args.op!r}")
    except C.ConstructionError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    print(serialize_pattern(out), end="")
    return 0


def _cmd_graph(args: argparse.Namespace) -> int:
    from satmat.witness_graph import (
        build_witness_graph,
        enumerate_witness_graphs,
        graph_checks,
    )

    w = _load_pattern(args.witness)
    p = _load_pattern(args.pattern)

    def dump(g) -> None:
        print("vertices: " + " ".join(map(str, g.vertices)))
        for v in g.vertices:
            succ = g.out_neighbors(v)
            print(f"{v} -> " + (" ".join(map(str, succ)) if succ else "-"))
        checks = graph_checks(g)
        print(
            "checks: "
            + " ".join(f"{k}={'yes' if v else 'no'}" for k, v in sorted(checks.items()))
        )

    try:
        if args.enumerate:
            graphs = list(enumerate_witness_graphs(w, p, args.kind, cap=args.cap))
            for idx, g in enumerate(graphs, start=1):
                print(f"graph {idx} of {len(graphs)}:")
                dump(g)
        else:
            dump(build_witness_graph(w, p, args.kind))
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    return 0


def _cmd_ddim(args: argparse.Namespace) -> int:
    from satmat import ddim as D

    needs = {
        "contain": ("host", "pattern"),
        "check": ("matrix", "pattern"),
        "complete": ("matrix", "pattern"),
        "exponent": ("pattern",),
        "construct": ("pattern", "n", "k"),
        "bound": ("pattern", "n", "k"),
        "builtin": ("name",),
    }
    _require(args, needs[args.op])
    if args.op == "builtin" and args.name == "wa" and args.n is None:
        raise _UsageError("builtin wa requires --n")
    try:
        if args.op == "contain":
            host = _load_dpattern(args.host)
            p = _load_dpattern(args.pattern)
            if args.cell is not None:
                cell = _parse_cell3(args.cell, host.d)
                found = D.contains_d_using_cell(host, p, cell) is not None
            else:
                found = D.contains_d(host, p)
            print("copy found" if found else "no copy")
            return 0 if found else 1
        if args.op == "check":
            m = _load_dpattern(args.matrix)
            p = _load_dpattern(args.pattern)
            checker = D.is_semisaturating_d if args.semi else D.is_saturating_d
            noun = "semisaturating" if args.semi else "saturating"
            ok = checker(m, p)
            print(noun if ok else f"not {noun}")
            return 0 if ok else 1
        if args.op == "complete":
            m = _load_dpattern(args.matrix)
            p = _load_dpattern(args.pattern)
            print(D.serialize_dpattern(D.complete_to_saturated_d(m, p)), end="")
            return 0
        if args.op == "exponent":
            p = _load_dpattern(args.pattern)
            print(D.compute_ssat_exponent(p, args.ell))
            return 0
        if args.op in ("construct", "bound"):
            p = _load_dpattern(args.pattern)
            ms = tuple(int(t) for t in args.fixed.split(",")) if args.fixed else ()
            if args.op == "bound":
                print(D.step1c_bound(p, args.ell, ms, args.n, args.k))
                return 0
            built = D.build_ssat_construction(p, args.ell, ms, args.n, args.k)
            print(D.serialize_dpattern(built), end="")
            if args.explain:
                bound = D.step1c_bound(p, args.ell, ms, args.n, args.k)
                print(f"weight {built.weight} <= bound {bound}", file=sys.stderr)
            return 0
        if args.op == "builtin":
            if args.name == "a":
                print(D.serialize_dpattern(D.pattern_A()), end="")
            else:
                print(D.serialize_dpattern(D.witness_W_A(args.n)), end="")
            return 0
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    raise _UsageError(f"unknown ddim operation {args.op!r}")  # pragma: no cover


def _cmd_corpus_verify(args: argparse.Namespace) -> int:
    from satmat.corpus import render_report, verify_corpus

    report = verify_corpus()
    print(render_report(report, verbose=args.explain))
    return 0 if report.ok else 1


# ======================================================================
# Parser
# ======================================================================


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="satmat",
        description="Saturation of forbidden 0-1 matrix patterns.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(handler=handler)
        sp.add_argument(
            "--explain", action="store_true", help="print supporting evidence"
        )
        return sp

    sp = add("contain", _cmd_contain, "search one pattern inside another")
    sp.add_argument("--host", required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--cell", nargs=2, type=int, metavar=("ROW", "COL"))

    sp = add("check-witness", _cmd_check_witness, "validate a stored witness")
    sp.add_argument("--witness", required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument(
        "--kind", required=True, choices=("horizontal", "vertical", "full")
    )

    sp = add(
        "check-saturating", _cmd_check_saturating, "test (semi)saturation directly"
    )
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--semi", action="store_true", help="test semisaturation")

    sp = add("classify", _cmd_classify, "saturation growth class of a pattern")
    sp.add_argument("--pattern", required=True)

    sp = add("sat-exact", _cmd_sat_exact, "exact minimum saturating weight")
    sp.add_argument("--rows", required=True, type=int)
    sp.add_argument("--cols", required=True, type=int)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--budget", type=int, default=None, help="node budget")

    sp = add("emit-ilp", _cmd_emit_ilp, "emit the LP-format integer program")
    sp.add_argument("--rows", required=True, type=int)
    sp.add_argument("--cols", required=True, type=int)
    sp.add_argument("--pattern", required=True)

    sp = add(
        "decide-fixed-rows",
        _cmd_decide_fixed_rows,
        "complete search for a horizontal witness with a fixed row count",
    )
    sp.add_argument("--rows", required=True, type=int)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--budget", type=int, default=None)

    sp = add("construct", _cmd_construct, "build witnesses and related matrices")
    sp.add_argument(
        "op",
        choices=(
            "wv-q2like",
            "wh-q2like",
            "wk",
            "family-pk",
            "family-qk",
            "append-row",
            "glue",
            "dilate-cols",
            "dilate-rows",
            "fixed-ssat",
            "prepend-ones",
        ),
    )
    sp.add_argument("--pattern")
    sp.add_argument("--witness")
    sp.add_argument("--target")
    sp.add_argument("--horizontal")
    sp.add_argument("--vertical")
    sp.add_argument("--matrix")
    sp.add_argument("--k", type=int)
    sp.add_argument("--rows", type=int)
    sp.add_argument("--cols", type=int, default=None)
    sp.add_argument("--row-split", dest="row_split", type=int)
    sp.add_argument("--col-split", dest="col_split", type=int)
    sp.add_argument("--times", type=int, default=1)

    sp = add("graph", _cmd_graph, "witness graph of a validated witness")
    sp.add_argument("--witness", required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--kind", required=True, choices=("horizontal", "vertical"))
    sp.add_argument(
        "--enumerate",
        action="store_true",
        help="all graphs over copy choices instead of the lex default",
    )
    sp.add_argument("--cap", type=int, default=4096)

    sp = add("ddim", _cmd_ddim, "multidimensional operations")
    sp.add_argument(
        "op",
        choices=("contain", "check", "complete", "exponent", "construct", "bound", "builtin"),
    )
    sp.add_argument("--host")
    sp.add_argument("--matrix")
    sp.add_argument("--pattern")
    sp.add_argument("--cell", help="comma-separated coordinates")
    sp.add_argument("--semi", action="store_true")
    sp.add_argument("--ell", type=int, default=0, help="fixed leading axes")
    sp.add_argument("--fixed", help="comma-separated fixed extents")
    sp.add_argument("--n", type=int, help="growing extent")
    sp.add_argument("--k", type=int, help="band budget / growth exponent")
    sp.add_argument("--name", choices=("a", "wa"), help="builtin construction")

    add("corpus-verify", _cmd_corpus_verify, "re-derive every catalog claim")

    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"satmat: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:  # downstream pager closed; not our failure
        return 0


if __name__ == "__main__":
    sys.exit(main())
