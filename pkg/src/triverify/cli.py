"""Command-line front end: ``triverify <subcommand> ...``.

Exit codes: 0 success (including SKIPPED rows), 1 mismatch, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .arith import (ArithError, BudgetError, euler_characteristic, is_zsigmondy_exception,
                    scan_psl2_even, zsigmondy_ppd)
from .catalog import CatalogError, load_catalog
from .chartab import (IntegralityError, TableError, brute_force_structure_constant,
                      load_table, structure_constant)
from .classify import (DEFAULT_SEED, Budgets, format_report, load_rows, replay, run_tables,
                       verify_triple)
from .perm import DEFAULT_ELEMENT_BUDGET, PermError, UnsupportedError
from .spectrum import prime_graph


class InputError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _budgets(args) -> Budgets:
    element = args.element_budget
    env = os.environ.get("TRIVERIFY_BUDGET")
    if env:
        try:
            element = int(env)
        except ValueError:
            raise InputError(f"TRIVERIFY_BUDGET={env!r} is not an integer") from None
    try:
        return Budgets(element, args.sample_budget, args.pair_budget)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _catalog(args, names=None):
    return load_catalog(args.catalog, names=names)


def _entry(args, name: str):
    cat = _catalog(args, [name])
    e = cat.get(name)
    if e is None:
        raise InputError(f"group {name!r} is not in the catalog")
    return e


def cmd_chi(args) -> int:
    r = euler_characteristic(args.order, args.m, args.n)
    _emit(args, r.as_dict(), f"chi = {r.chi} = {r.formatted()}" if r.integral else f"chi = {r.chi}")
    return 0


def cmd_ppd(args) -> int:
    t = zsigmondy_ppd(args.q, args.a)
    payload = {"q": args.q, "a": args.a, "ppd": t,
               "exception": is_zsigmondy_exception(args.q, args.a)}
    _emit(args, payload, str(t) if t is not None else "none (exception)")
    return 0


def cmd_primegraph(args) -> int:
    e = _entry(args, args.group)
    prof = prime_graph(e.group, element_budget=_budgets(args).element_budget)
    d = prof.as_dict()
    d["group"] = e.name
    text = (f"{e.name}: |G| = {e.order}\n  pi = {list(prof.pi)}  pi_c = {list(prof.pi_c)}"
            f"  pi_nc = {list(prof.pi_nc)}\n  edges = {[list(x) for x in prof.edges]}\n"
            f"  t = {prof.t} {list(prof.independent_set)}  t_c = {prof.t_c} "
            f"{list(prof.independent_set_c)}")
    _emit(args, d, text)
    return 0


def cmd_verify(args) -> int:
    if args.replay:
        try:
            transcript = json.loads(Path(args.replay).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read transcript: {exc}") from None
        same, v = replay(transcript, _catalog(args, [transcript.get("group", "")]))
        _emit(args, {"replay_identical": same, "transcript": v.transcript},
              f"replay {'identical' if same else 'DIFFERS'}: {v.status}")
        return 0 if same else 1
    if args.group is None or args.m is None or args.n is None:
        raise InputError("verify needs --group, --m and --n (or --replay)")
    e = _entry(args, args.group)
    v = verify_triple(e, args.m, args.n, _budgets(args), args.seed)
    t = v.transcript
    text = f"{e.name} {{{args.m},{args.n}}} chi = {t['chi']['formatted']}: {v.status}"
    if v.refutation_rule:
        text += f" ({v.refutation_rule})"
    if v.witness:
        text += f"\n  g = {v.witness[0]!r}\n  h = {v.witness[1]!r}"
    _emit(args, t, text)
    return 0


def cmd_tables(args) -> int:
    if args.rows:
        path = Path(args.rows)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read rows: {exc}") from None
    else:
        data = json.loads(resources.files("triverify").joinpath("data/tables.json")
                          .read_text("utf-8"))
    try:
        rows = load_rows(data)
    except (ValueError, ArithError) as exc:
        raise InputError(str(exc)) from None
    cat = _catalog(args)
    report = run_tables(cat, rows, _budgets(args), args.seed)
    _emit(args, report, format_report(report))
    return 1 if report["summary"]["FAIL"] else 0


def cmd_scan(args) -> int:
    rows = scan_psl2_even(args.xmax)
    payload = {"polynomials": {"derived": "q^2-4q-1", "printed": "q^2-4q+1"},
               "rows": [r.as_dict() for r in rows]}
    lines = [f"{'x':>3} {'q':>9} {'derived q^2-4q-1':>20} {'printed q^2-4q+1':>20} "
             f"{'odd part':>20} flagged"]
    for r in rows:
        lines.append(f"{r.x:>3} {r.q:>9} {r.derived:>20} {r.printed:>20} {r.odd_part:>20} "
                     f"{'*' if r.flagged else ''}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_structconst(args) -> int:
    if (args.table is None) == (args.group is None):
        raise InputError("give exactly one of --table or --group")
    if args.table:
        tab = load_table(args.table)
        value = structure_constant(tab, args.i, args.j, args.k)
        source = "character-table"
        labels = [tab.classes[x].label for x in (args.i, args.j, args.k)]
    else:
        e = _entry(args, args.group)
        cd = e.group.class_data(_budgets(args).element_budget)
        h = len(cd.classes)
        if not all(0 <= x < h for x in (args.i, args.j, args.k)):
            raise InputError(f"class indices must lie in 0..{h - 1}")
        value = brute_force_structure_constant(cd, args.i, args.j, args.k)
        source = "brute-force"
        labels = [f"{cd.orders[x]}#{x}" for x in (args.i, args.j, args.k)]
    _emit(args, {"i": args.i, "j": args.j, "k": args.k, "value": value, "source": source,
                 "labels": labels}, str(value))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    common.add_argument("--jobs", type=int, default=1, help="worker cap (runs are sequential)")
    common.add_argument("--catalog", default=None, help="catalog JSON (default: shipped)")
    common.add_argument("--element-budget", type=int, default=DEFAULT_ELEMENT_BUDGET)
    common.add_argument("--sample-budget", type=int, default=1_000_000)
    common.add_argument("--pair-budget", type=int, default=100_000_000)

    p = argparse.ArgumentParser(prog="triverify", description="(2,m,n)-group verification toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("chi", parents=[common], help="Euler characteristic")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("ppd", parents=[common], help="least primitive prime divisor of q^a - 1")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--a", type=int, required=True)
    s.set_defaults(func=cmd_ppd)

    s = sub.add_parser("primegraph", parents=[common], help="prime graph of a catalog group")
    s.add_argument("--group", required=True)
    s.set_defaults(func=cmd_primegraph)

    s = sub.add_parser("verify", parents=[common], help="decide one (G, m, n)")
    s.add_argument("--group")
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--replay", help="transcript JSON to re-run")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("tables", parents=[common], help="replay a row file")
    s.add_argument("--rows", default=None, help="row JSON (default: shipped tables)")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("scan-psl2", parents=[common], help="PSL_2(2^x) prime-power scan")
    s.add_argument("--xmax", type=int, default=20)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("structconst", parents=[common], help="class structure constant")
    s.add_argument("--table")
    s.add_argument("--group")
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_structconst)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except (InputError, ArithError, BudgetError, CatalogError, TableError, PermError,
            UnsupportedError, IntegralityError, ValueError, IndexError, KeyError, OSError) as exc:
        print(f"triverify: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
