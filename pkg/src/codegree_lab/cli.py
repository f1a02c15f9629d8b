"""Command-line front end: ``codegree-lab COMMAND ...``.

Exit status is 0 on success, 1 when a mathematical check fails and 2 for
bad invocations (unparsable specs, inadmissible parameters, caps exceeded).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import lietables
from .builders import SpecError, build
from .cache import TableCache, resolve_cache_dir, table_for_spec
from .chartab import codegrees
from .classes import conjugacy_classes
from .dixon import CharacterTableError
from .dsl import parse_spec
from .perm import DEFAULT_CAP, CapExceeded, Permutation
from .qian import (HypothesisError, MonolithicContext, corpus_run, monolithic_witness_check,
                   qian_check, read_corpus)
from .structure import fitting_subgroup, is_solvable

log = logging.getLogger("codegree_lab")


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _cache(args) -> TableCache | None:
    path = resolve_cache_dir(args.cache_dir)
    return TableCache(path) if path else None


def _table(args):
    spec = parse_spec(args.spec)
    return spec, table_for_spec(spec, cache=_cache(args), cap=args.cap)


def cmd_chartab(args) -> int:
    spec, T = _table(args)
    lines = [f"{spec}  order {T.order}  exponent {T.exponent}",
             "sizes   " + " ".join(map(str, T.classes.sizes)),
             "orders  " + " ".join(map(str, T.classes.element_orders))]
    for i, row in enumerate(T.irreducibles):
        lines.append(f"X.{i:<3} " + " ".join(str(v) for v in row))
    _emit(args, T.to_json(), "\n".join(lines))
    return 0


def cmd_codegrees(args) -> int:
    spec, T = _table(args)
    recs = codegrees(T)
    payload = {"spec": str(spec), "order": T.order,
               "characters": [{"index": r.index, "degree": r.degree, "kernel_order": r.kernel_order,
                               "codegree": r.codegree} for r in recs],
               "codegrees": sorted(r.codegree for r in recs)}
    text = "\n".join(f"X.{r.index:<3} degree {r.degree:<6} |ker| {r.kernel_order:<8} cod {r.codegree}"
                     for r in recs)
    _emit(args, payload, f"{spec}  order {T.order}\n{text}")
    return 0


def cmd_qian(args) -> int:
    spec, T = _table(args)
    rep = qian_check(T)
    rep.spec = str(spec)
    lines = [f"{spec}: {'pass' if rep.passed else 'FAIL'}"]
    for o, (i, d, cod) in sorted(rep.witnesses.items()):
        lines.append(f"  order {o:<5} X.{i} degree {d} codegree {cod}")
    for o in rep.failures:
        lines.append(f"  order {o:<5} no witness")
    _emit(args, rep.to_json(), "\n".join(lines))
    return 0 if rep.passed else 1


def cmd_fitting(args) -> int:
    spec = parse_spec(args.spec)
    G = build(spec)
    F = fitting_subgroup(G, args.cap) if G.order > 1 else G
    payload = {"spec": str(spec), "order": G.order, "fitting_order": F.order,
               "fitting_trivial": F.order == 1, "solvable": is_solvable(G)}
    _emit(args, payload, f"{spec}: |G| = {G.order}, |F(G)| = {F.order}")
    return 0


def cmd_lie(args) -> int:
    fam, q = args.family, args.q
    if args.what == "check":
        rep = lietables.lemma12_divisibility_check(fam, q)
        text = (f"{rep.row} at {q}: order {rep.order}, alpha {rep.alpha}, beta {rep.beta}, "
                f"{'pass' if rep.passed else 'FAIL'}")
        if rep.notes:
            text += " (" + "; ".join(rep.notes) + ")"
        _emit(args, rep.to_json(), text)
        return 0 if rep.passed else 1
    fn = {"order": lietables.order_of, "alpha": lietables.alpha_degree,
          "beta": lietables.beta_degree}[args.what]
    value = fn(fam, q)
    _emit(args, {"family": fam, "q": q, args.what: value}, str(value))
    return 0


def cmd_monolithic(args) -> int:
    spec = parse_spec(args.spec)
    G = build(spec)
    if args.element == "all":
        elements = conjugacy_classes(G, args.cap).reps
    else:
        try:
            elements = [Permutation.parse(args.element, G.degree)]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    ctx = MonolithicContext(G, args.cap)
    reports = [monolithic_witness_check(G, g, ctx, args.cap, str(spec)) for g in elements]
    lines = []
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        lines.append(f"{r.element}: h={r.h} r={r.r} o(g^r)={r.order_gr} "
                     f"lambda=X.{r.character} degree {r.degree} |I|={r.inertia_order} {status}")
    payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
    _emit(args, payload, "\n".join(lines))
    return 0 if all(r.passed for r in reports) else 1


def cmd_corpus(args) -> int:
    try:
        specs = read_corpus(args.file)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    for s in specs:
        parse_spec(s)
    out = corpus_run(specs, jobs=args.jobs, cap=args.cap, cache_dir=resolve_cache_dir(args.cache_dir))
    s = out["summary"]
    lines = [f"{r['spec']:<28} {r['verdict']:<5} |G|={r['order']} |F|={r['fitting_order']}"
             for r in out["results"]]
    lines.append(f"{s['passed']}/{s['groups']} passed")
    _emit(args, out, "\n".join(lines))
    return 0 if s["failed"] == 0 else 1


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommands suppress their defaults so flags given before the command survive
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    common.add_argument("--cache-dir", default=d(None), help="character table cache (CODEGREE_LAB_CACHE wins)")
    common.add_argument("--cap", type=int, default=d(DEFAULT_CAP), help="largest group order enumerated")
    common.add_argument("--jobs", type=int, default=d(1), help="parallel workers for corpus runs")
    common.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    p = argparse.ArgumentParser(prog="codegree-lab", parents=[_common(suppress=False)])
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn in (("chartab", cmd_chartab), ("codegrees", cmd_codegrees),
                     ("qian", cmd_qian), ("fitting", cmd_fitting)):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("spec")
        sp.set_defaults(func=fn)
    sp = sub.add_parser("lie", parents=[common])
    sp.add_argument("what", choices=("order", "alpha", "beta", "check"))
    sp.add_argument("family")
    sp.add_argument("q", type=int)
    sp.set_defaults(func=cmd_lie)
    sp = sub.add_parser("monolithic", parents=[common])
    sp.add_argument("spec")
    sp.add_argument("element", help='cycle notation such as "(0 1)(2 3)", or "all" for every class')
    sp.set_defaults(func=cmd_monolithic)
    sp = sub.add_parser("corpus", parents=[common])
    sp.add_argument("file")
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (SpecError, UsageError, HypothesisError, lietables.LieTableError,
            CapExceeded, CharacterTableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
