"""Batch front end: load instances, run check suites, emit human-readable
lines plus machine-readable JSON reports.

Exit codes: 0 success, 1 verification failure, 2 parse/schema error,
3 budget or size bound exceeded.
"""

import argparse
import json
import sys

from .constructions import (adjunction_check, core, cotensor, exponential,
                            exponential_end_comparison,
                            exponential_matches_cotensor_route,
                            nonpreservation_demo, tensor)
from .corpus import build_corpus, corpus_seed, sample_pairs, small_corpus
from .errors import (BoundExceeded, Budget, ColimitNotFinite, SchemaError,
                     SearchBudgetExceeded, SegalkitError)
from .externalize import (ExtIndexedCategory, ExtView, default_probe,
                          fully_faithful_check, internal_functors, Probe)
from .fincat import FinSetBase, functor_category
from .internal import (InternalCategory, is_complete, is_groupoid, nerve,
                       segal_maps, simplicial_object_iso)
from .oracle import equivalent_categories, verify_limit
from .schema import (dumps_report, fincat_from_json, load_document,
                     load_internal_category, load_simplicial, sset_from_json,
                     simplicial_to_json)
from .sset import boundary, spine, standard_simplex
from .yoneda import left_kan_check, totalization, yoneda_bijection

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


def _named_weight(spec, k):
    kind, _, rank = spec.partition(":")
    if rank.isdigit():
        n = int(rank)
        if kind == "delta":
            return standard_simplex(n, k)
        if kind == "spine":
            return spine(n, k)
        if kind == "boundary":
            return boundary(n, k)
    try:
        doc = load_document(spec)
    except SchemaError:
        raise SchemaError(
            f"weight {spec!r} is neither delta:N/spine:N/boundary:N nor a file"
        )
    if doc["kind"] != "truncated_sset":
        raise SchemaError(f"{spec}: expected a truncated_sset")
    return sset_from_json(doc)


def _emit(report, args):
    text = dumps_report(report)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text)
    for line in report.get("lines", []):
        print(line)
    if not report.get("lines"):
        print(text, end="")


def _status(ok):
    return "pass" if ok else "FAIL"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_check_segal(args, base, budget):
    results, lines, ok = [], [], True
    for path in args.files:
        obj, doc = load_simplicial(path, base=base)
        report = segal_maps(obj, budget=budget)
        results.append({
            "file": path,
            "is_segal": report.is_segal,
            "levels": {str(n): flag for n, flag in report.bijective.items()},
        })
        expected = doc.get("expected", {}).get("is_segal")
        good = report.is_segal if expected is None else report.is_segal == expected
        ok = ok and good
        lines.append(f"{_status(good)}  check-segal {path}: "
                     f"is_segal={report.is_segal}")
    return {"command": "check-segal", "results": results, "ok": ok,
            "lines": lines}, ok


def _check_predicate(args, base, budget, name, fn):
    results, lines, ok = [], [], True
    for path in args.files:
        icat, _, doc = load_internal_category(path, base=base,
                                              k=args.truncation)
        value = fn(icat.x, budget)
        results.append({"file": path, name: value})
        expected = doc.get("expected", {}).get(name)
        good = value if expected is None else value == expected
        ok = ok and bool(good)
        lines.append(f"{_status(bool(good))}  check-{name} {path}: "
                     f"{name}={value}")
    return {"command": f"check-{name}", "results": results, "ok": ok,
            "lines": lines}, ok


def cmd_check_complete(args, base, budget):
    return _check_predicate(args, base, budget, "complete",
                            lambda x, b: is_complete(x, budget=b)[0])


def cmd_check_groupoid(args, base, budget):
    return _check_predicate(args, base, budget, "groupoid",
                            lambda x, b: is_groupoid(x, budget=b))


def cmd_externalize(args, base, budget):
    icat, _, _ = load_internal_category(args.files[0], base=base,
                                        k=args.truncation)
    sizes = [int(s) for s in (args.probe_sizes or "0,1,2").split(",")]
    per_probe, lines = {}, []
    for s in sizes:
        c = base.range_obj(s, name=f"P{s}")
        view = ExtView(icat, c)
        entry = {
            "objects": view.n_objects(),
            "morphisms": view.n_morphisms(),
        }
        if view.n_morphisms() <= args.dump_limit:
            cat = view.as_fincat()
            entry["table"] = {
                "src": list(cat.src),
                "tgt": list(cat.tgt),
                "identity": list(cat.identity),
            }
        per_probe[f"size{s}"] = entry
        lines.append(f"pass  externalize {args.files[0]} at size {s}: "
                     f"{entry['objects']} objects, {entry['morphisms']} morphisms")
    return {"command": "externalize", "results": per_probe, "ok": True,
            "lines": lines}, True


def cmd_exponential(args, base, budget):
    y, ycat_fin, _ = load_internal_category(args.files[0], base=base,
                                            k=args.truncation)
    x, xcat_fin, _ = load_internal_category(args.files[1], base=base,
                                            k=args.truncation)
    result = exponential(y, x, budget=budget)
    report = {
        "command": "exponential",
        "levels": list(result.x.level_sizes()),
        "ok": True,
    }
    lines = [f"pass  exponential: levels {result.x.level_sizes()}"]
    if args.oracle:
        certs = {}
        if ycat_fin is not None and xcat_fin is not None:
            fun_cat, _, _ = functor_category(xcat_fin, ycat_fin,
                                             budget=budget)
            iso = simplicial_object_iso(result.x, nerve(fun_cat, base,
                                                        args.truncation))
            certs["nerve_of_functor_category"] = iso is not None
        agree, _detail = exponential_matches_cotensor_route(result, y, x,
                                                            budget=budget)
        certs["cotensor_route"] = agree
        comparison = exponential_end_comparison(y, x, budget=budget)
        certs["end_carried_vs_rank3"] = comparison["agree"]
        report["certificates"] = certs
        report["ok"] = all(certs.values())
        lines.append(f"{_status(report['ok'])}  exponential oracle: {certs}")
    return report, report["ok"]


def cmd_tensor(args, base, budget):
    weight = _named_weight(args.weight, args.truncation)
    x, _, _ = load_internal_category(args.files[0], base=base,
                                     k=args.truncation)
    t = tensor(weight, x.x)
    seg = segal_maps(t, budget=budget).is_segal
    comp = is_complete(t, budget=budget)[0] if seg else None
    lines = [f"pass  tensor {args.weight}: levels {t.level_sizes()} "
             f"segal={seg} complete={comp}"]
    return {"command": "tensor", "levels": list(t.level_sizes()),
            "is_segal": seg, "is_complete": comp, "ok": True,
            "lines": lines}, True


def cmd_cotensor(args, base, budget):
    x, _, _ = load_internal_category(args.files[0], base=base,
                                     k=args.truncation)
    weight = _named_weight(args.weight, args.truncation)
    result = cotensor(x, weight, budget=budget)
    lines = [f"pass  cotensor {args.weight}: levels "
             f"{result.x.level_sizes()}"]
    return {"command": "cotensor", "levels": list(result.x.level_sizes()),
            "ok": True, "lines": lines}, True


def cmd_core(args, base, budget):
    x, _, _ = load_internal_category(args.files[0], base=base,
                                     k=args.truncation)
    c = core(x, budget=budget)
    grp = is_groupoid(c.x, budget=budget)
    again = core(c, budget=budget)
    idem = again.x.level_sizes() == c.x.level_sizes()
    ok = grp and idem
    lines = [f"{_status(ok)}  core: levels {c.x.level_sizes()} "
             f"groupoid={grp} idempotent={idem}"]
    return {"command": "core", "levels": list(c.x.level_sizes()),
            "is_groupoid": grp, "idempotent": idem, "ok": ok,
            "lines": lines}, ok


def cmd_yoneda(args, base, budget):
    x, _, _ = load_internal_category(args.files[0], base=base,
                                     k=args.truncation)
    y, _, _ = load_internal_category(args.files[1], base=base,
                                     k=args.truncation)
    probe = (Probe(base, args.probe_size) if args.probe_size
             else default_probe(base, x, y))
    f_indexed = ExtIndexedCategory(y, probe)
    report = yoneda_bijection(f_indexed, x, budget=budget)
    counts = report.counts()
    ok = report.ok
    lines = [f"{_status(ok)}  yoneda: {counts} round_trip={ok}"]
    return {"command": "yoneda", "counts": counts, "ok": ok,
            "lines": lines}, ok


def cmd_kan_check(args, base, budget):
    x, _, _ = load_internal_category(args.files[0], base=base,
                                     k=args.truncation)
    report = left_kan_check(x, budget=budget,
                            max_probe_size=args.max_probe_size)
    ok = report["agree"]
    lines = [f"{_status(ok)}  kan-check: agree={report['agree']} "
             f"checked={report['checked']} skipped={report['skipped']}"]
    return {"command": "kan-check", "results": report, "ok": ok,
            "lines": lines}, ok


def cmd_counterexample_demo(args, base, budget):
    demo = nonpreservation_demo(base, budget=budget)
    ok = (not demo["tensor_preserved_by_externalization"]
          and demo["objects"] == 4
          and demo["incl_to_incr_arrows"] == 1)
    lines = [
        f"{_status(ok)}  counterexample-demo: externalized tensor has "
        f"{demo['objects']} objects vs constant value's "
        f"{demo['constant_side_objects']}",
        f"      unique arrow (incl,incl) -> (incr,incr): "
        f"{demo['incl_to_incr_arrows'] == 1}",
        f"      equivalent to [1]+[0]+[0]: "
        f"{demo['equivalent_to_claimed_interval_plus_points']} "
        f"(computed value is the square [1]x[1]: "
        f"{demo['equivalent_to_product_square']})",
    ]
    return {"command": "counterexample-demo", "results": demo, "ok": ok,
            "lines": lines}, ok


def cmd_suite(args, base, budget):
    if args.bundled or not args.files:
        return _bundled_suite(args, base, budget)
    doc = load_document(args.files[0])
    if doc["kind"] != "suite":
        raise SchemaError(f"{args.files[0]}: expected a suite document")
    lines, results, ok = [], [], True
    for item in doc.get("items", []):
        sub = argparse.Namespace(**{**vars(args), **item.get("args", {}),
                                    "files": item.get("files", [])})
        handler = COMMANDS[item["command"]]
        report, good = handler(sub, base, budget)
        expected = item.get("expect_ok", True)
        good = (good == expected)
        ok = ok and good
        results.append({"item": item["command"], "ok": good})
        lines.extend(report.get("lines", []))
    return {"command": "suite", "results": results, "ok": ok,
            "lines": lines}, ok


def _bundled_suite(args, base, budget):
    """Fast structural sweep over the bundled corpus; exits zero."""
    items = build_corpus(base=base, seed=corpus_seed())
    lines, ok = [], True
    n_complete = n_groupoid = 0
    for it in items:
        seg = segal_maps(it.icat.x, budget=budget).is_segal
        comp, _ = is_complete(it.icat.x, budget=budget)
        grp = is_groupoid(it.icat.x, budget=budget)
        gaunt = it.source_cat.is_gaunt() if it.source_cat else True
        good = seg and (comp == gaunt)
        ok = ok and good
        n_complete += bool(comp)
        n_groupoid += bool(grp)
        if not good:
            lines.append(f"FAIL  suite {it.name}: segal={seg} "
                         f"complete={comp} gaunt={gaunt}")
    pairs = sample_pairs(small_corpus(items), 6, seed=corpus_seed())
    for a, b in pairs:
        rep = fully_faithful_check(a.icat, b.icat, budget=budget,
                                   stability=False)
        ok = ok and rep.ok
        if not rep.ok:
            lines.append(f"FAIL  suite ff {a.name}->{b.name}")
    demo, demo_ok = cmd_counterexample_demo(args, base, budget)
    ok = ok and demo_ok
    lines.append(f"{_status(ok)}  suite: {len(items)} instances, "
                 f"{n_complete} complete, {n_groupoid} groupoids, "
                 f"{len(pairs)} hom comparisons, seed={corpus_seed()}")
    return {"command": "suite", "instances": len(items), "ok": ok,
            "lines": lines}, ok


COMMANDS = {
    "check-segal": cmd_check_segal,
    "check-complete": cmd_check_complete,
    "check-groupoid": cmd_check_groupoid,
    "externalize": cmd_externalize,
    "exponential": cmd_exponential,
    "tensor": cmd_tensor,
    "cotensor": cmd_cotensor,
    "core": cmd_core,
    "yoneda": cmd_yoneda,
    "kan-check": cmd_kan_check,
    "counterexample-demo": cmd_counterexample_demo,
    "suite": cmd_suite,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="segalkit",
        description="Finite-scale internal category theory checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("files", nargs="*")
        p.add_argument("--base-bound", type=int, default=64,
                       help="size bound N for base objects (default 64)")
        p.add_argument("--truncation", type=int, default=3,
                       help="truncation level K (default 3)")
        p.add_argument("--probe-size", type=int, default=None,
                       help="probe size M (default: policy)")
        p.add_argument("--budget", type=int, default=5_000_000,
                       help="search budget B (default 5000000)")
        p.add_argument("--oracle", action="store_true",
                       help="attach brute-force certificates")
        p.add_argument("--json", metavar="OUT",
                       help="write the JSON report to OUT")
        if name == "externalize":
            p.add_argument("--probe-sizes", default="0,1,2")
            p.add_argument("--dump-limit", type=int, default=64)
        if name in ("tensor", "cotensor"):
            p.add_argument("--weight", default="delta:1",
                           help="delta:N, spine:N, boundary:N, or a file")
        if name == "kan-check":
            p.add_argument("--max-probe-size", type=int, default=2)
        if name == "suite":
            p.add_argument("--bundled", action="store_true")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    base = FinSetBase(args.base_bound)
    budget = Budget(args.budget, label=args.command)
    try:
        report, ok = COMMANDS[args.command](args, base, budget)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BoundExceeded, SearchBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ColimitNotFinite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    _emit(report, args)
    return EXIT_OK if ok else EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
