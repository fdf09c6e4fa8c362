"""Command-line front end.

Exit codes: 0 success/true, 1 computed predicate false, 2 input error,
3 size limit.
"""
import argparse
import json
import sys
from pathlib import Path

from . import axioms, config, finalg, fintop, harness, mutants, reflector, search, topalg
from .documents import (dumps, kind_of, load_any, map_from_doc, partition_to_doc, read_json,
                        reflection_report, space_from_doc, topstructure_to_doc)
from .errors import DocumentError, EpireflectError, SizeLimit

AXIOM_CHOICES = ["t0", "t1", "t2", "urysohn", "fh", "regular", "creg", "t35"]
METHOD_CHOICES = ["auto", "partitions", "closed-rel", "generated", "direct"]


def _emit(args, doc, text):
    print(json.dumps(doc, sort_keys=True) if args.json else text)


def _space(path):
    return space_from_doc(str(path))


def _subset(args, X):
    if args.subset is None:
        return None
    try:
        pts = [int(s) for s in args.subset.split(",") if s.strip()]
    except ValueError:
        raise DocumentError(f"--subset expects comma-separated indices, got {args.subset!r}")
    if any(not 0 <= p < X.n for p in pts):
        raise DocumentError(f"--subset indices must lie in 0..{X.n - 1}")
    return sorted(set(pts))


def _names(X, mask):
    return "{" + ",".join(X.label(x) for x in fintop.bits(mask)) + "}"


def _family(path):
    doc, base = read_json(path)
    if isinstance(doc, dict):
        doc = doc.get("spaces", [doc])
    return [space_from_doc(d, base) for d in doc]


# -- commands -------------------------------------------------------------------

def cmd_check(args):
    if args.what == "map":
        f = map_from_doc(str(args.doc))
        preds = fintop.map_predicates(f)
        _emit(args, preds, "\n".join(f"{k}: {str(v).lower()}" for k, v in preds.items()))
        return 0 if preds["continuous"] else 1
    X = _space(args.doc)
    names = [args.axiom] if args.axiom else list(axioms.BUILTINS)
    res = {axioms.get(a).name: axioms.check_axiom(X, a) for a in names}
    _emit(args, res, "\n".join(f"{k}: {str(v).lower()}" for k, v in res.items()))
    return 0 if all(res.values()) or not args.axiom else 1


def cmd_reflect(args):
    X = _space(args.doc)
    method = args.method.replace("-", "_")
    R = reflector.reflect(X, args.axiom, method)
    rep = reflection_report(R)
    T = R.target
    text = [f"{R.axiom} reflection via {R.method}: {X.n} -> {T.n} points",
            "target points: " + ", ".join(T.point_labels()),
            "target opens: " + ", ".join(_names(T, m) for m in T.opens),
            "arrow: " + ", ".join(f"{X.label(x)}->{T.label(R.arrow.table[x])}" for x in range(X.n)),
            f"quotient map: {str(rep['quotient']).lower()}, open map: {str(rep['open']).lower()}"]
    _emit(args, rep, "\n".join(text))
    return 0


def cmd_copen(args):
    X = _space(args.doc)
    fam = reflector.c_open_sets(X, args.axiom)
    A = _subset(args, X)
    doc = {"axiom": axioms.get(args.axiom).name, "c_opens": [list(fintop.members(m)) for m in fam]}
    text = [f"{doc['axiom']}-open sets: " + ", ".join(_names(X, m) for m in fam)]
    code = 0
    if A is not None:
        ok = reflector.is_c_open(X, A, args.axiom)
        doc["subset"], doc["is_c_open"] = A, ok
        text.append(f"subset {_names(X, fintop.to_mask(A))} is C-open: {str(ok).lower()}")
        code = 0 if ok else 1
    _emit(args, doc, "\n".join(text))
    return code


def cmd_coincide(args):
    X = _space(args.doc)
    a = reflector.coincide(X, args.fine, args.coarse)
    b = reflector.coincide_criterion(X, args.fine, args.coarse)
    doc = {"fine": axioms.get(args.fine).name, "coarse": axioms.get(args.coarse).name,
           "coincide": a, "criterion": b}
    _emit(args, doc, f"reflections coincide: {str(a).lower()}\n"
                     f"every {doc['fine']}-open set is {doc['coarse']}-open: {str(b).lower()}")
    return 0 if a else 1


def cmd_subspace(args):
    X = _space(args.doc)
    A = _subset(args, X)
    if not A:
        raise DocumentError("subspace needs a nonempty --subset")
    ok = reflector.preserves_subspace(X, A, args.axiom)
    c1, c2 = reflector.pr_subspace_criterion(X, A, args.axiom)
    doc = {"axiom": axioms.get(args.axiom).name, "subset": A, "preserved": ok,
           "separation_transfers": c1, "c_opens_are_traces": c2,
           "t1_closed": reflector.is_t1_closed(X, A)}
    text = [f"subspace {_names(X, fintop.to_mask(A))} preserved by {doc['axiom']} reflection: "
            f"{str(ok).lower()}",
            f"separation transfers: {str(c1).lower()}, C-opens are traces: {str(c2).lower()}",
            f"T1-closed: {str(doc['t1_closed']).lower()}"]
    if args.family:
        emb = reflector.is_a_embedded(X, A, _family(args.family))
        doc["a_embedded"] = emb
        text.append("maps into the family extend: " + ("true" if emb else "not witnessed within bound"))
    _emit(args, doc, "\n".join(text))
    return 0 if ok else 1


def cmd_product(args):
    Xs = [_space(p) for p in args.docs]
    pc = reflector.product_preservation(Xs, args.axiom)
    doc = {"axiom": pc.axiom, "mu": list(pc.mu.table), "is_homeo": pc.is_homeo,
           "arrows_open": pc.arrows_open}
    _emit(args, doc, f"comparison map is a homeomorphism: {str(pc.is_homeo).lower()}\n"
                     f"all reflection arrows open: {str(pc.arrows_open).lower()}")
    return 0 if pc.is_homeo else 1


def cmd_alg(args):
    from .documents import algebra_from_doc
    doc, base = read_json(args.doc)
    if kind_of(doc) == "structure":
        doc = doc["algebra"]
    U = algebra_from_doc(doc, base, check=False)
    bad = finalg.check_equations(U)
    congs = finalg.all_congruences(U)
    doc = {"satisfies": bad is None, "failing_equation": None if bad is None else bad[0],
           "assignment": None if bad is None else bad[1],
           "congruences": [partition_to_doc(P) for P in congs]}
    text = ["equations hold" if bad is None else f"equation {bad[0]} fails at {bad[1]}",
            f"{len(congs)} congruences:"] + [f"  {P.blocks}" for P in congs]
    _emit(args, doc, "\n".join(text))
    return 0 if bad is None else 1


def cmd_topalg(args):
    doc, base = read_json(args.doc)
    kind = kind_of(doc)
    if kind == "maltsev":
        _, (X, phi) = load_any(args.doc)
        try:
            W = topalg.is_maltsev(X, phi)
        except EpireflectError as exc:
            _emit(args, {"maltsev": False, "reason": str(exc)}, f"not Mal'tsev: {exc}")
            return 1
        out = {"maltsev": True, "mode": W.mode}
        text = [f"Mal'tsev operation, {W.mode}"]
        if args.axiom:
            C = axioms.get(args.axiom)
            out["reflection_open"] = topalg.maltsev_reflection_open(W, C)
            text.append(f"{C.name} reflection arrow open: {str(out['reflection_open']).lower()}")
        _emit(args, out, "\n".join(text))
        return 0
    if kind != "structure":
        raise DocumentError("topalg expects a structure or Mal'tsev document")
    _, T = load_any(args.doc)
    out = {"mode": T.mode}
    text = [f"mode: {T.mode}"]
    is_group = {o for o, _ in T.alg.sig.ops} == {"mul", "inv"}
    if is_group:
        out["group"] = topalg.group_predicates(T)
        text += [f"{k}: {str(v).lower()}" for k, v in out["group"].items()]
    if args.axiom:
        V = topalg.induced_reflection_structure(T, args.axiom)
        out["induced"] = topstructure_to_doc(V)
        out["induced_mode"] = V.mode
        text.append(f"induced structure on the {axioms.get(args.axiom).name} reflection: "
                    f"{V.alg.n} elements, {V.mode}")
        if is_group and axioms.get(args.axiom).name == "T1":
            H = topalg.smallest_closed_subgroup(T)
            G = topalg.t1_reflection_group(T)
            out["closed_subgroup"] = list(H)
            out["agrees"] = topalg.same_topstructure(G, V)
            text.append(f"smallest closed subgroup {list(H)}; coset quotient agrees: "
                        f"{str(out['agrees']).lower()}")
    _emit(args, out, "\n".join(text))
    return 0 if T.mode != "neither" else 1


def cmd_verify(args):
    rep = harness.run_suite(args.suite, args.max_points, args.jobs)
    if args.save_failures:
        out = Path(args.save_failures)
        out.mkdir(parents=True, exist_ok=True)
        for p in rep.properties:
            if not p.passed:
                (out / f"{p.id}.json").write_text(json.dumps(p.counterexample, indent=1) + "\n")
    _emit(args, rep.to_doc(), harness.format_report(rep))
    return 0 if rep.passed else 1


def cmd_search(args):
    names = [args.axiom] if args.axiom else None
    findings, summary = search.run(args.target, args.max_points, names)
    if args.json:
        print(json.dumps({"target": args.target, "max_points": args.max_points,
                          "summary": summary, "findings": findings}, sort_keys=True))
    else:
        for f in findings:
            print(dumps(f))
        if not findings:
            print(f"none up to {args.max_points}")
        else:
            print(f"{len(findings)} findings up to {args.max_points}")
    return 0


def cmd_replay(args):
    cex, _ = read_json(args.doc)
    ok, count, detail, _ = harness.replay(cex)
    _emit(args, {"property": cex.get("property"), "passed": ok, "detail": detail},
          f"{cex.get('property')}: {'pass' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="epireflect",
                                description="Epireflections of finite spaces and structures.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-points", type=int, default=None,
                        help="enumeration size guard (default 5, or $EPIREFLECT_MAX_POINTS)")
    common.add_argument("--mutate", action="append", default=[], choices=sorted(mutants.KNOWN),
                        help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def axiom_arg(sp, required=True):
        sp.add_argument("--axiom", choices=AXIOM_CHOICES, required=required)

    sp = sub.add_parser("check", parents=[common], help="axioms of a space or predicates of a map")
    sp.add_argument("what", choices=["axioms", "map"])
    sp.add_argument("doc")
    axiom_arg(sp, required=False)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("reflect", parents=[common], help="reflection of a space")
    sp.add_argument("doc")
    axiom_arg(sp)
    sp.add_argument("--method", choices=METHOD_CHOICES, default="auto")
    sp.set_defaults(func=cmd_reflect)

    sp = sub.add_parser("copen", parents=[common], help="C-open sets")
    sp.add_argument("doc")
    axiom_arg(sp)
    sp.add_argument("--subset")
    sp.set_defaults(func=cmd_copen)

    sp = sub.add_parser("coincide", parents=[common], help="compare two nested reflections")
    sp.add_argument("doc")
    sp.add_argument("--fine", choices=AXIOM_CHOICES, required=True)
    sp.add_argument("--coarse", choices=AXIOM_CHOICES, required=True)
    sp.set_defaults(func=cmd_coincide)

    sp = sub.add_parser("subspace", parents=[common], help="subspace preservation")
    sp.add_argument("doc")
    axiom_arg(sp)
    sp.add_argument("--subset", required=True)
    sp.add_argument("--family", help="JSON list of generator spaces for the extension test")
    sp.set_defaults(func=cmd_subspace)

    sp = sub.add_parser("product", parents=[common], help="product preservation")
    sp.add_argument("docs", nargs="+")
    axiom_arg(sp)
    sp.set_defaults(func=cmd_product)

    sp = sub.add_parser("alg", parents=[common], help="equations and congruences of an algebra")
    sp.add_argument("doc")
    sp.set_defaults(func=cmd_alg)

    sp = sub.add_parser("topalg", parents=[common], help="topological structures and Mal'tsev spaces")
    sp.add_argument("doc")
    axiom_arg(sp, required=False)
    sp.set_defaults(func=cmd_topalg)

    sp = sub.add_parser("verify", parents=[common], help="exhaustive property verification")
    sp.add_argument("--suite", choices=["all"] + list(harness.SUITES), default="all")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--save-failures", metavar="DIR",
                    help="write each failing counterexample to DIR/<property>.json")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("search", parents=[common], help="hunt for finite counterexamples")
    sp.add_argument("--target", choices=search.TARGETS, required=True)
    axiom_arg(sp, required=False)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("replay", parents=[common], help="re-run a saved counterexample")
    sp.add_argument("doc")
    sp.set_defaults(func=cmd_replay)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command in ("verify", "search"):
        if args.max_points is None:
            args.max_points = 4 if args.command == "verify" else 3
    saved = config.LIMITS
    if args.max_points is not None:
        config.set_limits(enum_points=max(args.max_points, config.LIMITS.enum_points)
                          if args.command in ("verify", "search") else args.max_points)
    mutants.disable_all()
    mutants.enable(*args.mutate)
    try:
        return args.func(args)
    except SizeLimit as exc:
        print(f"error: size limit: {exc}", file=sys.stderr)
        return 3
    except EpireflectError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        mutants.disable_all()
        config.LIMITS = saved


if __name__ == "__main__":
    sys.exit(main())
