"""Exhaustive verification harness.

Each registered property owns an instance generator (JSON-shaped instances,
so any failure can be written out and replayed) and a check.  A check
returns ``(ok, count, detail, stats)``: ``count`` is the number of elementary
cases it covered, ``stats`` holds numbers summed across instances (``max_*``
keys keep the maximum).
"""
import json
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations, product
from multiprocessing import Pool

from . import axioms, config, finalg, fintop, mutants, reflector, topalg
from .documents import algebra_from_doc, algebra_to_doc, space_from_doc, space_to_doc
from .errors import EpireflectError, KernelNotCongruence, NotACongruence, SizeLimit
from .partition import Partition, all_partitions, meet_all

SUITES = ("reflection", "subspace", "coincidence", "algebra", "maltsev")
T0_CLASSES = ("T0", "T1", "T2", "URYSOHN", "FH", "T35")
SUPER_CLOSED = ("T0", "T1", "T2", "URYSOHN", "FH")


@dataclass
class Property:
    id: str
    suite: str
    anchor: str
    instances: object
    check: object


REGISTRY = {}


def prop(pid, suite, anchor):
    def wrap(fn):
        gen = fn.instances
        REGISTRY[pid] = Property(pid, suite, anchor, gen, fn)
        return fn
    return wrap


def instances_of(gen):
    def deco(fn):
        fn.instances = gen
        return fn
    return deco


# -- instance helpers ---------------------------------------------------------

@lru_cache(maxsize=None)
def _space(key):
    return space_from_doc(json.loads(key))


def S(doc):
    return _space(json.dumps(doc, sort_keys=True))


def spaces_upto(N, low=0):
    for n in range(low, N + 1):
        for X in fintop.enumerate_topologies(n):
            yield space_to_doc(X)


def reps_upto(N):
    for n in range(N + 1):
        for X in fintop.topology_classes(n):
            yield space_to_doc(X)


def space_subsets(N):
    for doc in spaces_upto(N, 1):
        for r in range(1, len(doc["points"]) + 1):
            for A in combinations(range(len(doc["points"])), r):
                yield {"space": doc, "subset": list(A)}


def _groups(N):
    for n in range(1, min(N, 4) + 1):
        yield from finalg.labeled_groups(n)


def _group_topologies(N):
    for G in _groups(N):
        gdoc = algebra_to_doc(G)
        for X in fintop.enumerate_topologies(G.n):
            yield {"algebra": gdoc, "space": space_to_doc(X)}


def _structure(inst):
    return topalg.TopStructure(algebra_from_doc(inst["algebra"], check=False), S(inst["space"]))


def _pass(count=1, stats=None):
    return True, count, None, stats or {}


def _fail(detail, count=1, stats=None):
    return False, count, detail, stats or {}


# -- reflection suite ---------------------------------------------------------

@prop("enumerators-agree", "reflection",
      "open-set families and preorders give the same number of topologies")
@instances_of(lambda N: ({"n": n} for n in range(N + 1)))
def _enum_agree(inst):
    n = inst["n"]
    a = sum(1 for _ in fintop.enumerate_open_families(n))
    b = sum(1 for _ in fintop.enumerate_preorders(n))
    stats = {f"topologies_n{n}": a}
    return (a == b, 1, None if a == b else f"{a} open families vs {b} preorders", stats)


@prop("continuity-is-monotonicity", "reflection",
      "preimage-continuity agrees with monotonicity of the specialization order")
@instances_of(lambda N: ({"dom": x, "cod": y} for x in reps_upto(min(N, 3))
                         for y in reps_upto(min(N, 3))))
def _continuity(inst):
    X, Y = S(inst["dom"]), S(inst["cod"])
    count = 0
    for table in product(range(Y.n), repeat=X.n):
        f = fintop.CMap(X, Y, table)
        count += 1
        if f.is_continuous() != fintop.continuous_by_preimages(f):
            return _fail(f"map {table}", count)
    listed = {f.table for f in fintop.enumerate_cmaps(X, Y)}
    brute = {t for t in product(range(Y.n), repeat=X.n)
             if fintop.continuous_by_preimages(fintop.CMap(X, Y, t))}
    if listed != brute:
        return _fail("enumerate_cmaps differs from brute force", count)
    return _pass(count)


@prop("reflection-universal", "reflection",
      "reflection target lies in the class, every map into the class factors, "
      "reflecting twice changes nothing, supertopology-closed arrows are quotient maps")
@instances_of(lambda N: ({"space": d, "axiom": a} for d in spaces_upto(N) for a in axioms.BUILTINS))
def _reflection_universal(inst):
    X, C = S(inst["space"]), axioms.get(inst["axiom"])
    R = reflector.reflect(X, C)
    stats = {"max_t2_iterations": R.iterations} if C.name == "T2" else {}
    if not C(R.target):
        return _fail("target not in class", stats=stats)
    v = reflector.verify_universal_property(R, C)
    if not v:
        c = v.certificate
        return _fail(f"{c['reason']}: Y={c['Y']}, f={c['f']}", stats=stats)
    again = reflector.reflect(R.target, C)
    if not fintop.is_homeomorphism(again.arrow):
        return _fail("reflection is not idempotent", stats=stats)
    if C.closed_under_supertopologies and not R.arrow.is_quotient():
        return _fail("arrow is not a quotient map", stats=stats)
    return _pass(stats=stats)


@prop("universal-bound", "reflection",
      "codomains with at most |X| points suffice for the universal property")
@instances_of(lambda N: ({"space": d, "axiom": a} for d in spaces_upto(min(N, 3))
                         for a in axioms.BUILTINS))
def _universal_bound(inst):
    X, C = S(inst["space"]), axioms.get(inst["axiom"])
    R = reflector.reflect(X, C)
    v = reflector.verify_universal_property(R, C, max_codomain=X.n + 1)
    return _pass() if v else _fail(str(v.certificate))


@prop("engines-agree", "reflection",
      "direct T1 and iterated T2 engines agree with the partition engine")
@instances_of(lambda N: ({"space": d} for d in spaces_upto(N)))
def _engines(inst):
    X = S(inst["space"])
    for name in ("T1", "T2"):
        a = reflector.reflect(X, name, "direct")
        b = reflector.reflect(X, name, "partitions")
        if reflector.commuting_homeomorphism(a.arrow, b.arrow) is None:
            return _fail(f"{name}: direct {a.arrow.table} vs partitions {b.arrow.table}", 2)
    return _pass(2)


@prop("closed-blocks-t1", "reflection",
      "a quotient is T1 iff its blocks are closed; a T2 quotient has a closed relation")
@instances_of(lambda N: ({"space": d} for d in spaces_upto(N)))
def _closed_blocks(inst):
    X = S(inst["space"])
    count = 0
    for P in all_partitions(X.n):
        count += 1
        Q, _ = fintop.quotient(X, P)
        blocks_closed = all(X.is_closed(m) for m in P.block_masks())
        if axioms.is_t1(Q) != blocks_closed:
            return _fail(f"partition {P.blocks}", count)
        if axioms.is_t2(Q) and not reflector.is_closed_relation(X, set(P.pairs())):
            return _fail(f"T2 quotient with non-closed relation {P.blocks}", count)
    return _pass(count)


@prop("sce-least-closed", "reflection",
      "the smallest closed equivalence is closed, an equivalence, and below every closed one")
@instances_of(lambda N: ({"space": d} for d in spaces_upto(N)))
def _sce(inst):
    X = S(inst["space"])
    R = reflector.smallest_closed_equivalence(X)
    pairs = set(R.pairs)
    if not reflector.is_closed_relation(X, pairs):
        return _fail(f"relation {sorted(pairs)} is not closed")
    refl = all((x, x) in pairs for x in range(X.n))
    symm = all((y, x) in pairs for x, y in pairs)
    trans = all((x, w) in pairs for x, y in pairs for z, w in pairs if y == z)
    if not (refl and symm and trans):
        return _fail(f"relation {sorted(pairs)} is not an equivalence")
    P = R.partition()
    for Q in all_partitions(X.n):
        if reflector.is_closed_relation(X, set(Q.pairs())) and not P.refines(Q):
            return _fail(f"closed equivalence {Q.blocks} does not contain {P.blocks}")
    return _pass()


@prop("functoriality", "reflection",
      "the reflected map commutes with the reflection arrows")
@instances_of(lambda N: ({"dom": x, "cod": y} for x in reps_upto(min(N, 3))
                         for y in reps_upto(min(N, 3))))
def _functoriality(inst):
    X, Y = S(inst["dom"]), S(inst["cod"])
    count = 0
    for C in axioms.BUILTINS.values():
        rx, ry = reflector.reflect(X, C), reflector.reflect(Y, C)
        for f in fintop.enumerate_cmaps(X, Y):
            count += 1
            g = reflector.functor_map(f, C)
            if not g.is_continuous() or rx.arrow.compose(g).table != f.compose(ry.arrow).table:
                return _fail(f"{C.name}: map {f.table}", count)
    return _pass(count)


@prop("functor-composition", "reflection",
      "reflecting a composite equals composing the reflected maps")
@instances_of(lambda N: ({"a": x, "b": y, "c": z} for x in reps_upto(min(N, 2))
                         for y in reps_upto(min(N, 2)) for z in reps_upto(min(N, 2))))
def _composition(inst):
    X, Y, Z = S(inst["a"]), S(inst["b"]), S(inst["c"])
    count = 0
    for C in axioms.BUILTINS.values():
        for f in fintop.enumerate_cmaps(X, Y):
            for g in fintop.enumerate_cmaps(Y, Z):
                count += 1
                lhs = reflector.functor_map(f.compose(g), C).table
                rhs = reflector.functor_map(f, C).compose(reflector.functor_map(g, C)).table
                if lhs != rhs:
                    return _fail(f"{C.name}: f={f.table}, g={g.table}", count)
    return _pass(count)


@prop("c-open-descriptions", "reflection",
      "C-open sets from maps into members, from the reflection, and from generators coincide")
@instances_of(lambda N: ({"space": d, "axiom": a} for d in spaces_upto(N) for a in axioms.BUILTINS))
def _c_open(inst):
    X = S(inst["space"])
    return _pass() if reflector.le_subspace_check(X, inst["axiom"]) else _fail("families differ")


@prop("nesting-table", "reflection",
      "the static containment table between built-in classes holds pointwise")
@instances_of(lambda N: ({"space": d} for d in spaces_upto(N)))
def _nesting(inst):
    X = S(inst["space"])
    for big, small in sorted(axioms.NESTING):
        if axioms.get(small)(X) and not axioms.get(big)(X):
            return _fail(f"member of {small} outside {big}", len(axioms.NESTING))
    return _pass(len(axioms.NESTING))


@prop("reflections-compose", "reflection",
      "reflecting into a larger class first does not change the smaller reflection")
@instances_of(lambda N: ({"space": d} for d in spaces_upto(N)))
def _compose(inst):
    X = S(inst["space"])
    pairs = sorted(axioms.NESTING)
    for big, small in pairs:
        if not reflector.compose_reflections_check(X, big, small):
            return _fail(f"{big} then {small}", len(pairs))
    return _pass(len(pairs))


# -- subspace suite -------------------------------------------------------------

@prop("subspace-criterion", "subspace",
      "a reflection preserves a subspace iff arrow separation transfers and C-opens are traces")
@instances_of(space_subsets)
def _subspace_criterion(inst):
    X, A = S(inst["space"]), inst["subset"]
    for C in axioms.BUILTINS.values():
        lhs = reflector.preserves_subspace(X, A, C)
        c1, c2 = reflector.pr_subspace_criterion(X, A, C)
        if lhs != (c1 and c2):
            return _fail(f"{C.name}: preserves={lhs}, conditions=({c1}, {c2})", len(axioms.BUILTINS))
    return _pass(len(axioms.BUILTINS))


@prop("t0-preserves-subspaces", "subspace",
      "the Kolmogorov quotient preserves every subspace")
@instances_of(lambda N: space_subsets(min(N, 3)))
def _t0_subspaces(inst):
    ok = reflector.preserves_subspace(S(inst["space"]), inst["subset"], axioms.T0)
    return _pass() if ok else _fail("subspace not preserved")


@prop("a-embedded-preserves", "subspace",
      "subspaces on which Sierpinski-valued maps extend are preserved by the T0 reflection")
@instances_of(lambda N: space_subsets(min(N, 3)))
def _a_embedded(inst):
    X, A = S(inst["space"]), inst["subset"]
    emb = reflector.is_a_embedded(X, A, [fintop.sierpinski()])
    if emb and not reflector.preserves_subspace(X, A, axioms.T0):
        return _fail("embedded subspace not preserved")
    return _pass(stats={"witnessed": int(emb)})


@prop("t1-closed-fibers", "subspace",
      "T1-closed sets are exactly unions of fibers of maps into discrete spaces")
@instances_of(lambda N: ({"space": d} for d in spaces_upto(N)))
def _t1_closed(inst):
    X = S(inst["space"])
    fibers = set()
    for f in fintop.enumerate_cmaps(X, fintop.discrete(max(X.n, 1))):
        for vals in range(1 << max(X.n, 1)):
            fibers.add(fintop.to_mask(x for x in range(X.n) if (vals >> f.table[x]) & 1))
    for A in range(1 << X.n):
        if reflector.is_t1_closed(X, A) != (A in fibers):
            return _fail(f"subset {fintop.members(A)}", 1 << X.n)
    return _pass(1 << X.n)


# -- coincidence suite ----------------------------------------------------------

def _t0_pairs():
    return [(a, b) for a, b in sorted(axioms.NESTING) if a in T0_CLASSES and b in T0_CLASSES]


@prop("coincidence-criterion", "coincidence",
      "two nested reflections coincide iff every C-open set is E-open")
@instances_of(lambda N: ({"space": d} for d in spaces_upto(N)))
def _coincide(inst):
    X = S(inst["space"])
    pairs = _t0_pairs()
    for C, E in pairs:
        if reflector.coincide(X, C, E) != reflector.coincide_criterion(X, C, E):
            return _fail(f"({C}, {E})", len(pairs))
    return _pass(len(pairs))


@prop("t1-t35-point-separation", "coincidence",
      "T1 and T3.5 reflections coincide iff T1-closed sets are completely separated from points")
@instances_of(lambda N: ({"space": d} for d in spaces_upto(N)))
def _echi(inst):
    X = S(inst["space"])
    a, b = reflector.echi_lazaar(X), reflector.coincide(X, "T1", "T35")
    return _pass() if a == b else _fail(f"point separation {a}, coincidence {b}")


@prop("complete-separation-maps", "coincidence",
      "complete separation agrees with separating maps into finite discrete spaces")
@instances_of(lambda N: ({"space": d} for d in spaces_upto(N)))
def _complete_sep(inst):
    X = S(inst["space"])
    kernels = {tuple(f.table) for f in fintop.enumerate_cmaps(X, fintop.discrete(max(X.n, 1)))}
    count = 0
    for A in range(1 << X.n):
        for B in range(1 << X.n):
            count += 1
            brute = any(not ({k[x] for x in fintop.bits(A)} & {k[x] for x in fintop.bits(B)})
                        for k in kernels)
            if axioms.completely_separated(X, A, B) != brute:
                return _fail(f"A={fintop.members(A)}, B={fintop.members(B)}", count)
    return _pass(count)


# -- algebra suite --------------------------------------------------------------

def _group_docs(N):
    return ({"algebra": algebra_to_doc(G)} for G in _groups(N))


def _alg(inst, key="algebra"):
    return algebra_from_doc(inst[key], check=False)


@prop("congruence-lattice", "algebra",
      "meets and joins of congruences are congruences")
@instances_of(_group_docs)
def _lattice(inst):
    U = _alg(inst)
    congs = finalg.all_congruences(U)
    count = 0
    for P, Q in product(congs, repeat=2):
        count += 1
        if not finalg.is_congruence(U, P.meet(Q)):
            return _fail(f"meet of {P.blocks} and {Q.blocks}", count)
        J = finalg.congruence_generated(U, list(P.pairs()) + list(Q.pairs()))
        above = [R for R in congs if P.refines(R) and Q.refines(R)]
        least = meet_all(above, U.n)
        if J not in congs or any(not J.refines(R) for R in above) or J != least:
            return _fail(f"join of {P.blocks} and {Q.blocks}", count)
    return _pass(count)


@prop("congruence-generation", "algebra",
      "merge-saturation yields the intersection of congruences containing the pairs")
@instances_of(_group_docs)
def _generation(inst):
    U = _alg(inst)
    congs = finalg.all_congruences(U)
    count = 0
    for pair in [()] + [((a, b),) for a, b in combinations(range(U.n), 2)]:
        count += 1
        G = finalg.congruence_generated(U, list(pair))
        want = Partition([0] * U.n) if U.n else Partition(())
        for P in congs:
            if all(P.related(a, b) for a, b in pair):
                want = want.meet(P)
        if G != want:
            return _fail(f"pairs {pair}: {G.blocks} vs {want.blocks}", count)
    return _pass(count)


@prop("quotient-is-homomorphic-image", "algebra",
      "quotients are only formed by congruences and then satisfy the equations")
@instances_of(_group_docs)
def _quotients(inst):
    U = _alg(inst)
    count = 0
    for P in all_partitions(U.n):
        count += 1
        try:
            V, proj = finalg.quotient_structure(U, P)
        except NotACongruence:
            if finalg.is_congruence(U, P):
                return _fail(f"congruence {P.blocks} rejected", count)
            continue
        if not finalg.is_homomorphism(proj, U, V):
            return _fail(f"projection onto {P.blocks} is not a homomorphism", count)
        bad = finalg.check_equations(V)
        if bad is not None:
            return _fail(f"quotient by {P.blocks} violates {bad[0]}", count)
    return _pass(count)


@prop("first-isomorphism", "algebra",
      "every homomorphism factors through its kernel by an injective homomorphism")
@instances_of(lambda N: ({"algebra": algebra_to_doc(U), "target": algebra_to_doc(V)}
                         for U in _groups(N) for V in _groups(N)))
def _first_iso(inst):
    U, V = _alg(inst), _alg(inst, "target")
    count = 0
    for f in finalg.homomorphisms(U, V):
        count += 1
        K, ft = finalg.first_isomorphism(f, U, V)
        Q, proj = finalg.quotient_structure(U, K)
        if (len(set(ft)) != len(ft) or not finalg.is_homomorphism(ft, Q, V)
                or any(ft[proj[x]] != f[x] for x in range(U.n))):
            return _fail(f"homomorphism {f}", count)
    return _pass(count)


@prop("group-congruence-cosets", "algebra",
      "group congruence blocks are the cosets of the block of the identity")
@instances_of(lambda N: ({"algebra": algebra_to_doc(G)}
                         for G in finalg.groups_upto_iso(6 if N >= 4 else max(N, 1))))
def _cosets(inst):
    U = _alg(inst)
    config.guard(U.n, "carrier")
    congs = finalg.all_congruences(U)
    e = U.const_values["e"]
    for P in congs:
        H = P.blocks[P.labels[e]]
        if topalg.coset_partition(U, H) != P:
            return _fail(f"congruence {P.blocks}", len(congs))
    return _pass(len(congs))


# -- Mal'tsev and group suite ---------------------------------------------------

@lru_cache(maxsize=None)
def _sweep(X):
    return topalg.maltsev_sweep(X)


@lru_cache(maxsize=None)
def _first_maltsev(X):
    T = topalg.maltsev_tables(X)
    return T[0] if len(T) else None


def _sweep_check(key):
    def check(inst):
        X = S(inst["space"])
        out = _sweep(X)
        count, bad = out[key]
        if bad is not None:
            return _fail(f"{key}: {bad}", count)
        return _pass(count, {"tables": out["tables"]})
    return check


def _maltsev_spaces(N):
    return ({"space": d} for d in spaces_upto(min(N, 3)))


for _pid, _key, _anchor in (
        ("maltsev-quotient-open", "quotient_open",
         "quotients of Mal'tsev spaces by congruences are open"),
        ("maltsev-reflection-open", "reflection_open",
         "reflection arrows of Mal'tsev spaces are open for supertopology-closed classes"),
        ("maltsev-kernel-congruence", "kernel_congruence",
         "reflection kernels of Mal'tsev spaces are congruences"),
        ("maltsev-induced-continuous", "induced_joint",
         "the induced Mal'tsev operation on a reflection is jointly continuous")):
    _fn = _sweep_check(_key)
    _fn.instances = _maltsev_spaces
    prop(_pid, "maltsev", _anchor)(_fn)


@prop("maltsev-products", "maltsev",
      "reflections preserve products of two Mal'tsev spaces")
@instances_of(lambda N: ({"left": a, "right": b} for a in spaces_upto(min(N, 3))
                         for b in spaces_upto(min(N, 3))))
def _maltsev_products(inst):
    X, Y = S(inst["left"]), S(inst["right"])
    if _first_maltsev(X) is None or _first_maltsev(Y) is None:
        return _pass(0)
    for C in SUPER_CLOSED:
        if not reflector.product_preservation([X, Y], C).is_homeo:
            return _fail(f"{C}: comparison map is not a homeomorphism", len(SUPER_CLOSED))
    return _pass(len(SUPER_CLOSED))


@prop("induced-semitopological", "maltsev",
      "reflection kernels of semitopological groups are congruences and the induced group "
      "is semitopological")
@instances_of(_group_topologies)
def _induced(inst):
    T = _structure(inst)
    if T.mode == "neither":
        return _pass(0)
    for C in SUPER_CLOSED:
        try:
            V = topalg.induced_reflection_structure(T, C)
        except KernelNotCongruence as exc:
            return _fail(str(exc), len(SUPER_CLOSED))
        if V.mode == "neither":
            return _fail(f"{C}: induced structure not semitopological", len(SUPER_CLOSED))
    return _pass(len(SUPER_CLOSED))


@prop("t0-group-reflection", "maltsev",
      "the Kolmogorov quotient of a topological group is Hausdorff and Tychonoff")
@instances_of(_group_topologies)
def _t0_group(inst):
    T = _structure(inst)
    if T.mode != "topological":
        return _pass(0)
    Q = reflector.reflect(T.space, "T0").target
    if not (axioms.is_t2(Q) and axioms.is_t35(Q)):
        return _fail("Kolmogorov quotient not T2 and T3.5")
    return _pass()


def small_topologies(n, max_opens=4):
    """Topologies on n points with at most ``max_opens`` open sets."""
    full = (1 << n) - 1
    fams = {(0, full)}
    proper = [m for m in range(1, full)]
    for a in proper:
        fams.add((0, a, full))
        for b in proper:
            if a < b and (a & b in (0, a, b)) and (a | b in (a, b, full)):
                fam = tuple(sorted({0, a, b, full, a & b, a | b}))
                if len(fam) <= max_opens:
                    fams.add(fam)
    out = []
    for fam in sorted(fams):
        if len(fam) <= max_opens:
            out.append(fintop.new_space(n, [fintop.members(m) for m in fam]))
    return out


def _left_topological_cases(N):
    top = 6 if N >= 4 else max(N, 1)
    for G in finalg.groups_upto_iso(top):
        gdoc = algebra_to_doc(G)
        for X in small_topologies(G.n):
            yield {"algebra": gdoc, "space": space_to_doc(X)}


@prop("t1-group-agreement", "maltsev",
      "the quotient by the smallest closed subgroup is the T1 reflection of a left topological group")
@instances_of(_left_topological_cases)
def _t1_group(inst):
    T = _structure(inst)
    if not topalg.group_predicates(T)["left_topological"]:
        return _pass(0)
    errors = (NotACongruence, KernelNotCongruence)
    try:
        A = topalg.t1_reflection_group(T)
    except errors:
        A = None
    try:
        B = topalg.induced_reflection_structure(T, "T1", check_products=False)
    except errors:
        B = None
    if A is None and B is None:
        return _pass(stats={"both_undefined": 1})
    if A is None or B is None or not topalg.same_topstructure(A, B):
        return _fail("coset quotient and induced reflection differ")
    return _pass()


# -- running ----------------------------------------------------------------------

@dataclass
class PropertyResult:
    id: str
    anchor: str
    instances: int
    cases: int
    passed: bool
    counterexample: dict = None
    wall_time: float = 0.0
    stats: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    suite: str
    max_points: int
    mutants: list
    properties: list

    @property
    def passed(self):
        return all(p.passed for p in self.properties)

    def to_doc(self, timings=True):
        props = []
        for p in self.properties:
            d = asdict(p)
            if not timings:
                d.pop("wall_time")
            props.append(d)
        return {"suite": self.suite, "max_points": self.max_points, "mutants": self.mutants,
                "passed": self.passed, "properties": props}


def run_check(pid, inst):
    try:
        return REGISTRY[pid].check(inst)
    except (EpireflectError, AssertionError) as exc:
        if isinstance(exc, SizeLimit):
            raise
        return False, 1, f"{type(exc).__name__}: {exc}", {}


def _worker_init(names):
    mutants.disable_all()
    mutants.enable(*names)


def _task(args):
    return run_check(*args)


def select(suite):
    if suite == "all":
        return [p for s in SUITES for p in REGISTRY.values() if p.suite == s]
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return [p for p in REGISTRY.values() if p.suite == suite]


def run_suite(suite="all", max_points=4, jobs=1, properties=None):
    if max_points > 5:
        raise SizeLimit(f"verification is limited to 5 points, got {max_points}")
    config.guard(max_points, "enum_points", "verification sweep")
    chosen = select(suite)
    if properties:
        chosen = [p for p in chosen if p.id in properties]
    active = mutants.current()
    pool = Pool(jobs, _worker_init, (active,)) if jobs > 1 else None
    results = []
    try:
        for p in chosen:
            t0 = time.perf_counter()
            insts = list(p.instances(max_points))
            tasks = [(p.id, i) for i in insts]
            if pool is None:
                outs = map(_task, tasks)
            else:
                outs = pool.imap(_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs)))
            cases, first, stats = 0, None, {}
            for inst, (ok, count, detail, st) in zip(insts, outs):
                cases += count
                for k, v in st.items():
                    # max_* stats are maxima, everything else is a tally
                    stats[k] = max(stats.get(k, v), v) if k.startswith("max_") else stats.get(k, 0) + v
                if not ok and first is None:
                    first = {"property": p.id, "instance": inst, "detail": detail,
                             "mutants": list(active)}
            results.append(PropertyResult(p.id, p.anchor, len(insts), cases, first is None,
                                          first, round(time.perf_counter() - t0, 3), stats))
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return VerificationReport(suite, max_points, list(active), results)


def replay(cex):
    """Re-run the check recorded in a counterexample document."""
    pid = cex.get("property")
    if pid not in REGISTRY:
        raise EpireflectError(f"unknown property {pid!r}")
    saved = mutants.current()
    mutants.disable_all()
    mutants.enable(*cex.get("mutants", []))
    try:
        return run_check(pid, cex["instance"])
    finally:
        mutants.disable_all()
        mutants.enable(*saved)


def format_report(rep):
    lines = [f"suite {rep.suite}, up to {rep.max_points} points"
             + (f", mutants {','.join(rep.mutants)}" if rep.mutants else "")]
    for p in rep.properties:
        mark = "PASS" if p.passed else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in sorted(p.stats.items()))
        lines.append(f"  {mark} {p.id}: {p.instances} instances, {p.cases} cases, "
                     f"{p.wall_time:.2f}s{extra}")
        if not p.passed:
            lines.append(f"       {p.counterexample['detail']}")
    lines.append("all properties pass" if rep.passed else "FAILURES found")
    return "\n".join(lines)
