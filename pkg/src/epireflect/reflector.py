"""Reflection engines for epireflective classes of finite spaces.

Four interchangeable ways to compute the reflection arrow X -> r_C X:

``direct``      T0 (Kolmogorov quotient), T1 (closed-block partitions),
                T2 (iterated smallest closed equivalence).
``partitions``  intersect every equivalence R with X/R in C.  Needs C closed
                under supertopologies, so that the arrow is a quotient map.
``closed_rel``  quotient by the smallest closed equivalence until it becomes
                the diagonal, then finish with ``partitions``.  Valid for
                supertopology-closed classes inside T2, whose kernels are
                always closed in X x X.
``generated``   identify points no continuous map into a C-member separates and
                give the result the initial topology of those maps.  Works for
                every hereditary productive class; codomains are searched
                up to |X| points because the image of X is itself a member.

Every engine checks its target against the class before returning.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from . import axioms, config, fintop, mutants
from .axioms import CategorySpec
from .errors import (EmptySubset, MethodUnsupported, NotNested, NotT0Contained,
                     ReflectionNotInClass)
from .fintop import CMap, FinSpace, bits, to_mask
from .partition import Partition, all_partitions, meet_all

METHODS = ("auto", "direct", "partitions", "closed_rel", "generated")


@dataclass(frozen=True)
class Reflection:
    source: FinSpace
    target: FinSpace
    arrow: CMap
    method: str
    axiom: str
    iterations: int = field(default=0, compare=False)

    @property
    def kernel(self):
        return self.arrow.kernel()


@dataclass(frozen=True)
class ClosedRelation:
    base: FinSpace
    pairs: frozenset
    closed: bool = True
    equivalence: bool = True

    def partition(self):
        return Partition.from_pairs(self.base.n, self.pairs)


@dataclass(frozen=True)
class ProductComparison:
    factors: tuple
    axiom: str
    mu: CMap
    is_homeo: bool
    arrows_open: bool


@dataclass
class Verdict:
    ok: bool
    certificate: dict = None

    def __bool__(self):
        return self.ok


# -- class members ---------------------------------------------------------

def members_upto(C, k):
    """Homeomorphism representatives of C-members with 1..k points."""
    C = axioms.get(C) if not isinstance(C, CategorySpec) else C
    config.guard(k, "enum_points", "class member enumeration")
    if C.name in axioms.BUILTINS and C is axioms.BUILTINS[C.name]:
        return _builtin_members(C.name, k)
    return [Y for j in range(1, k + 1) for Y in fintop.topology_classes(j) if C(Y)]


@lru_cache(maxsize=None)
def _builtin_members(name, k):
    C = axioms.BUILTINS[name]
    return tuple(Y for j in range(1, k + 1) for Y in fintop.topology_classes(j) if C(Y))


# -- smallest closed equivalence ------------------------------------------

def _pair_closure(X, rel):
    mo = X.minopen
    out = set(rel)
    for x in range(X.n):
        for y in range(X.n):
            if (x, y) in out:
                continue
            if any((u, v) in rel for u in bits(mo[x]) for v in bits(mo[y])):
                out.add((x, y))
    return frozenset(out)


def _equivalence_closure(n, rel):
    return Partition.from_pairs(n, rel).pairs() | frozenset(rel)


def is_closed_relation(X, rel):
    return _pair_closure(X, rel) == frozenset(rel)


def smallest_closed_equivalence(X):
    """Least equivalence relation on X that is closed in the product X x X."""
    rel = frozenset((x, x) for x in range(X.n))
    skip = mutants.active("sce-skip-alternation")
    while True:
        # alternate: topological closure in X x X, then equivalence closure
        step = rel if skip else _pair_closure(X, rel)
        skip = False
        nxt = _equivalence_closure(X.n, step)
        if nxt == rel:
            break
        rel = nxt
    return ClosedRelation(X, rel, closed=is_closed_relation(X, rel))


# -- engines --------------------------------------------------------------

def _t0_partition(X):
    return Partition(X.minopen)


def _closed_blocks(X, P):
    return all(X.is_closed(m) for m in P.block_masks())


def _t1_partition(X):
    skip = mutants.active("t1-skip-closure")
    if X.n <= config.LIMITS.partition_points:
        kept = (P for P in all_partitions(X.n) if skip or _closed_blocks(X, P))
        return meet_all(kept, X.n)
    # too many partitions: grow blocks until each is closed (same fixpoint)
    P = Partition.identity(X.n)
    while not skip:
        pairs = [(b[0], y) for b, m in zip(P.blocks, P.block_masks())
                 for y in bits(X.closure(m))]
        Q = P.join(Partition.from_pairs(X.n, pairs))
        if Q == P:
            break
        P = Q
    return P


def _partitions_partition(X, C):
    config.guard(X.n, "partition_points", "partition enumeration")
    kept = (P for P in all_partitions(X.n) if C(fintop.quotient(X, P)[0]))
    return meet_all(kept, X.n)


def _iterate_closed(X):
    """Quotient by R_X repeatedly; returns the composite arrow and step count."""
    arrow = CMap(X, X, range(X.n))
    cur, steps = X, 0
    while True:
        R = smallest_closed_equivalence(cur).partition()
        if R.is_identity():
            return arrow, steps
        cur, proj = fintop.quotient(cur, R)
        arrow = arrow.compose(proj)
        steps += 1


def _generated(X, C):
    config.guard(X.n, "enum_points", "generated reflection")
    induced = [X.full] * X.n
    pairs = set(combinations(range(X.n), 2))
    for Y in members_upto(C, X.n):
        for f in fintop.enumerate_cmaps(X, Y):
            t = f.table
            for x in range(X.n):
                induced[x] &= f.preimage(Y.minopen[t[x]])
            pairs = {(a, b) for a, b in pairs if t[a] == t[b]}
    P = Partition.from_pairs(X.n, pairs)
    coarse = FinSpace(X.n, tuple(induced), X.labels)
    target, proj = fintop.quotient(coarse, P)
    return target, CMap(X, target, proj.table)


def _finish(X, P, C, method, steps=0):
    target, proj = fintop.quotient(X, P)
    return Reflection(X, target, proj, method, C.name, steps)


def _pick(C, method):
    if method != "auto":
        return method
    if C.name in ("T0", "T1", "T2") and C is axioms.BUILTINS[C.name]:
        return "direct"
    if not C.closed_under_supertopologies:
        return "generated"
    if C.name in axioms.BUILTINS and axioms.contains("T2", C.name):
        return "closed_rel"
    return "partitions"


def reflect(X, C, method="auto"):
    C = axioms.get(C) if not isinstance(C, CategorySpec) else C
    if method not in METHODS:
        raise MethodUnsupported(f"unknown method {method!r}")
    if C.name in axioms.BUILTINS and C is axioms.BUILTINS[C.name]:
        # labels are not part of space equality but do show up in the output;
        # limits are keyed so that a cached result never bypasses a size guard
        return _reflect_cached(X, X.labels, C.name, method, tuple(mutants.current()),
                               config.LIMITS)
    return _reflect(X, C, method)


@lru_cache(maxsize=200_000)
def _reflect_cached(X, _labels, name, method, _mutants, _limits):
    return _reflect(X, axioms.BUILTINS[name], method)


def _reflect(X, C, method):
    m = _pick(C, method)
    if m == "direct":
        if C.name == "T0":
            R = _finish(X, _t0_partition(X), C, m)
        elif C.name == "T1":
            R = _finish(X, _t1_partition(X), C, m)
        elif C.name == "T2":
            arrow, steps = _iterate_closed(X)
            R = _finish(X, arrow.kernel(), C, m, steps)
        else:
            raise MethodUnsupported(f"no direct engine for {C.name}")
    elif m == "partitions":
        if not C.closed_under_supertopologies:
            raise MethodUnsupported(f"{C.name} is not closed under supertopologies")
        R = _finish(X, _partitions_partition(X, C), C, m)
    elif m == "closed_rel":
        if not (C.closed_under_supertopologies and C.name in axioms.BUILTINS
                and axioms.contains("T2", C.name)):
            raise MethodUnsupported(f"closed_rel needs a supertopology-closed subclass of T2, got {C.name}")
        arrow, steps = _iterate_closed(X)
        Z = arrow.cod
        if not C(Z):
            arrow = arrow.compose(_finish(Z, _partitions_partition(Z, C), C, m).arrow)
        R = _finish(X, arrow.kernel(), C, m, steps)
    elif m == "generated":
        if not (C.hereditary and C.productive):
            raise MethodUnsupported(f"{C.name} is not hereditary and productive")
        target, arrow = _generated(X, C)
        R = Reflection(X, target, arrow, m, C.name)
    else:
        raise MethodUnsupported(m)
    if not C(R.target):
        raise ReflectionNotInClass(
            f"{m} engine produced a target outside {C.name}: {R.target}")
    return R


# -- comparisons ----------------------------------------------------------

def commuting_homeomorphism(a, b):
    """Homeomorphism h with h . a == b for two surjections out of one space, or None."""
    h = fintop.induced_map(a, b)
    if h is None or not fintop.is_homeomorphism(h):
        return None
    return h


def verify_universal_property(R, C, max_codomain=None):
    """Every continuous X -> Y (Y in C, |Y| <= bound) factors continuously through R."""
    C = axioms.get(C) if not isinstance(C, CategorySpec) else C
    X = R.source
    if not C(R.target):
        return Verdict(False, {"reason": "target not in class", "Y": None, "f": None})
    if not (R.arrow.is_continuous() and R.arrow.is_surjective()):
        return Verdict(False, {"reason": "arrow not a continuous surjection", "Y": None, "f": None})
    bound = X.n if max_codomain is None else max_codomain
    count = 0
    for Y in members_upto(C, bound):
        for f in fintop.enumerate_cmaps(X, Y):
            count += 1
            g = fintop.induced_map(R.arrow, f)
            if g is None:
                return Verdict(False, {"reason": "f does not factor", "Y": Y, "f": f.table})
            if not g.is_continuous():
                return Verdict(False, {"reason": "factor not continuous", "Y": Y, "f": f.table})
    return Verdict(True, {"maps_checked": count})


def compose_reflections_check(X, C1, C2):
    """Reflecting into C1 and then C2 realizes the C2-reflection (C2 inside C1)."""
    C1, C2 = axioms.get(C1), axioms.get(C2)
    if not axioms.contains(C1.name, C2.name):
        raise NotNested(f"{C2.name} is not contained in {C1.name}")
    r1 = reflect(X, C1)
    r12 = reflect(r1.target, C2)
    r2 = reflect(X, C2)
    return commuting_homeomorphism(r1.arrow.compose(r12.arrow), r2.arrow) is not None


def functor_map(f, C):
    """r_C(f): the map between reflections induced by continuous f."""
    rx, ry = reflect(f.dom, C), reflect(f.cod, C)
    g = fintop.induced_map(rx.arrow, f.compose(ry.arrow))
    if g is None:
        raise ReflectionNotInClass("reflected map is not well defined")
    return g


# -- C-open sets ----------------------------------------------------------

def _generated_opens(X, subbase):
    mo = []
    for x in range(X.n):
        m = X.full
        for S in subbase:
            if (S >> x) & 1:
                m &= S
        mo.append(m)
    return FinSpace(X.n, tuple(mo)).opens


def _oset_family(X, spaces):
    subbase = set()
    for Y in spaces:
        for f in fintop.enumerate_cmaps(X, Y):
            subbase.update(f.preimage(m) for m in Y.minopen)
    return _generated_opens(X, subbase)


def c_open_families(X, C):
    """The three descriptions of the C-open sets: osets, reflection preimages, generator osets."""
    C = axioms.get(C) if not isinstance(C, CategorySpec) else C
    config.guard(X.n, "enum_points", "C-open computation")
    fam = {"osets": _oset_family(X, members_upto(C, X.n)) if X.n else (0,)}
    R = reflect(X, C)
    fam["reflection"] = tuple(sorted({R.arrow.preimage(U) for U in R.target.opens},
                                     key=fintop.open_sort_key))
    if C.generators:
        fam["generators"] = _oset_family(X, C.generators) if X.n else (0,)
    return fam


def c_open_sets(X, C):
    R = reflect(X, C)
    return tuple(sorted({R.arrow.preimage(U) for U in R.target.opens}, key=fintop.open_sort_key))


def is_c_open(X, A, C):
    mask = A if isinstance(A, int) else to_mask(A)
    return mask in set(c_open_sets(X, C))


def le_subspace_check(X, C):
    fam = c_open_families(X, C)
    ref = set(fam["reflection"])
    return all(set(v) == ref for v in fam.values())


# -- products --------------------------------------------------------------

def product_preservation(Xs, C):
    C = axioms.get(C) if not isinstance(C, CategorySpec) else C
    Xs = list(Xs)
    P, _ = fintop.product(Xs)
    rP = reflect(P, C)
    rs = [reflect(X, C) for X in Xs]
    Q, _ = fintop.product([r.target for r in rs])
    sizes = [X.n for X in Xs]
    qsizes = [r.target.n for r in rs]
    qstrides, _ = fintop._strides(qsizes)
    table = []
    for p in range(P.n):
        c = fintop.coords(p, sizes)
        table.append(sum(r.arrow.table[ci] * s for r, ci, s in zip(rs, c, qstrides)))
    prod_arrow = CMap(P, Q, table)
    mu = fintop.induced_map(rP.arrow, prod_arrow)
    if mu is None:
        raise ReflectionNotInClass("comparison map is not well defined")
    arrows_open = rP.arrow.is_open() and all(r.arrow.is_open() for r in rs)
    return ProductComparison(tuple(Xs), C.name, mu, fintop.is_homeomorphism(mu), arrows_open)


# -- subspaces ------------------------------------------------------------

def _subspace_reflections(X, A, C):
    if not list(A):
        raise EmptySubset("empty subspace")
    S, incl = fintop.subspace(X, A)
    rA, rX = reflect(S, C), reflect(X, C)
    g = fintop.induced_map(rA.arrow, incl.compose(rX.arrow))
    if g is None or not g.is_continuous():
        raise ReflectionNotInClass("induced map between reflections is not continuous")
    return S, incl, rA, rX, g


def preserves_subspace(X, A, C):
    *_, g = _subspace_reflections(X, A, C)
    return g.is_injective() and fintop.is_embedding(g)


def pr_subspace_criterion(X, A, C):
    S, incl, rA, rX, _ = _subspace_reflections(X, A, C)
    pts = incl.table
    cond1 = all(rX.arrow.table[pts[i]] != rX.arrow.table[pts[j]]
                for i, j in combinations(range(S.n), 2)
                if rA.arrow.table[i] != rA.arrow.table[j])
    traces = set()
    for E in c_open_sets(X, C):
        traces.add(to_mask(i for i, a in enumerate(pts) if (E >> a) & 1))
    cond2 = all(F in traces for F in c_open_sets(S, C))
    return cond1, cond2


def is_t1_closed(X, A):
    mask = A if isinstance(A, int) else to_mask(A)
    return (X.full & ~mask) in set(c_open_sets(X, axioms.T1))


def _extend(X, Y, fixed):
    """Continuous g: X -> Y agreeing with ``fixed`` (dict point -> value), or None."""
    order = sorted(fixed) + [x for x in range(X.n) if x not in fixed]
    table = dict(fixed)
    for a in fixed:
        for b in fixed:
            if X.leq(a, b) and not Y.leq(fixed[a], fixed[b]):
                return None
    free = [x for x in order if x not in fixed]

    def ok(x, v):
        for y, w in table.items():
            if X.leq(x, y) and not Y.leq(v, w):
                return False
            if X.leq(y, x) and not Y.leq(w, v):
                return False
        return True

    def rec(i):
        if i == len(free):
            return True
        x = free[i]
        for v in range(Y.n):
            if ok(x, v):
                table[x] = v
                if rec(i + 1):
                    return True
                del table[x]
        return False

    return tuple(table[x] for x in range(X.n)) if rec(0) else None


@lru_cache(maxsize=None)
def _superspaces(Z, k, gens):
    """Labeled k-point spaces in C(gens) whose first |Z| points form the subspace Z."""
    C = axioms.generated_class(gens)
    zmask = (1 << Z.n) - 1
    out = []
    for mo in fintop.enumerate_preorders(k):
        if tuple(m & zmask for m in mo[:Z.n]) != Z.minopen:
            continue
        Y = FinSpace(k, mo)
        if C(Y):
            out.append(Y)
    return tuple(out)


def is_a_embedded(X, A, gens, bound=None):
    """Bounded search: every map A -> generator extends over X into a larger member.

    True is a certificate.  False only means no extension was found with
    codomains of at most ``bound`` points.
    """
    gens = tuple(gens)
    S, incl = fintop.subspace(X, A)
    if bound is None:
        bound = X.n + max(G.n for G in gens)
    outside = X.n - S.n
    for Z in gens:
        for f in fintop.enumerate_cmaps(S, Z):
            fixed = {incl.table[i]: f.table[i] for i in range(S.n)}
            found = False
            # the image of X plus Z already lies in the class, so |Y| <= |Z| + |X - A|
            for k in range(Z.n, min(bound, Z.n + outside) + 1):
                config.guard(k, "enum_points", "A-embedding search")
                for Y in _superspaces(Z, k, gens):
                    if _extend(X, Y, fixed) is not None:
                        found = True
                        break
                if found:
                    break
            if not found:
                return False
    return True


# -- coincidence ----------------------------------------------------------

def _nested_t0(C, E):
    C, E = axioms.get(C), axioms.get(E)
    if not (C.t0_contained and E.t0_contained):
        raise NotT0Contained(f"{C.name} and {E.name} must both consist of T0 spaces")
    if not axioms.contains(C.name, E.name):
        raise NotNested(f"{E.name} is not contained in {C.name}")
    return C, E


def coincide(X, C, E):
    C, E = _nested_t0(C, E)
    return commuting_homeomorphism(reflect(X, C).arrow, reflect(X, E).arrow) is not None


def coincide_criterion(X, C, E):
    C, E = _nested_t0(C, E)
    return set(c_open_sets(X, C)) <= set(c_open_sets(X, E))


def echi_lazaar(X):
    """Every T1-closed F is completely separated from every point outside it."""
    for U in c_open_sets(X, axioms.T1):
        F = X.full & ~U
        for x in bits(U):
            if not axioms.completely_separated(X, F, 1 << x):
                return False
    return True
