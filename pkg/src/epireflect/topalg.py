"""Topological and semitopological structures on finite spaces.

An n-ary operation is jointly continuous when it is continuous out of the
product space, and separately continuous when it is continuous out of the
cross topology.  Both are plain :class:`CMap` checks on the flattened table
(row-major, first argument slowest, as ``numpy.ravel`` does).
"""
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import axioms, config, fintop, reflector
from .errors import (KernelNotCongruence, MethodUnsupported, NotACongruence,
                     NotMaltsev, SignatureMismatch)
from .finalg import Structure, maltsev_signature, quotient_structure
from .fintop import CMap, FinSpace
from .partition import Partition, all_partitions

MODES = ("topological", "semitopological", "neither")


def op_map(space, table, cross=False):
    k = np.ndim(table)
    if k == 0:
        return None
    spaces = [space] * k
    dom = fintop.cross_product(spaces) if cross else fintop.product(spaces)[0]
    return CMap(dom, space, np.asarray(table).ravel().tolist())


def _mode_of_tables(space, tables):
    joint = all(op_map(space, t).is_continuous() for t in tables if np.ndim(t))
    if joint:
        return "topological"
    separate = all(op_map(space, t, cross=True).is_continuous() for t in tables if np.ndim(t))
    return "semitopological" if separate else "neither"


@dataclass
class TopStructure:
    alg: Structure
    space: FinSpace
    _mode: str = None

    def __post_init__(self):
        if self.alg.n != self.space.n:
            raise SignatureMismatch(
                f"carrier of size {self.alg.n} paired with a {self.space.n}-point space")

    @property
    def mode(self):
        if self._mode is None:
            self._mode = continuity_mode(self)
        return self._mode


def continuity_mode(T):
    return _mode_of_tables(T.space, [T.alg.tables[op] for op, _ in T.alg.sig.ops])


def induced_reflection_structure(T, C, check_products=True):
    """Structure carried by the C-reflection of T's space, with the arrow a homomorphism."""
    C = axioms.get(C) if not isinstance(C, axioms.CategorySpec) else C
    R = reflector.reflect(T.space, C)
    kernel = R.kernel
    try:
        V, _ = quotient_structure(T.alg, kernel)
    except NotACongruence:
        raise KernelNotCongruence(
            f"kernel {kernel} of the {C.name}-reflection is not a congruence") from None
    out = TopStructure(V, R.target)
    if T.mode != "neither" and out.mode == "neither":
        raise AssertionError("induced structure lost separate continuity")
    if check_products and T.mode == "topological":
        arities = {k for _, k in T.alg.sig.ops if k > 1}
        preserved = all(reflector.product_preservation([T.space] * k, C).is_homeo
                        for k in arities)
        if preserved and out.mode != "topological":
            raise AssertionError("products preserved but induced structure not topological")
    return out


def reflect_morphism_check(f, T, T2, C):
    """r_C(f) is a homomorphism between the induced structures."""
    f = CMap(T.space, T2.space, f)
    V = induced_reflection_structure(T, C, check_products=False)
    W = induced_reflection_structure(T2, C, check_products=False)
    g = reflector.functor_map(f, C)
    from .finalg import is_homomorphism
    return is_homomorphism(g.table, V.alg, W.alg)


# -- Mal'tsev -----------------------------------------------------------------

@dataclass
class MaltsevWitness:
    space: FinSpace
    phi: np.ndarray
    mode: str

    def structure(self):
        return Structure(maltsev_signature(), self.space.n, {}, {"phi": self.phi}, check=False)


def maltsev_identity_failure(phi):
    n = phi.shape[0]
    for x in range(n):
        for y in range(n):
            if phi[x, x, y] != y:
                return (x, y, "phi(x,x,y)")
            if phi[y, x, x] != y:
                return (x, y, "phi(y,x,x)")
    return None


def is_maltsev(space, phi):
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (space.n,) * 3:
        raise NotMaltsev(f"phi has shape {phi.shape}, expected {(space.n,) * 3}")
    bad = maltsev_identity_failure(phi)
    if bad is not None:
        raise NotMaltsev(f"{bad[2]} != y at x={bad[0]}, y={bad[1]}", witness=bad[:2])
    mode = _mode_of_tables(space, [phi])
    if mode == "neither":
        raise NotMaltsev("phi is not separately continuous")
    return MaltsevWitness(space, phi, mode)


def maltsev_quotient_open(W, P):
    if not isinstance(P, Partition):
        P = Partition.from_blocks(P, W.space.n)
    from .finalg import op_respects
    if not op_respects(W.phi, P):
        raise NotACongruence(f"{P} is not a phi-congruence")
    return fintop.quotient(W.space, P)[1].is_open()


def maltsev_reflection_open(W, C):
    C = axioms.get(C)
    if not C.closed_under_supertopologies:
        raise MethodUnsupported(f"{C.name} is not closed under supertopologies")
    return reflector.reflect(W.space, C).arrow.is_open()


# -- exhaustive Mal'tsev tables ------------------------------------------------

_FREE_CACHE = {}


def _maltsev_candidates(n):
    """All tables satisfying the Mal'tsev identities, shape (N, n**3)."""
    if n not in _FREE_CACHE:
        cells = list(product(range(n), repeat=3))
        forced = {}
        for x, y, z in cells:
            if x == y:
                forced[(x, y, z)] = z
            elif y == z:
                forced[(x, y, z)] = x
        free = [c for c in cells if c not in forced]
        grid = np.array(list(product(range(n), repeat=len(free))), dtype=np.int8)
        grid = grid.reshape(n ** len(free), len(free))
        out = np.empty((grid.shape[0], len(cells)), dtype=np.int8)
        for i, c in enumerate(cells):
            if c in forced:
                out[:, i] = forced[c]
        out[:, [cells.index(c) for c in free]] = grid
        _FREE_CACHE[n] = out
    return _FREE_CACHE[n]


def _slice_edges(space, k=3):
    """Cell pairs (a, b) that differ in one coordinate with a's entry below b's."""
    n = space.n
    edges = []
    for cell in product(range(n), repeat=k):
        a = np.ravel_multi_index(cell, (n,) * k) if n else 0
        for i in range(k):
            for v in fintop.bits(space.minopen[cell[i]]):
                if v != cell[i]:
                    other = cell[:i] + (v,) + cell[i + 1:]
                    edges.append((a, np.ravel_multi_index(other, (n,) * k)))
    return edges


def _leq_matrix(space):
    return np.array([[space.leq(x, y) for y in range(space.n)] for x in range(space.n)], dtype=bool)


def monotone_filter(space, tables, k=3):
    """Rows of ``tables`` that are separately continuous k-ary operations on space."""
    leq = _leq_matrix(space)
    keep = np.ones(len(tables), dtype=bool)
    for a, b in _slice_edges(space, k):
        keep &= leq[tables[:, a], tables[:, b]]
    return tables[keep]


def maltsev_tables(space):
    """Every separately continuous Mal'tsev operation on space, as flattened rows."""
    config.guard(space.n, "enum_points", "Mal'tsev table sweep")
    if space.n > 3:
        raise config.SizeLimit("exhaustive Mal'tsev tables are limited to 3 points")
    if space.n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return monotone_filter(space, _maltsev_candidates(space.n))


def congruence_mask(tables, P, n, k=3):
    """For each row, whether P is compatible with that k-ary operation."""
    lab = np.asarray(P.labels, dtype=np.int8)
    L = lab[tables]
    keep = np.ones(len(tables), dtype=bool)
    # compare each cell with the cell whose coordinates are the block representatives
    reps = [b[0] for b in P.blocks]
    for cell in product(range(n), repeat=k):
        rep = tuple(reps[P.labels[c]] for c in cell)
        if rep != cell:
            a = np.ravel_multi_index(cell, (n,) * k)
            b = np.ravel_multi_index(rep, (n,) * k)
            keep &= L[:, a] == L[:, b]
    return keep


# -- groups ------------------------------------------------------------------

def _require_group(T):
    names = {op for op, _ in T.alg.sig.ops}
    if names != {"mul", "inv"} or tuple(T.alg.sig.constants) != ("e",):
        raise SignatureMismatch("group signature (mul/2, inv/1, e/0) required")


def group_predicates(T):
    _require_group(T)
    mul = T.alg.tables["mul"]
    X = T.space
    n = X.n
    left = all(CMap(X, X, mul[a, :].tolist()).is_continuous() for a in range(n))
    right = all(CMap(X, X, mul[:, a].tolist()).is_continuous() for a in range(n))
    topo = (op_map(X, mul).is_continuous()
            and CMap(X, X, T.alg.tables["inv"].tolist()).is_continuous())
    return {"left_topological": left, "right_topological": right,
            "semitopological": left and right, "topological": topo}


def subgroups(alg):
    """All subgroups as bitmasks, by closing generator subsets under mul and inv."""
    mul, inv, e = alg.tables["mul"], alg.tables["inv"], alg.const_values["e"]
    n = alg.n
    found = set()

    def close(mask):
        mask |= 1 << e
        while True:
            els = list(fintop.bits(mask))
            new = mask
            for a in els:
                new |= 1 << int(inv[a])
                for b in els:
                    new |= 1 << int(mul[a, b])
            if new == mask:
                return mask
            mask = new

    frontier = [close(0)]
    found.add(frontier[0])
    while frontier:
        nxt = []
        for H in frontier:
            for g in range(n):
                if not (H >> g) & 1:
                    K = close(H | (1 << g))
                    if K not in found:
                        found.add(K)
                        nxt.append(K)
        frontier = nxt
    return sorted(found, key=fintop.open_sort_key)


def smallest_closed_subgroup(T):
    _require_group(T)
    preds = group_predicates(T)
    if not (preds["left_topological"] or preds["right_topological"]):
        raise SignatureMismatch("group is neither left nor right topological")
    H = T.space.full
    for K in subgroups(T.alg):
        if T.space.is_closed(K):
            H &= K
    if H not in subgroups(T.alg) or not T.space.is_closed(H):
        raise AssertionError("intersection of closed subgroups is not a closed subgroup")
    return fintop.members(H)


def coset_partition(alg, H):
    mul = alg.tables["mul"]
    return Partition([min(int(mul[g, h]) for h in H) for g in range(alg.n)])


def t1_reflection_group(T):
    """G/H for H the smallest closed subgroup, with the quotient topology."""
    H = smallest_closed_subgroup(T)
    P = coset_partition(T.alg, H)
    V, _ = quotient_structure(T.alg, P)
    Q, _ = fintop.quotient(T.space, P)
    return TopStructure(V, Q)


def same_topstructure(A, B):
    """Equal up to a bijection that is both a homeomorphism and an isomorphism."""
    if A.alg.n != B.alg.n:
        return False
    from itertools import permutations
    from .finalg import is_homomorphism
    for perm in permutations(range(A.alg.n)):
        f = CMap(A.space, B.space, perm)
        if fintop.is_homeomorphism(f) and is_homomorphism(perm, A.alg, B.alg):
            return True
    return False


def _quotient_rows(tables, P, n, k=3):
    """Rows of induced operations on the blocks of P (P must be compatible)."""
    lab = np.asarray(P.labels, dtype=np.int8)
    reps = [b[0] for b in P.blocks]
    m = P.num_blocks
    cols = [np.ravel_multi_index(tuple(reps[i] for i in cell), (n,) * k)
            for cell in product(range(m), repeat=k)]
    return lab[tables[:, cols]]


def maltsev_sweep(space, classes=("T0", "T1", "T2", "URYSOHN", "FH")):
    """Check the Mal'tsev openness and continuity claims for every table on space.

    Returns a dict with the number of tables and, per claim, the number of
    (table, parameter) instances checked and the first failing table if any.
    """
    tables = maltsev_tables(space)
    n = space.n
    out = {"tables": int(len(tables)), "quotient_open": [0, None],
           "reflection_open": [0, None], "induced_joint": [0, None],
           "kernel_congruence": [0, None]}
    if not len(tables):
        return out
    for P in all_partitions(n):
        cm = congruence_mask(tables, P, n)
        hits = int(cm.sum())
        out["quotient_open"][0] += hits
        if hits and out["quotient_open"][1] is None:
            if not fintop.quotient(space, P)[1].is_open():
                out["quotient_open"][1] = {"table": tables[cm][0].tolist(), "partition": P.blocks}
    for name in classes:
        C = axioms.get(name)
        R = reflector.reflect(space, C)
        out["reflection_open"][0] += len(tables)
        if not R.arrow.is_open() and out["reflection_open"][1] is None:
            out["reflection_open"][1] = {"table": tables[0].tolist(), "axiom": C.name}
        K = R.kernel
        cm = congruence_mask(tables, K, n)
        out["kernel_congruence"][0] += len(tables)
        if not cm.all() and out["kernel_congruence"][1] is None:
            out["kernel_congruence"][1] = {"table": tables[~cm][0].tolist(), "axiom": C.name}
        good = tables[cm]
        if not len(good):
            continue
        # reorder target points to match the kernel's block order
        Q, _ = fintop.quotient(space, K)
        rows = _quotient_rows(good, K, n)
        ok = np.ones(len(rows), dtype=bool)
        leq = _leq_matrix(Q)
        for a, b in _slice_edges(Q):
            ok &= leq[rows[:, a], rows[:, b]]
        out["induced_joint"][0] += len(rows)
        if not ok.all() and out["induced_joint"][1] is None:
            out["induced_joint"][1] = {"table": good[~ok][0].tolist(), "axiom": C.name}
    return out
