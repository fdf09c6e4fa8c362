"""Finite topological spaces.

A finite space is Alexandrov: the intersection of all opens around a point
``x`` is itself open.  We store exactly that, one bitmask ``minopen[x]`` per
point, and derive everything else from it.  The specialization preorder is
``x <= y`` iff ``y`` lies in ``minopen[x]`` (every open containing ``x``
also contains ``y``); with this orientation continuous maps are precisely the
monotone ones and open sets are the up-sets.

Subsets of points are Python ints used as bitsets (bit ``i`` = point ``i``).
"""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product as iproduct

from . import config
from .errors import EmptySubset, InvalidPartition, NotATopology, SizeLimit
from .partition import Partition


def bits(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(points):
    m = 0
    for x in points:
        m |= 1 << x
    return m


def members(mask):
    return tuple(bits(mask))


def open_sort_key(mask):
    return (mask.bit_count(), members(mask))


@dataclass(frozen=True)
class FinSpace:
    n: int
    minopen: tuple
    labels: tuple = field(default=None, compare=False, repr=False)

    # -- constructors -------------------------------------------------
    @classmethod
    def from_minopen(cls, minopen, labels=None, check=True):
        minopen = tuple(minopen)
        if check:
            for x, m in enumerate(minopen):
                if not (m >> x) & 1:
                    raise NotATopology(f"min-open of {x} does not contain it")
                for y in bits(m):
                    if minopen[y] & ~m:
                        raise NotATopology(f"specialization not transitive at ({x},{y})")
        return cls(len(minopen), minopen, tuple(labels) if labels is not None else None)

    @classmethod
    def from_preorder(cls, leq, labels=None):
        n = len(leq)
        mo = [to_mask(y for y in range(n) if leq[x][y]) for x in range(n)]
        return cls.from_minopen(mo, labels)

    @cached_property
    def full(self):
        return (1 << self.n) - 1

    # -- derived structure --------------------------------------------
    def leq(self, x, y):
        """Specialization preorder: y belongs to every open set containing x."""
        return bool((self.minopen[x] >> y) & 1)

    @cached_property
    def closure_of_point(self):
        cl = [0] * self.n
        for x, m in enumerate(self.minopen):
            for y in bits(m):
                cl[y] |= 1 << x
        return tuple(cl)

    def is_open(self, mask):
        return all(self.minopen[x] & ~mask == 0 for x in bits(mask))

    def is_closed(self, mask):
        return self.is_open(self.full & ~mask)

    def upset(self, mask):
        """Smallest open set containing ``mask``."""
        out = 0
        for x in bits(mask):
            out |= self.minopen[x]
        return out

    def closure(self, mask):
        out = 0
        for x in bits(mask):
            out |= self.closure_of_point[x]
        return out

    def interior(self, mask):
        return to_mask(x for x in range(self.n) if self.minopen[x] & ~mask == 0)

    @cached_property
    def opens(self):
        """All open sets, sorted by size then lexicographically."""
        if self.n > 24:
            raise SizeLimit(f"listing the opens of a {self.n}-point space")
        found = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for s in frontier:
                for m in self.minopen:
                    t = s | m
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
            frontier = nxt
        return tuple(sorted(found, key=open_sort_key))

    def open_sets(self):
        return [members(m) for m in self.opens]

    @cached_property
    def components(self):
        """Connected components as a Partition (fibers of the finest map to a discrete space)."""
        pairs = [(x, y) for x in range(self.n) for y in bits(self.minopen[x])]
        return Partition.from_pairs(self.n, pairs)

    def label(self, x):
        return self.labels[x] if self.labels else str(x)

    def point_labels(self):
        return list(self.labels) if self.labels else [str(x) for x in range(self.n)]

    def relabel(self, perm):
        """Space whose point ``perm[x]`` plays the role of ``x``."""
        mo = [0] * self.n
        for x in range(self.n):
            mo[perm[x]] = to_mask(perm[y] for y in bits(self.minopen[x]))
        return FinSpace(self.n, tuple(mo))

    def __repr__(self):
        return f"FinSpace(n={self.n}, opens={self.open_sets() if self.n <= 6 else '...'})"


def new_space(n, opens, labels=None):
    """Validate a family of open sets and build the space."""
    config.guard(n, "construct_points", "space")
    fam = set()
    for U in opens:
        U = list(U)
        if any(not 0 <= x < n for x in U):
            raise NotATopology(f"open set {U} uses points outside 0..{n - 1}")
        fam.add(to_mask(U))
    full = (1 << n) - 1
    if 0 not in fam:
        raise NotATopology("empty set missing from opens", witness=())
    if full not in fam:
        raise NotATopology("full set missing from opens", witness=())
    ordered = sorted(fam, key=open_sort_key)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if a | b not in fam:
                raise NotATopology(
                    f"union of {list(members(a))} and {list(members(b))} is not open",
                    witness=(members(a), members(b)))
            if a & b not in fam:
                raise NotATopology(
                    f"intersection of {list(members(a))} and {list(members(b))} is not open",
                    witness=(members(a), members(b)))
    mo = []
    for x in range(n):
        m = full
        for U in fam:
            if (U >> x) & 1:
                m &= U
        mo.append(m)
    X = FinSpace(n, tuple(mo), tuple(labels) if labels is not None else None)
    X.__dict__["opens"] = tuple(ordered)
    return X


def discrete(n):
    return FinSpace(n, tuple(1 << x for x in range(n)))


def indiscrete(n):
    full = (1 << n) - 1
    return FinSpace(n, (full,) * n)


def sierpinski():
    """Points 0 and 1 with opens {}, {1}, {0,1}."""
    return FinSpace(2, (0b11, 0b10))


def point():
    return discrete(1)


def empty_space():
    return FinSpace(0, ())


def sum_space(spaces):
    """Disjoint union, points numbered factor by factor."""
    mo, off = [], 0
    for X in spaces:
        mo.extend(m << off for m in X.minopen)
        off += X.n
    return FinSpace(off, tuple(mo))


# -- maps ------------------------------------------------------------------

@dataclass(frozen=True)
class CMap:
    dom: FinSpace
    cod: FinSpace
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.dom.n:
            raise ValueError("table length differs from domain size")
        if any(not 0 <= v < self.cod.n for v in self.table):
            raise ValueError("table value outside codomain")

    def __call__(self, x):
        return self.table[x]

    def image(self, mask):
        return to_mask(self.table[x] for x in bits(mask))

    def preimage(self, mask):
        return to_mask(x for x, v in enumerate(self.table) if (mask >> v) & 1)

    def is_continuous(self):
        cod_mo = self.cod.minopen
        return all(self.image(m) & ~cod_mo[self.table[x]] == 0
                   for x, m in enumerate(self.dom.minopen))

    def is_open(self):
        return all(self.cod.is_open(self.image(m)) for m in self.dom.minopen)

    def is_injective(self):
        return len(set(self.table)) == len(self.table)

    def is_surjective(self):
        return len(set(self.table)) == self.cod.n

    def kernel(self):
        return Partition(self.table)

    def is_quotient(self):
        if not (self.is_surjective() and self.is_continuous()):
            return False
        Q, proj = quotient(self.dom, self.kernel())
        # proj and self have the same fibers; compare topologies through the bijection
        perm = [0] * Q.n
        for x, b in enumerate(proj.table):
            perm[b] = self.table[x]
        return Q.relabel(perm) == FinSpace(self.cod.n, self.cod.minopen)

    def compose(self, other):
        """``other`` after ``self``."""
        return CMap(self.dom, other.cod, tuple(other.table[v] for v in self.table))


def map_predicates(f):
    return {
        "continuous": f.is_continuous(),
        "open": f.is_open(),
        "quotient": f.is_quotient(),
        "injective": f.is_injective(),
        "surjective": f.is_surjective(),
    }


def continuous_by_preimages(f):
    """Definition-level check: the preimage of every open set is open."""
    return all(f.dom.is_open(f.preimage(V)) for V in f.cod.opens)


def induced_map(through, target):
    """The map g with g(through(x)) == target(x), or None if not well defined.

    ``through`` must be surjective; g's domain is ``through.cod``.
    """
    g = [None] * through.cod.n
    for x, b in enumerate(through.table):
        v = target.table[x]
        if g[b] is None:
            g[b] = v
        elif g[b] != v:
            return None
    if any(v is None for v in g):
        return None
    return CMap(through.cod, target.cod, g)


def is_homeomorphism(f):
    if not (f.is_injective() and f.is_surjective() and f.is_continuous()):
        return False
    inv = [0] * f.dom.n
    for x, v in enumerate(f.table):
        inv[v] = x
    return CMap(f.cod, f.dom, inv).is_continuous()


def is_embedding(f):
    """Injective, continuous, and a homeomorphism onto its image subspace."""
    if not (f.is_injective() and f.is_continuous()):
        return False
    img = f.image(f.dom.full)
    return all(f.image(m) == f.cod.minopen[f.table[x]] & img
               for x, m in enumerate(f.dom.minopen))


# -- constructions ------------------------------------------------------------

def _strides(sizes):
    strides, s = [], 1
    for k in reversed(sizes):
        strides.append(s)
        s *= k
    return list(reversed(strides)), s


def coords(index, sizes):
    out = []
    for k in reversed(sizes):
        out.append(index % k)
        index //= k
    return tuple(reversed(out))


def _box(masks, sizes):
    """Bitmask of the product of per-factor subsets, row-major order."""
    acc = 1
    for m, k in zip(masks, sizes):
        nxt = 0
        for i in range(acc.bit_length()):
            if (acc >> i) & 1:
                for j in bits(m):
                    nxt |= 1 << (i * k + j)
        acc = nxt
    return acc


def _check_product_size(spaces):
    if not spaces:
        raise ValueError("product of an empty list")
    total = 1
    for X in spaces:
        total *= X.n
    config.guard(total, "construct_points", "product")
    return total


def projections(P, spaces):
    sizes = [X.n for X in spaces]
    return [CMap(P, X, [coords(p, sizes)[i] for p in range(P.n)])
            for i, X in enumerate(spaces)]


def product(spaces):
    """Product space with its projections; leftmost factor varies slowest."""
    spaces = list(spaces)
    total = _check_product_size(spaces)
    sizes = [X.n for X in spaces]
    mo = []
    for p in range(total):
        c = coords(p, sizes)
        mo.append(_box([X.minopen[ci] for X, ci in zip(spaces, c)], sizes))
    P = FinSpace(total, tuple(mo))
    return P, projections(P, spaces)


def cross_product(spaces):
    """Product carrier with the cross topology (separate continuity)."""
    spaces = list(spaces)
    total = _check_product_size(spaces)
    sizes = [X.n for X in spaces]
    strides, _ = _strides(sizes)
    step = []
    for p in range(total):
        c = coords(p, sizes)
        m = 0
        for i, X in enumerate(spaces):
            base = p - c[i] * strides[i]
            for v in bits(X.minopen[c[i]]):
                m |= 1 << (base + v * strides[i])
        step.append(m)
    # smallest cross-open set around p: close {p} under single-coordinate moves
    mo = []
    for p in range(total):
        reach, frontier = 1 << p, 1 << p
        while frontier:
            new = 0
            for q in bits(frontier):
                new |= step[q]
            frontier = new & ~reach
            reach |= new
        mo.append(reach)
    return FinSpace(total, tuple(mo))


def subspace(X, A):
    A = sorted(set(A))
    if not A:
        raise EmptySubset("subspace of an empty subset")
    if any(not 0 <= a < X.n for a in A):
        raise ValueError(f"subset {A} outside 0..{X.n - 1}")
    index = {a: i for i, a in enumerate(A)}
    amask = to_mask(A)
    mo = [to_mask(index[y] for y in bits(X.minopen[a] & amask)) for a in A]
    labels = [X.labels[a] for a in A] if X.labels else None
    S = FinSpace(len(A), tuple(mo), tuple(labels) if labels else None)
    return S, CMap(S, X, A)


def _saturate(mask, block_of, block_masks):
    out = 0
    for x in bits(mask):
        out |= block_masks[block_of[x]]
    return out


def quotient(X, P):
    """Quotient space X/P with its projection; points are P's blocks in canonical order."""
    if not isinstance(P, Partition):
        P = Partition.from_blocks(P, X.n)
    if P.n != X.n:
        raise InvalidPartition(f"partition of {P.n} points applied to a {X.n}-point space")
    bm = P.block_masks()
    lab = P.labels
    mo = []
    for b in bm:
        s = b
        while True:
            t = _saturate(X.upset(s), lab, bm)
            if t == s:
                break
            s = t
        mo.append(to_mask({lab[x] for x in bits(s)}))
    labels = None
    if X.labels:
        labels = tuple("+".join(X.labels[x] for x in blk) for blk in P.blocks)
    Q = FinSpace(P.num_blocks, tuple(mo), labels)
    return Q, CMap(X, Q, lab)


# -- enumeration --------------------------------------------------------------

def enumerate_cmaps(X, Y):
    """Continuous maps X -> Y in lexicographic table order (monotone backtracking)."""
    config.guard(max(X.n, Y.n), "construct_points", "map enumeration")
    n = X.n
    if n == 0:
        yield CMap(X, Y, ())
        return
    # constraints against earlier points only
    before = [[(y, X.leq(x, y), X.leq(y, x)) for y in range(x)] for x in range(n)]
    table = [0] * n

    def rec(x):
        if x == n:
            yield CMap(X, Y, tuple(table))
            return
        cons = before[x]
        for v in range(Y.n):
            ok = True
            for y, xy, yx in cons:
                w = table[y]
                if (xy and not Y.leq(v, w)) or (yx and not Y.leq(w, v)):
                    ok = False
                    break
            if ok:
                table[x] = v
                yield from rec(x + 1)

    yield from rec(0)


def _close_with(family, s):
    """Lattice generated by a closed family plus one set: {a | (s & b)}."""
    return frozenset(a | (s & b) for a in family for b in family)


def enumerate_open_families(n):
    """All topologies on range(n) as sorted tuples of open masks.

    Each candidate subset is decided in increasing order (include / exclude);
    inclusion closes the family under union and intersection and any branch
    whose closure picks up an excluded set is cut, so every topology is reached
    along exactly one path.
    """
    config.guard(n, "enum_points", "topology enumeration")
    full = (1 << n) - 1
    start = frozenset({0, full})
    cands = [s for s in range(1, full)]
    out = []

    def rec(i, fam, excluded):
        while i < len(cands) and cands[i] in fam:
            i += 1
        if i == len(cands):
            out.append(tuple(sorted(fam, key=open_sort_key)))
            return
        s = cands[i]
        new = _close_with(fam, s)
        if not (new & excluded):
            rec(i + 1, new, excluded)
        rec(i + 1, fam, excluded | {s})

    rec(0, start, frozenset())
    out.sort(key=lambda fam: (len(fam), [members(m) for m in fam]))
    return out


def enumerate_topologies(n):
    for fam in enumerate_open_families(n):
        X = new_space(n, [members(m) for m in fam]) if n else FinSpace(0, ())
        yield X


def enumerate_preorders(n):
    """Reflexive transitive relations on range(n), as tuples of row bitmasks.

    Off-diagonal pairs are decided one at a time; a branch dies as soon as
    two decided pairs force a third that was decided absent.
    """
    config.guard(n, "enum_points", "preorder enumeration")
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    rel = [[i == j for j in range(n)] for i in range(n)]
    decided = [[i == j for j in range(n)] for i in range(n)]
    out = []

    def consistent(i, j):
        # check every triangle containing the newly decided pair (i, j)
        for k in range(n):
            if k == i or k == j:
                continue
            for a, b, c in ((i, j, k), (k, i, j), (i, k, j)):
                if decided[a][b] and decided[b][c] and decided[a][c]:
                    if rel[a][b] and rel[b][c] and not rel[a][c]:
                        return False
        return True

    def rec(k):
        if k == len(pairs):
            out.append(tuple(to_mask(j for j in range(n) if rel[i][j]) for i in range(n)))
            return
        i, j = pairs[k]
        decided[i][j] = True
        for val in (False, True):
            rel[i][j] = val
            if consistent(i, j):
                rec(k + 1)
        decided[i][j] = False
        rel[i][j] = False

    rec(0)
    return out


# -- homeomorphism --------------------------------------------------------

def _invariants(X):
    return [(X.minopen[x].bit_count(), X.closure_of_point[x].bit_count()) for x in range(X.n)]


def is_homeomorphic(X, Y):
    """A bijection table X -> Y preserving opens both ways, or None."""
    if X.n != Y.n:
        return None
    if sorted(_invariants(X)) != sorted(_invariants(Y)):
        return None
    ix, iy = _invariants(X), _invariants(Y)
    n = X.n
    table = [None] * n
    used = [False] * n

    def rec(x):
        if x == n:
            return True
        for v in range(n):
            if used[v] or iy[v] != ix[x]:
                continue
            if all(X.leq(x, y) == Y.leq(v, table[y]) and X.leq(y, x) == Y.leq(table[y], v)
                   for y in range(x)):
                table[x], used[v] = v, True
                if rec(x + 1):
                    return True
                used[v] = False
        table[x] = None
        return False

    return tuple(table) if rec(0) else None


def canonical_key(X):
    """Homeomorphism-invariant key: lexicographically least relabeled min-open tuple."""
    best = None
    for perm in permutations(range(X.n)):
        key = X.relabel(perm).minopen
        if best is None or key < best:
            best = key
    return best


_CLASS_CACHE = {}


def topology_classes(n):
    """One representative per homeomorphism class of n-point spaces."""
    if n not in _CLASS_CACHE:
        seen = {}
        for mo in enumerate_preorders(n):
            X = FinSpace(n, mo)
            key = canonical_key(X)
            if key not in seen:
                seen[key] = FinSpace(n, key)
        _CLASS_CACHE[n] = sorted(seen.values(), key=lambda S: S.minopen)
    return _CLASS_CACHE[n]


def all_maps(X, Y):
    """Every function X -> Y as a table (continuous or not); for brute-force checks."""
    return iproduct(range(Y.n), repeat=X.n)
