"""Separation axioms and epireflective classes of finite spaces.

Every predicate here is the point-set definition evaluated on the finite
space, not a shortcut through the known finite characterisations (T1 spaces
being discrete, regular spaces having clopen opens, ...).  Those facts are
checked in the test-suite instead.

Complete separation is decided with maps into the two-point discrete
space: a continuous real-valued function on a finite space has a finite,
hence discrete, image, so thresholding between the two target values yields
a continuous 0/1 map with the same separating behaviour.
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

from . import fintop
from .errors import UnknownAxiom
from .fintop import to_mask


def completely_separated(X, A, B):
    """True iff some continuous g: X -> D2 sends A to 0 and B to 1.

    Maps into D2 are indicator functions of clopen sets, and a set is clopen
    exactly when it is a union of connected components, so the answer is
    whether any component meets both A and B.
    """
    amask = A if isinstance(A, int) else to_mask(A)
    bmask = B if isinstance(B, int) else to_mask(B)
    for blk in X.components.block_masks():
        if blk & amask and blk & bmask:
            return False
    return True


def is_t0(X):
    return all(not X.leq(x, y) or not X.leq(y, x)
               for x, y in combinations(range(X.n), 2))


def is_t1(X):
    return all(X.is_closed(1 << x) for x in range(X.n))


def is_t2(X):
    # the min-open neighbourhoods are the smallest candidates for U and V
    mo = X.minopen
    return all(mo[x] & mo[y] == 0 for x, y in combinations(range(X.n), 2))


def is_urysohn(X):
    mo = X.minopen
    return all(X.closure(mo[x]) & X.closure(mo[y]) == 0
               for x, y in combinations(range(X.n), 2))


def is_functionally_hausdorff(X):
    return all(completely_separated(X, 1 << x, 1 << y)
               for x, y in combinations(range(X.n), 2))


def _hardest_closed(X, x):
    # the largest closed set missing x; the conditions below are monotone in F
    return X.full & ~X.minopen[x]


def is_regular(X):
    """Every closed F and point x outside it have disjoint open neighbourhoods."""
    return all(X.upset(_hardest_closed(X, x)) & X.minopen[x] == 0 for x in range(X.n))


def is_completely_regular(X):
    return all(completely_separated(X, _hardest_closed(X, x), 1 << x) for x in range(X.n))


def is_t35(X):
    return is_completely_regular(X) and is_t1(X)


@dataclass(frozen=True)
class CategorySpec:
    name: str
    membership: Callable = field(compare=False)
    closed_under_supertopologies: bool = False
    hereditary: bool = True
    productive: bool = True
    generators: Optional[tuple] = field(default=None, compare=False)
    t0_contained: bool = False

    def __call__(self, X):
        return self.membership(X)

    def __post_init__(self):
        for G in self.generators or ():
            if not self.membership(G):
                raise ValueError(f"generator {G} is not a member of {self.name}")


def _discretes(k):
    return tuple(fintop.discrete(i) for i in range(1, k + 1))


T0 = CategorySpec("T0", is_t0, True, generators=(fintop.sierpinski(),), t0_contained=True)
T1 = CategorySpec("T1", is_t1, True, generators=_discretes(4), t0_contained=True)
T2 = CategorySpec("T2", is_t2, True, t0_contained=True)
URYSOHN = CategorySpec("URYSOHN", is_urysohn, True, t0_contained=True)
FH = CategorySpec("FH", is_functionally_hausdorff, True, t0_contained=True)
REG = CategorySpec("REG", is_regular, False)
CREG = CategorySpec("CREG", is_completely_regular, False)
T35 = CategorySpec("T35", is_t35, False, t0_contained=True)

BUILTINS = {C.name: C for C in (T0, T1, T2, URYSOHN, FH, REG, CREG, T35)}

ALIASES = {
    "t0": "T0", "t1": "T1", "t2": "T2", "urysohn": "URYSOHN", "fh": "FH",
    "regular": "REG", "reg": "REG", "creg": "CREG", "t35": "T35", "t3.5": "T35",
}

# (larger, smaller): every member of `smaller` belongs to `larger`
_COVERS = [
    ("T0", "T1"), ("T1", "T2"), ("T2", "URYSOHN"), ("URYSOHN", "FH"),
    ("FH", "T35"), ("REG", "CREG"), ("CREG", "T35"),
]


def _nesting_table():
    names = list(BUILTINS)
    sup = {(a, a) for a in names}
    sup.update(_COVERS)
    changed = True
    while changed:
        changed = False
        for a, b in list(sup):
            for c, d in list(sup):
                if b == c and (a, d) not in sup:
                    sup.add((a, d))
                    changed = True
    return frozenset(sup)


NESTING = _nesting_table()


def get(name):
    if isinstance(name, CategorySpec):
        return name
    key = ALIASES.get(str(name).lower(), str(name).upper())
    try:
        return BUILTINS[key]
    except KeyError:
        raise UnknownAxiom(f"unknown axiom {name!r}") from None


def contains(larger, smaller):
    """Static nesting: every member of ``smaller`` is a member of ``larger``."""
    return (get(larger).name, get(smaller).name) in NESTING


def check_axiom(X, axiom):
    return bool(get(axiom).membership(X))


def generated_class(generators, name=None):
    """The epireflective class generated by a finite family of finite spaces.

    A finite Y belongs to it iff the continuous maps into the generators
    separate its points and induce its topology (Y embeds in a product of
    generators).
    """
    gens = tuple(generators)

    def member(Y):
        sep = [[False] * Y.n for _ in range(Y.n)]
        induced = [Y.full] * Y.n
        for G in gens:
            for f in fintop.enumerate_cmaps(Y, G):
                for y in range(Y.n):
                    induced[y] &= f.preimage(G.minopen[f.table[y]])
                for a, b in combinations(range(Y.n), 2):
                    if f.table[a] != f.table[b]:
                        sep[a][b] = True
        if not all(sep[a][b] for a, b in combinations(range(Y.n), 2)):
            return False
        return tuple(induced) == Y.minopen

    return CategorySpec(name or "C(" + ",".join(str(G.n) for G in gens) + ")",
                        member, False, generators=gens)


def closed_subsets(X):
    return [X.full & ~U for U in X.opens]
