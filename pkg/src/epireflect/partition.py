"""Set partitions stored as restricted growth strings.

A restricted growth string (RGS) ``a`` of length n has ``a[0] == 0`` and
``a[i] <= 1 + max(a[:i])``.  It is a canonical name for a partition: blocks
are numbered in order of their least element, so two equal equivalence
relations always produce identical strings and identical block lists.
"""
from functools import reduce
from itertools import combinations

from .errors import InvalidPartition


class Partition:
    __slots__ = ("labels", "_blocks")

    def __init__(self, labels):
        self.labels = _normalize(labels)
        self._blocks = None

    @classmethod
    def from_blocks(cls, blocks, n=None):
        blocks = [list(b) for b in blocks]
        if any(not b for b in blocks):
            raise InvalidPartition("empty block")
        points = [x for b in blocks for x in b]
        if n is None:
            n = len(points)
        if sorted(points) != list(range(n)):
            raise InvalidPartition(f"blocks {blocks} do not partition range({n})")
        labels = [0] * n
        for i, b in enumerate(blocks):
            for x in b:
                labels[x] = i
        return cls(labels)

    @classmethod
    def from_pairs(cls, n, pairs):
        """Smallest equivalence relation on range(n) containing ``pairs``."""
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x, y in pairs:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
        return cls([find(x) for x in range(n)])

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def total(cls, n):
        return cls([0] * n)

    @property
    def n(self):
        return len(self.labels)

    @property
    def blocks(self):
        if self._blocks is None:
            out = [[] for _ in range(self.num_blocks)]
            for x, b in enumerate(self.labels):
                out[b].append(x)
            self._blocks = tuple(tuple(b) for b in out)
        return self._blocks

    @property
    def num_blocks(self):
        return max(self.labels) + 1 if self.labels else 0

    def block_masks(self):
        masks = [0] * self.num_blocks
        for x, b in enumerate(self.labels):
            masks[b] |= 1 << x
        return masks

    def related(self, x, y):
        return self.labels[x] == self.labels[y]

    def pairs(self):
        return frozenset((x, y) for b in self.blocks for x in b for y in b)

    def is_identity(self):
        return self.num_blocks == self.n

    def refines(self, other):
        """True when every block of self lies inside a block of ``other``."""
        return all(other.labels[x] == other.labels[b[0]] for b in self.blocks for x in b)

    def meet(self, other):
        """Blockwise intersection (x ~ y in both)."""
        return Partition(zip(self.labels, other.labels))

    def join(self, other):
        pairs = [(b[0], x) for b in self.blocks + other.blocks for x in b[1:]]
        return Partition.from_pairs(self.n, pairs)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return self.num_blocks

    def __repr__(self):
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"Partition({inner})"


def _normalize(labels):
    seen = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


def meet_all(parts, n):
    """Intersection of a family of equivalence relations; total relation if empty."""
    return reduce(Partition.meet, parts, Partition.total(n))


def restricted_growth_strings(n, prefix=()):
    """All RGS of length n extending ``prefix``, in lexicographic order."""
    if n == 0:
        yield ()
        return
    a = list(prefix) or [0]
    if a[0] != 0:
        return
    top = max(a)
    yield from _rgs(a, top, n)


def _rgs(a, top, n):
    if len(a) == n:
        yield tuple(a)
        return
    for v in range(top + 2):
        a.append(v)
        yield from _rgs(a, max(top, v), n)
        a.pop()


def all_partitions(n):
    for rgs in restricted_growth_strings(n):
        yield Partition(rgs)


def bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def partitions_by_blocks(n):
    """Independent enumerator: recursively choose the block of the least unplaced point."""
    def rec(rest):
        if not rest:
            yield []
            return
        head, tail = rest[0], rest[1:]
        for k in range(len(tail) + 1):
            for mates in combinations(tail, k):
                remaining = [x for x in tail if x not in mates]
                for others in rec(remaining):
                    yield [(head,) + mates] + others

    for blocks in rec(list(range(n))):
        yield Partition.from_blocks(blocks, n)
