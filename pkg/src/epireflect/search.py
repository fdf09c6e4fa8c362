"""Exhaustive hunts for finite counterexamples.

Each target returns a list of findings (JSON-shaped dicts holding the
documents needed to re-run the corresponding CLI command) plus a summary
of what was covered.
"""
from itertools import combinations, product

import numpy as np

from . import axioms, config, fintop, reflector, topalg
from .documents import space_to_doc
from .errors import SizeLimit

TARGETS = ("separate-not-joint", "t1-product-failure", "subspace-failure")

# binary tables are enumerated outright up to this many points
TABLE_POINTS = 3


def _spaces(n, labeled):
    return fintop.enumerate_topologies(n) if labeled else fintop.topology_classes(n)


def _all_binary_tables(n):
    return np.array(list(product(range(n), repeat=n * n)), dtype=np.int8).reshape(-1, n * n)


def _joint_filter(X, tables, k):
    P, _ = fintop.product([X] * k)
    leq = topalg._leq_matrix(X)
    keep = np.ones(len(tables), dtype=bool)
    for a in range(P.n):
        for b in fintop.bits(P.minopen[a]):
            if a != b:
                keep &= leq[tables[:, a], tables[:, b]]
    return keep


def separate_not_joint(max_points):
    """Operations continuous in each argument but not jointly.

    Binary tables are enumerated for spaces up to TABLE_POINTS points.  For
    every space up to ``max_points`` the cross and product topologies on the
    square and cube are also compared: when they agree, no operation of that
    arity can separate the two notions.
    """
    findings, summary = [], {"tables": 0, "spaces": 0}
    for n in range(max_points + 1):
        for X in _spaces(n, labeled=n <= 3):
            summary["spaces"] += 1
            for k in (2, 3):
                if n ** k > config.LIMITS.construct_points * 2:
                    continue
                cross = fintop.cross_product([X] * k)
                prod, _ = fintop.product([X] * k)
                if cross.minopen != prod.minopen:
                    findings.append({"target": "separate-not-joint", "space": space_to_doc(X),
                                     "arity": k, "reason": "cross and product topologies differ"})
            if 0 < n <= TABLE_POINTS:
                tables = topalg.monotone_filter(X, _all_binary_tables(n), k=2)
                summary["tables"] += len(tables)
                bad = ~_joint_filter(X, tables, 2)
                for row in tables[bad][:1]:
                    findings.append({"target": "separate-not-joint", "space": space_to_doc(X),
                                     "table": row.reshape(n, n).tolist()})
    return findings, summary


def t1_product_failure(max_points):
    """Pairs of spaces whose T1 reflection does not preserve their product."""
    findings, summary = [], {"pairs": 0}
    reps = [X for n in range(max_points + 1) for X in fintop.topology_classes(n)]
    for i, X in enumerate(reps):
        for Y in reps[i:]:
            summary["pairs"] += 1
            if not reflector.product_preservation([X, Y], axioms.T1).is_homeo:
                findings.append({"target": "t1-product-failure", "factors":
                                 [space_to_doc(X), space_to_doc(Y)], "axiom": "T1"})
    return findings, summary


def subspace_failure(max_points, axiom_names=None):
    """Subspaces whose reflection is not a subspace of the reflection."""
    names = axiom_names or list(axioms.BUILTINS)
    findings, summary = [], {"instances": 0}
    for n in range(1, max_points + 1):
        for X in fintop.enumerate_topologies(n):
            for r in range(1, n + 1):
                for A in combinations(range(n), r):
                    for name in names:
                        summary["instances"] += 1
                        if not reflector.preserves_subspace(X, A, name):
                            findings.append({"target": "subspace-failure",
                                             "space": space_to_doc(X), "subset": list(A),
                                             "axiom": axioms.get(name).name})
    return findings, summary


def run(target, max_points, axiom_names=None):
    if max_points > 5:
        raise SizeLimit(f"search is limited to 5 points, got {max_points}")
    config.guard(max_points, "enum_points", "search")
    if target == "separate-not-joint":
        return separate_not_joint(max_points)
    if target == "t1-product-failure":
        return t1_product_failure(max_points)
    if target == "subspace-failure":
        return subspace_failure(max_points, axiom_names)
    raise ValueError(f"unknown search target {target!r}")
