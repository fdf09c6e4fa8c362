"""Finite universal algebra: signatures, structures, congruences, quotients.

Operation tables are numpy arrays of shape ``(n,) * arity`` so that an
equation can be checked over every assignment at once by broadcasting.
Equations are written in prefix form, ``mul(mul(x,y),z)=mul(x,mul(y,z))``,
with single-letter variables, and parsed with :mod:`ast`.
"""
import ast
from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np

from . import config, mutants
from .errors import (DocumentError, InvalidPartition, NotACongruence,
                     NotAHomomorphism, SignatureMismatch, UnboundVariable)
from .partition import Partition, all_partitions


# -- terms ---------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    op: str
    args: tuple

    def __str__(self):
        return f"{self.op}({','.join(map(str, self.args))})"


def term_vars(t):
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        return set().union(*(term_vars(a) for a in t.args))
    return set()


def _from_ast(node, constants, arities):
    if isinstance(node, ast.Name):
        if node.id in constants:
            return Const(node.id)
        if len(node.id) == 1:
            return Var(node.id)
        raise DocumentError(f"unknown symbol {node.id!r}")
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        op = node.func.id
        if op not in arities:
            raise DocumentError(f"unknown operation {op!r}")
        if arities[op] != len(node.args):
            raise DocumentError(f"{op} expects {arities[op]} arguments, got {len(node.args)}")
        return App(op, tuple(_from_ast(a, constants, arities) for a in node.args))
    raise DocumentError(f"cannot parse term near {ast.dump(node)}")


def parse_term(text, sig):
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise DocumentError(f"bad term {text!r}: {exc.msg}") from None
    return _from_ast(tree.body, set(sig.constants), dict(sig.ops))


# -- signatures and structures ------------------------------------------------

@dataclass(frozen=True)
class Signature:
    constants: tuple = ()
    ops: tuple = ()
    equations: tuple = ()   # source strings "lhs=rhs"
    parsed: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "constants", tuple(self.constants))
        object.__setattr__(self, "ops", tuple((str(o), int(a)) for o, a in self.ops))
        object.__setattr__(self, "equations", tuple(self.equations))
        names = list(self.constants) + [o for o, _ in self.ops]
        if len(names) != len(set(names)):
            raise DocumentError(f"duplicate symbol names in {names}")
        if any(a < 1 for _, a in self.ops):
            raise DocumentError("operation arities must be >= 1")
        parsed = []
        for eq in self.equations:
            if eq.count("=") != 1:
                raise DocumentError(f"equation {eq!r} needs exactly one '='")
            lhs, rhs = eq.split("=")
            parsed.append((parse_term(lhs, self), parse_term(rhs, self)))
        object.__setattr__(self, "parsed", tuple(parsed))

    def arity(self, op):
        return dict(self.ops)[op]


GROUP_EQUATIONS = (
    "mul(mul(x,y),z)=mul(x,mul(y,z))",
    "mul(e,x)=x",
    "mul(x,e)=x",
    "mul(x,inv(x))=e",
    "mul(inv(x),x)=e",
)


def group_signature():
    return Signature(("e",), (("mul", 2), ("inv", 1)), GROUP_EQUATIONS)


def maltsev_signature():
    return Signature((), (("phi", 3),), ("phi(x,x,y)=y", "phi(y,x,x)=y"))


class Structure:
    def __init__(self, sig, n, const_values, tables, check=True):
        self.sig = sig
        self.n = int(n)
        self.const_values = {c: int(const_values[c]) for c in sig.constants}
        self.tables = {}
        for op, k in sig.ops:
            t = np.asarray(tables[op], dtype=np.int64)
            if t.shape != (self.n,) * k:
                raise DocumentError(f"table of {op} has shape {t.shape}, expected {(self.n,) * k}")
            if t.size and (t.min() < 0 or t.max() >= self.n):
                raise DocumentError(f"table of {op} has entries outside the carrier")
            t.setflags(write=False)
            self.tables[op] = t
        if any(not 0 <= v < self.n for v in self.const_values.values()):
            raise DocumentError("constant outside the carrier")
        if check:
            bad = check_equations(self)
            if bad is not None:
                raise DocumentError(f"equation {bad[0]} fails at {bad[1]}")

    def __eq__(self, other):
        return (isinstance(other, Structure) and self.sig == other.sig and self.n == other.n
                and self.const_values == other.const_values
                and all(np.array_equal(self.tables[o], other.tables[o]) for o, _ in self.sig.ops))

    def __hash__(self):
        return hash((self.n, tuple(self.tables[o].tobytes() for o, _ in self.sig.ops)))

    def __repr__(self):
        return f"Structure(n={self.n}, constants={self.const_values})"

    def relabel(self, perm):
        """Isomorphic copy in which element x is renamed perm[x]."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        tables = {}
        for op, k in self.sig.ops:
            t = self.tables[op]
            idx = np.ix_(*[inv] * k)
            tables[op] = perm[t[idx]]
        consts = {c: int(perm[v]) for c, v in self.const_values.items()}
        return Structure(self.sig, self.n, consts, tables, check=False)


def eval_term(U, t, env):
    if isinstance(t, Var):
        if t.name not in env:
            raise UnboundVariable(f"variable {t.name} is unbound")
        return int(env[t.name])
    if isinstance(t, Const):
        return U.const_values[t.name]
    return int(U.tables[t.op][tuple(eval_term(U, a, env) for a in t.args)])


def _eval_grid(U, t, names):
    """Value of t at every assignment, as an array of shape (n,) * len(names)."""
    shape = (U.n,) * len(names)
    if isinstance(t, Var):
        ax = names.index(t.name)
        view = [1] * len(names)
        view[ax] = U.n
        return np.broadcast_to(np.arange(U.n).reshape(view), shape)
    if isinstance(t, Const):
        return np.full(shape, U.const_values[t.name])
    return U.tables[t.op][tuple(_eval_grid(U, a, names) for a in t.args)]


def check_equations(U):
    """First failing (equation, assignment) pair, or None if every equation holds."""
    if U.n == 0:
        return None
    for text, (lhs, rhs) in zip(U.sig.equations, U.sig.parsed):
        names = sorted(term_vars(lhs) | term_vars(rhs))
        diff = _eval_grid(U, lhs, names) != _eval_grid(U, rhs, names)
        if np.any(diff):
            where = np.argwhere(diff)[0] if names else ()
            return text, {v: int(i) for v, i in zip(names, where)}
    return None


def satisfies(U):
    return check_equations(U) is None


def is_homomorphism(f, U, V):
    if U.sig != V.sig:
        raise SignatureMismatch("structures have different signatures")
    f = np.asarray(f)
    if any(f[U.const_values[c]] != V.const_values[c] for c in U.sig.constants):
        return False
    for op, k in U.sig.ops:
        lhs = f[U.tables[op]]
        rhs = V.tables[op][np.ix_(*[f] * k)]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def _as_partition(U, P):
    if not isinstance(P, Partition):
        P = Partition.from_blocks(P, U.n)
    if P.n != U.n:
        raise InvalidPartition(f"partition of {P.n} points for a carrier of {U.n}")
    return P


def op_respects(table, P):
    """Whether an operation table is compatible with the partition P."""
    lab = np.asarray(P.labels)
    k = table.ndim
    if k == 0 or table.size == 0:
        return True
    out = lab[table]
    blocks = [np.asarray(b) for b in P.blocks]
    for combo in product(blocks, repeat=k):
        cell = out[np.ix_(*combo)]
        if cell.min() != cell.max():
            return False
    return True


def congruence_report(U, P):
    """Per-operation compatibility: op name -> bool."""
    P = _as_partition(U, P)
    return {op: op_respects(U.tables[op], P) for op, _ in U.sig.ops}


def is_congruence(U, P):
    return all(congruence_report(U, P).values())


def quotient_structure(U, P):
    """U/P and the projection table (element -> block index)."""
    P = _as_partition(U, P)
    if not mutants.active("quotient-skip-congruence") and not is_congruence(U, P):
        raise NotACongruence(f"{P} is not a congruence")
    lab = np.asarray(P.labels)
    reps = np.asarray([b[0] for b in P.blocks])
    tables = {op: lab[U.tables[op][np.ix_(*[reps] * k)]] for op, k in U.sig.ops}
    consts = {c: int(lab[v]) for c, v in U.const_values.items()}
    V = Structure(U.sig, P.num_blocks, consts, tables, check=False)
    if not mutants.active("quotient-skip-congruence"):
        bad = check_equations(V)
        if bad is not None:
            raise AssertionError(f"quotient violates {bad}")
    return V, tuple(P.labels)


def all_congruences(U):
    config.guard(U.n, "carrier", "congruence scan")
    return [P for P in all_partitions(U.n) if is_congruence(U, P)]


def congruence_generated(U, pairs):
    """Least congruence containing ``pairs``: merge blocks until every op is compatible."""
    P = Partition.from_pairs(U.n, pairs)
    while True:
        forced = []
        for op, k in U.sig.ops:
            t = U.tables[op]
            lab = P.labels
            for i in range(k):
                # vary one argument inside a block, hold the rest fixed
                for blk in P.blocks:
                    a = blk[0]
                    for b in blk[1:]:
                        for rest in product(range(U.n), repeat=k - 1):
                            x = rest[:i] + (a,) + rest[i:]
                            y = rest[:i] + (b,) + rest[i:]
                            if lab[t[x]] != lab[t[y]]:
                                forced.append((int(t[x]), int(t[y])))
        if not forced:
            return P
        P = P.join(Partition.from_pairs(U.n, forced))


def first_isomorphism(f, U, V):
    """Kernel of a homomorphism and the injective map it induces on U/kernel."""
    if not is_homomorphism(f, U, V):
        raise NotAHomomorphism("map is not a homomorphism")
    kernel = Partition(list(f))
    if not is_congruence(U, kernel):
        raise AssertionError("kernel of a homomorphism must be a congruence")
    ftilde = tuple(int(f[b[0]]) for b in kernel.blocks)
    return kernel, ftilde


def homomorphisms(U, V):
    for f in product(range(V.n), repeat=U.n):
        if is_homomorphism(f, U, V):
            yield f


# -- groups ----------------------------------------------------------------------

def group_from_mul(mul, check=True):
    mul = np.asarray(mul, dtype=np.int64)
    n = mul.shape[0]
    e = next(a for a in range(n) if all(mul[a, x] == x and mul[x, a] == x for x in range(n)))
    inv = [next(y for y in range(n) if mul[x, y] == e) for x in range(n)]
    return Structure(group_signature(), n, {"e": e}, {"mul": mul, "inv": inv}, check=check)


def cyclic_group(n):
    a = np.arange(n)
    return group_from_mul((a[:, None] + a[None, :]) % n)


def klein_group():
    a = np.arange(4)
    return group_from_mul(a[:, None] ^ a[None, :])


def symmetric_group3():
    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return group_from_mul(mul)


def trivial_group():
    return cyclic_group(1)


def groups_upto_iso(max_order):
    """Representatives of every group of order <= max_order (max 7)."""
    if max_order > 7:
        raise ValueError("group catalogue stops at order 7")
    out = []
    for n in range(1, max_order + 1):
        out.append(cyclic_group(n))
        if n == 4:
            out.append(klein_group())
        if n == 6:
            out.append(symmetric_group3())
    return out


def labeled_groups(n):
    """Every group structure on the carrier range(n), n <= 4."""
    if n > 4:
        raise ValueError("labeled enumeration is limited to order 4")
    seen = {}
    for G in groups_upto_iso(n):
        if G.n != n:
            continue
        for perm in permutations(range(n)):
            H = G.relabel(perm)
            seen.setdefault((H.const_values["e"], H.tables["mul"].tobytes()), H)
    return list(seen.values())
