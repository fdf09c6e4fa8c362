"""JSON documents for spaces, maps, algebras and structures.

Nested documents may be given inline or as a path (relative paths resolve
against the directory of the enclosing file).  Every ``*_to_doc`` output
parses back with the matching ``*_from_doc`` to an equal value.
"""
import json
import os
from pathlib import Path

import numpy as np

from . import fintop
from .errors import DocumentError
from .finalg import Signature, Structure
from .fintop import CMap

FIXTURES = Path(__file__).parent / "fixtures"


def read_json(path):
    path = Path(path)
    if not path.exists() and not path.is_absolute() and (FIXTURES / path).exists():
        path = FIXTURES / path
    try:
        with open(path) as fh:
            return json.load(fh), path.parent
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _resolve(obj, base):
    if isinstance(obj, (str, os.PathLike)):
        p = Path(obj)
        if base is not None and not p.is_absolute() and (Path(base) / p).exists():
            p = Path(base) / p
        return read_json(p)
    return obj, base


def _require(doc, keys, what):
    if not isinstance(doc, dict):
        raise DocumentError(f"{what} document must be a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise DocumentError(f"{what} document lacks {', '.join(missing)}")


def _int_list(xs, what):
    try:
        out = [int(x) for x in xs]
    except (TypeError, ValueError):
        raise DocumentError(f"{what} must be a list of integers") from None
    if any(isinstance(x, bool) or (isinstance(x, float) and not x.is_integer()) for x in xs):
        raise DocumentError(f"{what} must be a list of integers")
    return out


# -- spaces and maps --------------------------------------------------------

def space_to_doc(X):
    return {"points": X.point_labels(), "opens": [list(U) for U in X.open_sets()]}


def space_from_doc(doc, base=None):
    doc, base = _resolve(doc, base)
    _require(doc, ("points", "opens"), "space")
    points = doc["points"]
    if not isinstance(points, list):
        raise DocumentError("points must be a list")
    if len(set(map(str, points))) != len(points):
        raise DocumentError("point names must be distinct")
    opens = doc["opens"]
    if not isinstance(opens, list):
        raise DocumentError("opens must be a list of index lists")
    opens = [_int_list(U, "each open set") for U in opens]
    return fintop.new_space(len(points), opens, [str(p) for p in points])


def map_to_doc(f):
    return {"dom": space_to_doc(f.dom), "cod": space_to_doc(f.cod), "table": list(f.table)}


def map_from_doc(doc, base=None):
    doc, base = _resolve(doc, base)
    _require(doc, ("dom", "cod", "table"), "map")
    X = space_from_doc(doc["dom"], base)
    Y = space_from_doc(doc["cod"], base)
    table = _int_list(doc["table"], "table")
    if len(table) != X.n or any(not 0 <= t < Y.n for t in table):
        raise DocumentError("table must send each domain point to a codomain index")
    return CMap(X, Y, tuple(table))


# -- algebra ---------------------------------------------------------------

def signature_to_doc(sig):
    return {"constants": list(sig.constants), "ops": [[o, k] for o, k in sig.ops],
            "equations": list(sig.equations)}


def signature_from_doc(doc):
    _require(doc, ("ops",), "signature")
    try:
        ops = [(str(o), int(k)) for o, k in doc["ops"]]
    except (TypeError, ValueError):
        raise DocumentError("ops must be [name, arity] pairs") from None
    return Signature(tuple(doc.get("constants", [])), tuple(ops), tuple(doc.get("equations", [])))


def algebra_to_doc(U):
    return {"signature": signature_to_doc(U.sig), "carrier": U.n,
            "constants": dict(U.const_values),
            "tables": {op: U.tables[op].tolist() for op, _ in U.sig.ops}}


def algebra_from_doc(doc, base=None, check=True):
    doc, base = _resolve(doc, base)
    _require(doc, ("signature", "carrier", "tables"), "algebra")
    sig = signature_from_doc(doc["signature"])
    consts = doc.get("constants", {})
    missing = [c for c in sig.constants if c not in consts]
    if missing:
        raise DocumentError(f"no value for constants {missing}")
    missing = [o for o, _ in sig.ops if o not in doc["tables"]]
    if missing:
        raise DocumentError(f"no table for operations {missing}")
    try:
        return Structure(sig, int(doc["carrier"]), consts, doc["tables"], check=check)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"bad algebra tables: {exc}") from None


def topstructure_to_doc(T):
    return {"algebra": algebra_to_doc(T.alg), "space": space_to_doc(T.space)}


def topstructure_from_doc(doc, base=None):
    from .topalg import TopStructure
    doc, base = _resolve(doc, base)
    _require(doc, ("algebra", "space"), "structure")
    U = algebra_from_doc(doc["algebra"], base)
    X = space_from_doc(doc["space"], base)
    if U.n != X.n:
        raise DocumentError(f"carrier size {U.n} does not match {X.n} points")
    return TopStructure(U, X)


def maltsev_to_doc(space, phi):
    return {"space": space_to_doc(space), "phi": np.asarray(phi).reshape((space.n,) * 3).tolist()}


def maltsev_from_doc(doc, base=None):
    doc, base = _resolve(doc, base)
    _require(doc, ("space", "phi"), "Mal'tsev")
    X = space_from_doc(doc["space"], base)
    try:
        phi = np.asarray(doc["phi"], dtype=np.int64)
    except (TypeError, ValueError):
        raise DocumentError("phi must be a nested integer array") from None
    if phi.shape != (X.n,) * 3:
        raise DocumentError(f"phi has shape {phi.shape}, expected {(X.n,) * 3}")
    if phi.size and (phi.min() < 0 or phi.max() >= X.n):
        raise DocumentError("phi has entries outside the space")
    return X, phi


def reflection_report(R):
    return {"axiom": R.axiom, "method": R.method, "target": space_to_doc(R.target),
            "arrow": list(R.arrow.table), "quotient": R.arrow.is_quotient(),
            "open": R.arrow.is_open()}


def partition_to_doc(P):
    return [list(b) for b in P.blocks]


def dumps(doc):
    return json.dumps(doc, sort_keys=True)


def kind_of(doc):
    """Guess the document type from its keys."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    keys = set(doc)
    for kind, need in (("space", {"points", "opens"}), ("map", {"dom", "cod", "table"}),
                       ("maltsev", {"space", "phi"}), ("structure", {"algebra", "space"}),
                       ("algebra", {"signature", "carrier", "tables"})):
        if need <= keys:
            return kind
    raise DocumentError(f"unrecognised document with keys {sorted(keys)}")


def load_any(path):
    doc, base = read_json(path)
    kind = kind_of(doc)
    parser = {"space": space_from_doc, "map": map_from_doc, "maltsev": maltsev_from_doc,
              "structure": topstructure_from_doc, "algebra": algebra_from_doc}[kind]
    return kind, parser(doc, base)
