"""Size guards.

Enumeration explodes quickly (Bell numbers, topology counts), so every
exhaustive routine checks one of these bounds first.  The default for
``enum_points`` can be overridden with the ``EPIREFLECT_MAX_POINTS``
environment variable.
"""
import os
from dataclasses import dataclass, replace

from .errors import SizeLimit


@dataclass(frozen=True)
class Limits:
    enum_points: int = 5          # topology / C-member enumeration
    construct_points: int = 64    # direct constructions (products, quotients)
    partition_points: int = 10    # brute force over all partitions
    carrier: int = 8              # congruence scans of algebras


def _from_env():
    raw = os.environ.get("EPIREFLECT_MAX_POINTS")
    if raw:
        try:
            return Limits(enum_points=int(raw))
        except ValueError:
            pass
    return Limits()


LIMITS = _from_env()


def set_limits(**kw):
    global LIMITS
    LIMITS = replace(LIMITS, **kw)
    return LIMITS


def guard(n, field, what="input"):
    bound = getattr(LIMITS, field)
    if n > bound:
        raise SizeLimit(f"{what} has {n} points; {field} guard is {bound}")
