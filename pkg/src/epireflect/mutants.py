"""Deliberate defects used only to prove the verification harness can fail.

Never enabled outside tests and ``verify --mutate``.
"""
KNOWN = {
    "t1-skip-closure": "T1 engine keeps every partition instead of closed-block ones",
    "sce-skip-alternation": "smallest_closed_equivalence skips the closure half of its first alternation",
    "quotient-skip-congruence": "quotient_structure skips its congruence check",
}

_active = set()


def active(name):
    return name in _active


def enable(*names):
    for name in names:
        if name not in KNOWN:
            raise ValueError(f"unknown mutant {name!r}")
        _active.add(name)


def disable_all():
    _active.clear()


def current():
    return sorted(_active)
