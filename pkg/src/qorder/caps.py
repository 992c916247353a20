"""Enumeration caps.

Defaults keep every exhaustive search at desk scale. The environment
variable ``QORDER_CAP`` overrides them: a bare integer replaces every cap,
while ``name=value`` pairs separated by commas replace individual ones,
e.g. ``QORDER_CAP=powerset=500000,memberships=2000000``.
"""

import os

DEFAULTS = {
    "powerset": 100_000,  # sum over degrees of candidate products for PX / P†X
    "memberships": 1_000_000,  # |Q| ** |X| membership maps
    "adjoints": 1_000_000,  # product of per-point adjoint candidates
    "order_complete": 12,  # largest |X_q| scanned over all subsets
    "quantale": 64,  # largest quantale accepted by builtin constructors
}


def _overrides():
    raw = os.environ.get("QORDER_CAP", "").strip()
    if not raw:
        return {}
    if raw.isdigit():
        return {name: int(raw) for name in DEFAULTS}
    out = {}
    for part in raw.split(","):
        name, _, value = part.partition("=")
        name = name.strip()
        if name in DEFAULTS and value.strip().isdigit():
            out[name] = int(value)
    return out


def cap(name):
    """Current value of the named cap."""
    return _overrides().get(name, DEFAULTS[name])
