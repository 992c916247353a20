"""Hot loops of the relational calculus.

Two interchangeable backends implement the same functions: a compiled
Cython module and a numpy reference. The compiled one is used when it was
built; setting ``QORDER_PURE=1`` forces the reference implementation.
:func:`use` switches at runtime (the test-suite runs both).
"""

import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_NAMES = (
    "compose",
    "imp_left",
    "imp_right",
    "hom_join",
    "hom_meet",
    "first_not_leq",
    "first_not_in_diagonal",
    "enumerate_presheaves",
    "enumerate_copresheaves",
)


class KernelTables:
    """Contiguous copies of a quantale's tables in the dtypes the kernels expect."""

    def __init__(self, Q):
        self.n = Q.n
        self.bottom = Q.bottom
        self.top = Q.top
        self.unit = Q.unit

        def c(arr, dtype=np.int32):
            out = np.ascontiguousarray(arr, dtype=dtype).copy()
            out.flags.writeable = False
            return out

        self.mul = c(Q.mul)
        self.join = c(Q.join)
        self.meet = c(Q.meet)
        self.res_left = c(Q.res_left)
        self.res_right = c(Q.res_right)
        self.floor = c(Q.floor)
        self.leq = c(Q.leq, np.uint8)
        self.in_diag = c(Q.in_diag, np.uint8)


def make_tables(Q):
    return KernelTables(Q)


def available():
    """Names of the backends that can be selected."""
    return ("cython", "python") if _ckernels is not None else ("python",)


def use(name):
    """Select a backend by name (``"cython"`` or ``"python"``)."""
    global backend
    if name == "cython":
        if _ckernels is None:
            raise RuntimeError("the compiled kernels are not built")
        mod = _ckernels
    elif name == "python":
        mod = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    g = globals()
    for fn in _NAMES:
        g[fn] = getattr(mod, fn)
    backend = mod.BACKEND


backend = None
use("python" if os.environ.get("QORDER_PURE") == "1" or _ckernels is None else "cython")
