import numpy as np
import pytest
from hypothesis import given, strategies as st

from qorder import kernels
from qorder.generators import random_ordered, random_relation, random_subset
from qorder.kernels import _pykernels
from qorder.quantale import builtin

pytestmark = pytest.mark.skipif("cython" not in kernels.available(), reason="compiled kernels not built")

NAMES = ("bool2", "c3", "c4", "lukasiewicz(4)", "rel(2)")


def _c(a):
    return np.ascontiguousarray(a, dtype=np.int32)


def _ck():
    from qorder.kernels import _ckernels

    return _ckernels


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1))
def test_relational_kernels_agree(name, seed):
    Q = builtin(name)
    rng = np.random.default_rng(seed)
    X, Y, Z = (random_subset(Q, int(rng.integers(1, 5)), rng) for _ in range(3))
    phi, psi, xi = (
        _c(random_relation(A, B, rng)) for A, B in ((X, Y), (Y, Z), (X, Z))
    )
    ck, kt = _ck(), Q.kt
    args = [
        ("compose", (kt, psi, phi, _c(Y.deg))),
        ("imp_left", (kt, xi, phi, _c(Y.deg), _c(Z.deg))),
        ("imp_right", (kt, psi, xi, _c(X.deg), _c(Y.deg))),
        ("hom_join", (kt, phi, _c(random_relation(X, Y, rng)))),
        ("hom_meet", (kt, phi, _c(random_relation(X, Y, rng)), _c(X.deg), _c(Y.deg))),
    ]
    for fn, a in args:
        assert np.array_equal(getattr(ck, fn)(*a), getattr(_pykernels, fn)(*a)), fn
    other = _c(random_relation(X, Y, rng))
    assert ck.first_not_leq(kt, phi, other) == _pykernels.first_not_leq(kt, phi, other)
    raw = _c(rng.integers(0, Q.n, size=(X.n, Y.n)))
    assert ck.first_not_in_diagonal(kt, raw, _c(X.deg), _c(Y.deg)) == _pykernels.first_not_in_diagonal(
        kt, raw, _c(X.deg), _c(Y.deg)
    )


@given(st.sampled_from(NAMES[:4]), st.integers(0, 2**32 - 1))
def test_enumeration_kernels_agree(name, seed):
    Q = builtin(name)
    X = random_ordered(Q, 3, seed)
    ck, kt = _ck(), Q.kt
    for fn in ("enumerate_presheaves", "enumerate_copresheaves"):
        for q in range(Q.n):
            a = getattr(ck, fn)(kt, _c(X.alpha), _c(X.deg), q, 10**6)
            b = getattr(_pykernels, fn)(kt, _c(X.alpha), _c(X.deg), q, 10**6)
            assert np.array_equal(a, b), fn


def test_use_switches_backend():
    before = kernels.backend
    kernels.use("python")
    assert kernels.backend == "python" and kernels.compose is _pykernels.compose
    kernels.use("cython")
    assert kernels.backend == "cython"
    kernels.use(before)
    with pytest.raises(ValueError):
        kernels.use("fortran")
