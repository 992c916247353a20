import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from qorder.errors import NotClosed, SizeCap
from qorder.generators import random_map, random_ordered, random_ordered_over
from qorder.presheaf import (
    Presheaf,
    co_yoneda_map,
    copresheaves,
    image_maps,
    is_member,
    make_presheaf,
    presheaves,
    size_estimate,
    yoneda,
    yoneda_map,
)
from qorder.qord import is_separated
from qorder.quantale import builtin

NAMES = ("bool2", "c3", "c4", "lukasiewicz(4)")


def _as_set(P):
    return {(int(d), tuple(int(v) for v in row)) for d, row in zip(P.degrees, P.values)}


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1), st.integers(1, 2))
def test_enumeration_matches_brute_force(backend, name, seed, n):
    Q = builtin(name)
    X = random_ordered(Q, n, seed)
    assert _as_set(presheaves(X)) == oracles.presheaves(Q, list(X.deg), X.alpha)
    assert _as_set(copresheaves(X)) == oracles.copresheaves(Q, list(X.deg), X.alpha)


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1))
def test_powersets_are_separated(backend, name, seed):
    X = random_ordered(builtin(name), 2, seed)
    assert is_separated(presheaves(X).ordered)
    assert is_separated(copresheaves(X).ordered)


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1))
def test_yoneda_maps_fully_faithful(backend, name, seed):
    X = random_ordered(builtin(name), 2, seed)
    assert yoneda_map(X).check().fully_faithful
    assert co_yoneda_map(X).check().fully_faithful


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1))
def test_yoneda_lemma(backend, name, seed):
    X = random_ordered(builtin(name), 2, seed)
    PX = presheaves(X)
    y = yoneda_map(X)
    order = PX.ordered.alpha
    for m in range(len(PX)):
        for x in range(X.n):
            assert order[y.f[x], m] == PX.values[m, x]
    PdX = copresheaves(X)
    yd = co_yoneda_map(X)
    order = PdX.ordered.alpha
    for m in range(len(PdX)):
        for x in range(X.n):
            assert order[m, yd.f[x]] == PdX.values[m, x]


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1))
def test_image_maps_land_in_powersets(backend, name, seed):
    Q = builtin(name)
    rng = np.random.default_rng(seed)
    X = random_ordered(Q, 2, rng)
    Y = random_ordered_over(X, rng)
    f = random_map(X, Y, rng)
    if f is None:
        return
    maps = image_maps(f)
    for m in maps.values():
        assert m.check().order_preserving


def test_membership_check_and_errors():
    Q = builtin("c3")
    X = random_ordered(Q, 2, 4)
    for mu in presheaves(X):
        assert is_member(X, mu.degree, mu.values)
    with pytest.raises(NotClosed):
        make_presheaf(X, "e", [Q.top] * X.n) if not is_member(X, Q.unit, [Q.top] * X.n) else (
            make_presheaf(X, "bot", [Q.top] * X.n)
        )


def test_representable_is_member():
    Q = builtin("c4")
    X = random_ordered(Q, 3, 9)
    for x in X.labels:
        y = yoneda(X, x)
        assert isinstance(y, Presheaf)
        assert is_member(X, y.degree, y.values)


def test_size_cap(monkeypatch):
    X = random_ordered(builtin("lukasiewicz(4)"), 3, 1)
    monkeypatch.setenv("QORDER_CAP", f"powerset={size_estimate(X) - 1}")
    with pytest.raises(SizeCap):
        presheaves(X)
    monkeypatch.setenv("QORDER_CAP", str(size_estimate(X)))
    assert len(presheaves(X)) > 0
