import pytest
from hypothesis import given, strategies as st

import oracles
from qorder.completion import (
    completeness_report,
    cotensor,
    inf_indices,
    is_cotensored,
    is_order_complete,
    is_sup_preserving,
    is_tensored,
    sup_indices,
    tensor,
)
from qorder.errors import InvalidScalar
from qorder.generators import random_ordered
from qorder.presheaf import copresheaves, presheaves
from qorder.qord import is_separated
from qorder.quantale import builtin

NAMES = ("bool2", "c3", "c4")


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1), st.integers(1, 2))
def test_sups_and_infs_match_definition(backend, name, seed, n):
    Q = builtin(name)
    X = random_ordered(Q, n, seed)
    deg = list(X.deg)
    PX = presheaves(X)
    for (q, row), hit in zip(zip(PX.degrees, PX.values), sup_indices(X, PX.degrees, PX.values)):
        assert set(hit) == oracles.sups(Q, deg, X.alpha, int(q), row)
    PdX = copresheaves(X)
    for (q, row), hit in zip(zip(PdX.degrees, PdX.values), inf_indices(X, PdX.degrees, PdX.values)):
        assert set(hit) == oracles.infs(Q, deg, X.alpha, int(q), row)


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1), st.integers(1, 2))
def test_predicates_match_definition(backend, name, seed, n):
    Q = builtin(name)
    X = random_ordered(Q, n, seed)
    deg = list(X.deg)
    rep = completeness_report(X)
    assert rep.tensored == oracles.is_tensored(Q, deg, X.alpha)
    assert rep.cotensored == oracles.is_cotensored(Q, deg, X.alpha)
    assert rep.order_complete == oracles.is_order_complete(Q, deg, X.alpha)
    assert rep.complete == oracles.is_complete(Q, deg, X.alpha)
    assert rep.characterization_holds
    assert rep.sup_inf_agree


@pytest.mark.parametrize("name", ["bool2", "c3", "c4"])
def test_powersets_complete(name):
    Q = builtin(name)
    X = random_ordered(Q, 1, 2)
    for P in (presheaves(X), copresheaves(X)):
        Y = P.ordered
        assert is_separated(Y)
        assert is_tensored(Y) and is_cotensored(Y) and is_order_complete(Y)


def test_tensor_scalar_validation():
    Q = builtin("c3")
    X = random_ordered(Q, 2, 0)
    x = X.labels[0]
    bad = next(u for u in range(Q.n) if not Q.in_diagonal(u, int(X.deg[0]), Q.top))
    with pytest.raises(InvalidScalar):
        tensor(X, bad, x, "top")
    bad = next(v for v in range(Q.n) if not Q.in_diagonal(v, Q.top, int(X.deg[0])))
    with pytest.raises(InvalidScalar):
        cotensor(X, bad, x, "top")


def test_unit_tensor_is_the_point_itself():
    Q = builtin("c4")
    X = random_ordered(Q, 3, 8)
    for i, x in enumerate(X.labels):
        d = int(X.deg[i])
        assert x in tensor(X, d, x, d)
        assert x in cotensor(X, d, x, d)


def test_identity_preserves_sups():
    from qorder.qord import QOrderMap

    X = random_ordered(builtin("c3"), 2, 5)
    assert is_sup_preserving(QOrderMap(X, X, list(range(X.n))))
