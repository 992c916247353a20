import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from qorder import kernels
from qorder.errors import DimensionMismatch, EntryOutOfDiagonal
from qorder.generators import random_relation, random_subset
from qorder.qrel import (
    QRelation,
    QSubset,
    compose,
    format_matrix,
    hom_join,
    hom_meet,
    identity,
    imp_left,
    imp_right,
    validate_relation,
)
from qorder.quantale import builtin

NAMES = ("bool2", "c3", "c4", "lukasiewicz(4)", "rel(2)")


def _triple(Q, rng, hi=2):
    X, Y, Z = (random_subset(Q, int(rng.integers(1, hi + 1)), rng, prefix=p) for p in "xyz")
    phi = QRelation(X, Y, random_relation(X, Y, rng, 0.7))
    psi = QRelation(Y, Z, random_relation(Y, Z, rng, 0.7))
    xi = QRelation(X, Z, random_relation(X, Z, rng, 0.7))
    return X, Y, Z, phi, psi, xi


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1))
def test_operations_match_brute_force(backend, name, seed):
    Q = builtin(name)
    rng = np.random.default_rng(seed)
    X, Y, Z, phi, psi, xi = _triple(Q, rng)
    assert np.array_equal(compose(psi, phi).entries, oracles.compose(Q, psi.entries, phi.entries, Y.deg))
    assert np.array_equal(
        imp_left(xi, phi).entries, oracles.imp_left(Q, xi.entries, phi.entries, X.deg, Y.deg, Z.deg)
    )
    assert np.array_equal(
        imp_right(psi, xi).entries, oracles.imp_right(Q, psi.entries, xi.entries, X.deg, Y.deg, Z.deg)
    )


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1))
def test_identity_is_neutral(backend, name, seed):
    Q = builtin(name)
    rng = np.random.default_rng(seed)
    X, Y, _, phi, _, _ = _triple(Q, rng, 3)
    assert compose(phi, identity(X)) == phi
    assert compose(identity(Y), phi) == phi


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1))
def test_composition_is_associative(backend, name, seed):
    Q = builtin(name)
    rng = np.random.default_rng(seed)
    X, Y, Z, phi, psi, _ = _triple(Q, rng, 3)
    W = random_subset(Q, 2, rng, prefix="w")
    chi = QRelation(Z, W, random_relation(Z, W, rng, 0.7))
    assert compose(chi, compose(psi, phi)) == compose(compose(chi, psi), phi)


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1))
def test_adjunction(backend, name, seed):
    Q = builtin(name)
    rng = np.random.default_rng(seed)
    _, _, _, phi, psi, xi = _triple(Q, rng, 3)
    assert (compose(psi, phi) <= xi) == (psi <= imp_left(xi, phi)) == (phi <= imp_right(psi, xi))


def test_empty_joins_and_meets():
    Q = builtin("c3")
    X = QSubset(Q, ["a", "b"], ["e", "top"])
    assert (hom_join([], X, X).entries == Q.bottom).all()
    top = hom_meet([], X, X).entries
    for i in range(2):
        for j in range(2):
            assert top[i, j] == max(Q.diagonal(int(X.deg[i]), int(X.deg[j])), key=lambda u: Q.leq[:, u].sum())


def test_validate_rejects_out_of_diagonal():
    Q = builtin("c3")
    X = QSubset(Q, ["x"], ["e"])
    Y = QSubset(Q, ["y"], ["top"])
    with pytest.raises(EntryOutOfDiagonal) as exc:
        validate_relation(X, Y, [[Q.index("e")]])
    assert (exc.value.x, exc.value.y) == ("x", "y")
    with pytest.raises(DimensionMismatch):
        validate_relation(X, Y, [[0, 0]])


def test_compose_rejects_mismatched_middle():
    Q = builtin("bool2")
    X = QSubset(Q, ["x"], ["top"])
    Y = QSubset(Q, ["y"], ["top"])
    with pytest.raises(DimensionMismatch):
        compose(identity(X), identity(Y))


def test_format_matrix_lists_labels():
    Q = builtin("c3")
    X = QSubset(Q, ["a", "b"], ["e", "e"])
    text = format_matrix(identity(X))
    assert "a" in text and "b" in text and "⊥" in text


def test_subset_equality_and_restrict():
    Q = builtin("c3")
    X = QSubset(Q, ["a", "b", "c"], ["e", "top", "bot"])
    assert X.restrict([0, 2]) == QSubset(Q, ["a", "c"], ["e", "bot"])
    assert X.degree("b") == Q.top
    with pytest.raises(ValueError):
        QSubset(Q, ["a", "a"], ["e", "e"])


def test_kernels_require_int32_contiguous(backend):
    Q = builtin("c3")
    a = np.zeros((2, 2), dtype=np.int32)
    out = kernels.compose(Q.kt, a, a, np.array([Q.unit, Q.unit], dtype=np.int32))
    assert out.dtype == np.int32
