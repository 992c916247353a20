"""Seeded random Q-subsets, Q-ordered sets, distributors and maps."""

from __future__ import annotations

import numpy as np

from . import kernels
from .qord import QOrderedSet, QOrderMap
from .qrel import QRelation, QSubset


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_subset(Q, n, seed=None, degrees=None, prefix="x"):
    """``n`` labels with degrees drawn from ``degrees`` (default: all of Q)."""
    rng = _rng(seed)
    pool = list(range(Q.n)) if degrees is None else [Q.index(d) for d in degrees]
    deg = [int(rng.choice(pool)) for _ in range(n)]
    return QSubset(Q, [f"{prefix}{i}" for i in range(n)], deg)


def random_relation(X, Y, seed=None, density=0.5):
    """Each entry is bottom with probability ``1 - density``, else uniform in its diagonal set."""
    rng = _rng(seed)
    Q = X.Q
    out = np.full((X.n, Y.n), Q.bottom, dtype=np.int32)
    for i in range(X.n):
        for j in range(Y.n):
            if rng.random() < density:
                d = Q.diagonal(int(X.deg[i]), int(Y.deg[j]))
                out[i, j] = d[int(rng.integers(len(d)))]
    return out


def transitive_closure(Q, deg, alpha):
    """Least transitive relation above ``alpha`` and the identity."""
    kt = Q.kt
    deg = np.ascontiguousarray(deg, dtype=np.int32)
    cur = np.ascontiguousarray(alpha, dtype=np.int32).copy()
    np.fill_diagonal(cur, Q.join[np.diag(cur), deg])
    while True:
        nxt = kernels.hom_join(kt, cur, kernels.compose(kt, cur, cur, deg))
        if np.array_equal(nxt, cur):
            return cur
        cur = nxt


def random_ordered(Q, n, seed=None, degrees=None, density=0.3, prefix="x"):
    """A random Q-ordered set: the transitive closure of a random relation."""
    rng = _rng(seed)
    X = random_subset(Q, n, rng, degrees, prefix)
    return _order_on(X, rng, density)


def _order_on(X, rng, density):
    alpha = transitive_closure(X.Q, X.deg, random_relation(X, X, rng, density))
    return QOrderedSet(X, QRelation(X, X, alpha))


def random_ordered_over(X, seed=None, extra=1, density=0.3, prefix="y"):
    """A random Q-ordered set using exactly the membership degrees occurring in ``X``.

    Every degree of ``X`` appears at least once, so membership-preserving maps
    in both directions exist; up to ``extra`` further points repeat degrees.
    """
    rng = _rng(seed)
    need = sorted(set(int(d) for d in X.deg))
    degs = need + [int(rng.choice(need)) for _ in range(int(rng.integers(0, extra + 1)))]
    rng.shuffle(degs)
    carrier = QSubset(X.Q, [f"{prefix}{i}" for i in range(len(degs))], degs)
    return _order_on(carrier, rng, density)


def random_distributor(X, Y, seed=None, density=0.5):
    """``beta o r o alpha`` for a random relation ``r``."""
    rng = _rng(seed)
    kt = X.Q.kt
    r = random_relation(X.carrier, Y.carrier, rng, density)
    inner = kernels.compose(kt, r, X.alpha, X.deg)
    return kernels.compose(kt, Y.alpha, inner, Y.deg)


def random_map(X, Y, seed=None, order_preserving=True):
    """A random membership-preserving map, or ``None`` if there is none.

    With ``order_preserving=True`` the map is found by a randomized
    depth-first search that checks the order against every point assigned so
    far, so it returns ``None`` only when no order-preserving map exists.
    """
    rng = _rng(seed)
    pools = [np.flatnonzero(Y.deg == d) for d in X.deg]
    if any(len(p) == 0 for p in pools):
        return None
    if not order_preserving:
        return QOrderMap(X, Y, [int(rng.choice(p)) for p in pools], check=False)
    leq = X.Q.leq
    order = [list(rng.permutation(p)) for p in pools]
    f = [0] * X.n

    def ok(i, y):
        for j in range(i):
            if not (leq[X.alpha[i, j], Y.alpha[y, f[j]]] and leq[X.alpha[j, i], Y.alpha[f[j], y]]):
                return False
        return bool(leq[X.alpha[i, i], Y.alpha[y, y]])

    def search(i):
        if i == X.n:
            return True
        for y in order[i]:
            if ok(i, int(y)):
                f[i] = int(y)
                if search(i + 1):
                    return True
        return False

    return QOrderMap(X, Y, f, check=False) if search(0) else None
