"""Brute-force reference implementations.

Only the raw order and multiplication tables of a quantale are used here;
residuals, diagonal sets, implications, presheaves and completions are all
recomputed from their definitions by exhaustive search.
"""

from itertools import combinations, permutations, product

import numpy as np


def greatest(Q, items):
    """The greatest element of ``items`` (None if there is none)."""
    items = list(items)
    for x in items:
        if all(Q.leq[y, x] for y in items):
            return x
    return None


def join(Q, items):
    """Least upper bound by search over the whole quantale."""
    items = list(items)
    ubs = [z for z in range(Q.n) if all(Q.leq[y, z] for y in items)]
    return next(z for z in ubs if all(Q.leq[z, w] for w in ubs))


def meet(Q, items):
    items = list(items)
    lbs = [z for z in range(Q.n) if all(Q.leq[z, y] for y in items)]
    return next(z for z in lbs if all(Q.leq[w, z] for w in lbs))


def res_left(Q, r, q):
    """``r/q``: greatest ``x`` with ``x & q <= r``."""
    return greatest(Q, [x for x in range(Q.n) if Q.leq[Q.mul[x, q], r]])


def res_right(Q, p, r):
    """``p\\r``: greatest ``x`` with ``p & x <= r``."""
    return greatest(Q, [x for x in range(Q.n) if Q.leq[Q.mul[p, x], r]])


def diagonal(Q, p, q):
    """Elements of the form ``x & p`` that are also of the form ``q & y``."""
    right = {int(Q.mul[x, p]) for x in range(Q.n)}
    left = {int(Q.mul[q, y]) for y in range(Q.n)}
    return right & left


def idempotents_above_unit(Q):
    return {q for q in range(Q.n) if Q.mul[q, q] == q and Q.leq[Q.unit, q]}


def compose(Q, psi, phi, ydeg):
    """``(psi o phi)(x, z) = join_y (psi(y, z) / |y|) & phi(x, y)``."""
    psi, phi = np.asarray(psi), np.asarray(phi)
    nx, ny = phi.shape
    nz = psi.shape[1]
    out = np.zeros((nx, nz), dtype=np.int32)
    for x in range(nx):
        for z in range(nz):
            out[x, z] = join(
                Q, [Q.mul[res_left(Q, psi[y, z], ydeg[y]), phi[x, y]] for y in range(ny)]
            )
    return out


def legal_relations(Q, sdeg, tdeg):
    """Every matrix whose entries lie in the diagonal sets ``D(|x|, |y|)``."""
    cells = [sorted(diagonal(Q, p, q)) for p in sdeg for q in tdeg]
    for vals in product(*cells):
        yield np.array(vals, dtype=np.int32).reshape(len(sdeg), len(tdeg))


def _leq_all(Q, a, b):
    return bool(Q.leq[a, b].all())


def _pointwise_join(Q, mats, shape):
    out = np.zeros(shape, dtype=np.int32)
    for idx in np.ndindex(*shape):
        out[idx] = join(Q, [m[idx] for m in mats])
    return out


def imp_left(Q, xi, phi, xdeg, ydeg, zdeg):
    """``xi <- phi``: the greatest legal ``psi: Y -> Z`` with ``psi o phi <= xi``."""
    good = [
        psi
        for psi in legal_relations(Q, ydeg, zdeg)
        if _leq_all(Q, compose(Q, psi, phi, ydeg), xi)
    ]
    best = _pointwise_join(Q, good, (len(ydeg), len(zdeg)))
    assert any(np.array_equal(best, g) for g in good)
    return best


def imp_right(Q, psi, xi, xdeg, ydeg, zdeg):
    """``psi -> xi``: the greatest legal ``phi: X -> Y`` with ``psi o phi <= xi``."""
    good = [
        phi
        for phi in legal_relations(Q, xdeg, ydeg)
        if _leq_all(Q, compose(Q, psi, phi, ydeg), xi)
    ]
    best = _pointwise_join(Q, good, (len(xdeg), len(ydeg)))
    assert any(np.array_equal(best, g) for g in good)
    return best


def presheaves(Q, deg, alpha):
    """All ``(q, values)`` with ``values: X -> 1_q`` legal and ``mu o alpha <= mu``."""
    out = set()
    for q in range(Q.n):
        for mu in legal_relations(Q, deg, [q]):
            if _leq_all(Q, compose(Q, mu, alpha, deg), mu):
                out.add((q, tuple(int(v) for v in mu[:, 0])))
    return out


def copresheaves(Q, deg, alpha):
    out = set()
    for q in range(Q.n):
        for lam in legal_relations(Q, [q], deg):
            if _leq_all(Q, compose(Q, alpha, lam, deg), lam):
                out.add((q, tuple(int(v) for v in lam[0, :])))
    return out


def is_preorder(Q, deg, alpha):
    n = len(deg)
    a = np.asarray(alpha)
    for x in range(n):
        for y in range(n):
            if a[x, y] not in diagonal(Q, deg[x], deg[y]):
                return False
        if not Q.leq[deg[x], a[x, x]]:
            return False
    return _leq_all(Q, compose(Q, a, a, deg), a)


def membership_maps(Q, alpha):
    """All degree tuples on which ``alpha`` is a Q-preorder."""
    n = len(alpha)
    return [d for d in product(range(Q.n), repeat=n) if is_preorder(Q, d, alpha)]


def adjoints(f, side="right"):
    """Every membership-preserving ``g: Y -> X`` with ``f -| g`` (or ``g -| f``), by trying all assignments."""
    X, Y = f.source, f.target
    out = []
    for g in product(range(X.n), repeat=Y.n):
        if any(X.deg[g[y]] != Y.deg[y] for y in range(Y.n)):
            continue
        if side == "right":
            ok = all(
                Y.alpha[f.f[x], y] == X.alpha[x, g[y]] for x in range(X.n) for y in range(Y.n)
            )
        else:
            ok = all(
                X.alpha[g[y], x] == Y.alpha[y, f.f[x]] for x in range(X.n) for y in range(Y.n)
            )
        if ok:
            out.append(tuple(g))
    return out


# -- classical order theory ----------------------------------------------------


def concept_extents(objects, attributes, incidence):
    """Extents of the classical concept lattice: closed sets of objects."""
    closed = set()
    for k in range(len(objects) + 1):
        for A in combinations(objects, k):
            intent = {m for m in attributes if all((g, m) in incidence for g in A)}
            extent = frozenset(g for g in objects if all((g, m) in incidence for m in intent))
            closed.add(extent)
    return closed


def dedekind_macneille(n, le):
    """Cuts ``L(U(A))`` of a finite poset, as frozensets of points."""
    pts = range(n)
    cuts = set()
    for k in range(n + 1):
        for A in combinations(pts, k):
            U = [u for u in pts if all(le[a][u] for a in A)]
            L = frozenset(x for x in pts if all(le[x][u] for u in U))
            cuts.add(L)
    return cuts


def posets_up_to_iso(n):
    """One representative ``le`` matrix per isomorphism class of ``n``-element posets."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    reps = []
    for bits in product((0, 1), repeat=len(pairs)):
        le = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), b in zip(pairs, bits):
            le[i][j] = bool(b)
        if any(le[i][j] and le[j][i] for i, j in pairs):
            continue
        if any(
            le[i][j] and le[j][k] and not le[i][k]
            for i in range(n)
            for j in range(n)
            for k in range(n)
        ):
            continue
        key = min(
            tuple(le[p[i]][p[j]] for i in range(n) for j in range(n)) for p in permutations(range(n))
        )
        if key not in seen:
            seen.add(key)
            reps.append(le)
    return reps


# -- completeness from the definitions -------------------------------------------


def _points_with_row(deg, alpha, q, row):
    return {t for t in range(len(deg)) if deg[t] == q and tuple(alpha[t, :]) == tuple(row)}


def _points_with_col(deg, alpha, q, col):
    return {t for t in range(len(deg)) if deg[t] == q and tuple(alpha[:, t]) == tuple(col)}


def sups(Q, deg, alpha, q, mu):
    """Points ``s`` of degree ``q`` with ``alpha(s, -) = alpha <- mu``."""
    ub = imp_left(Q, alpha, np.array(mu, dtype=np.int32)[:, None], deg, [q], deg)[0]
    return _points_with_row(deg, alpha, q, ub)


def infs(Q, deg, alpha, q, lam):
    lb = imp_right(Q, np.array(lam, dtype=np.int32)[None, :], alpha, deg, [q], deg)[:, 0]
    return _points_with_col(deg, alpha, q, lb)


def is_tensored(Q, deg, alpha):
    for x in range(len(deg)):
        for q in range(Q.n):
            for u in diagonal(Q, deg[x], q):
                row = imp_left(Q, alpha[x : x + 1, :], [[u]], [deg[x]], [q], deg)[0]
                if not _points_with_row(deg, alpha, q, row):
                    return False
    return True


def is_cotensored(Q, deg, alpha):
    for x in range(len(deg)):
        for q in range(Q.n):
            for v in diagonal(Q, q, deg[x]):
                col = imp_right(Q, np.array([[v]]), alpha[:, x : x + 1], deg, [q], [deg[x]])[:, 0]
                if not _points_with_col(deg, alpha, q, col):
                    return False
    return True


def is_order_complete(Q, deg, alpha):
    """For every q in Q, each subset of ``X_q`` has a least upper bound in the underlying preorder."""
    n = len(deg)
    le = [[deg[x] == deg[y] and bool(Q.leq[deg[x], alpha[x, y]]) for y in range(n)] for x in range(n)]
    for q in range(Q.n):  # an empty X_q has no least element
        part = [x for x in range(n) if deg[x] == q]
        for k in range(len(part) + 1):
            for S in combinations(part, k):
                U = [u for u in part if all(le[s][u] for s in S)]
                if not any(all(le[j][u] for u in U) for j in U):
                    return False
    return True


def is_complete(Q, deg, alpha):
    return all(sups(Q, deg, alpha, q, mu) for q, mu in presheaves(Q, deg, alpha))
