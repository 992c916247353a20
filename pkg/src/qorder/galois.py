"""Distributors, Galois connections and the constructions built from them.

A Galois pair ``f -| g`` between Q-ordered sets is recognised by the single
matrix identity ``beta(f x, y) = alpha(x, g y)``; adjoint searches exploit that
this identity constrains each point separately.

The three pairs induced by a distributor ``phi: X -o Y`` are

* Isbell: ``PX -> P^dag Y``, ``mu |-> phi <- mu`` and back ``lam |-> lam -> phi``;
* Kan: ``PY -> PX``, ``mu' |-> mu' o phi`` and back ``mu |-> mu <- phi``;
* dual Kan: ``P^dag Y -> P^dag X``, ``lam' |-> phi -> lam'`` and back ``lam |-> phi o lam``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

import numpy as np

from . import caps, kernels
from .completion import (
    _lookup,
    _row_index,
    _scalar_rows,
    _tensor_rows,
    _cotensor_cols,
)
from .errors import DimensionMismatch, NotAdjoint, SizeCap
from .presheaf import (
    _closure_violations,
    copresheaves,
    presheaves,
    powerset_map,
    yoneda_map,
)
from .qord import (
    QOrderedSet,
    QOrderMap,
    cograph,
    discrete,
    graph,
    underlying_preorder,
)
from .qrel import QRelation


def _c(a):
    return np.ascontiguousarray(a, dtype=np.int32)


def _entries(phi):
    return phi.entries if isinstance(phi, QRelation) else _c(phi)


# -- distributors ------------------------------------------------------------


def closure(phi, X, Y):
    """``beta o phi o alpha``, the least distributor above ``phi``."""
    kt = X.Q.kt
    e = _entries(phi)
    inner = kernels.compose(kt, e, X.alpha, X.deg)
    return QRelation(X.carrier, Y.carrier, kernels.compose(kt, Y.alpha, inner, Y.deg))


def is_distributor(phi, X, Y):
    """``(True, None)`` or ``(False, (x, y))`` at the first entry that closure raises."""
    e = _entries(phi)
    if e.shape != (X.n, Y.n):
        raise DimensionMismatch(f"expected a {X.n}x{Y.n} relation")
    c = closure(e, X, Y).entries
    bad = kernels.first_not_leq(X.Q.kt, c, e)
    if bad < 0:
        return True, None
    i, j = divmod(bad, Y.n)
    return False, (X.labels[i], Y.labels[j])


def distributor_conditions(phi, X, Y):
    """Evaluate five equivalent descriptions of a distributor independently.

    Keys: ``two_sided`` (``beta o phi o alpha <= phi``), ``pointwise`` (the
    four-variable inequality), ``one_sided`` (``phi o alpha <= phi`` and
    ``beta o phi <= phi``), ``rows_and_columns`` (rows are copresheaves on Y,
    columns presheaves on X) and ``implications`` (``alpha <= phi -> phi`` and
    ``beta <= phi <- phi``).
    """
    Q = X.Q
    kt = Q.kt
    e = _c(_entries(phi))
    out = {"two_sided": is_distributor(e, X, Y)[0]}

    # (beta(y,y')/|y|) & phi(x,y) & (|x| \ alpha(x',x)) <= phi(x',y')
    left = Q.res_left[Y.alpha, Y.deg[:, None]]  # (y, y')
    right = Q.res_right[X.deg[None, :], X.alpha]  # (x', x)
    ok = True
    for x, y in product(range(X.n), range(Y.n)):
        t = Q.mul[left[y][None, :], Q.mul[e[x, y], right[:, x]][:, None]]  # (x', y')
        if not Q.leq[t, e].all():
            ok = False
            break
    out["pointwise"] = ok

    a = kernels.compose(kt, e, X.alpha, X.deg)
    b = kernels.compose(kt, Y.alpha, e, Y.deg)
    out["one_sided"] = kernels.first_not_leq(kt, a, e) < 0 and kernels.first_not_leq(kt, b, e) < 0

    rows_ok = len(_closure_violations(Y, X.deg, e, True)) == 0
    cols_ok = len(_closure_violations(X, Y.deg, _c(e.T), False)) == 0
    out["rows_and_columns"] = rows_ok and cols_ok

    r = kernels.imp_right(kt, e, e, X.deg, X.deg)  # phi -> phi : X -> X
    l_ = kernels.imp_left(kt, e, e, Y.deg, Y.deg)  # phi <- phi : Y -> Y
    out["implications"] = (
        kernels.first_not_leq(kt, X.alpha, r) < 0 and kernels.first_not_leq(kt, Y.alpha, l_) < 0
    )
    return out


def is_dist_adjoint(phi, psi, X, Y):
    """``phi -| psi`` for ``phi: X -o Y`` and ``psi: Y -o X``."""
    kt = X.Q.kt
    p, s = _c(_entries(phi)), _c(_entries(psi))
    unit = kernels.compose(kt, s, p, Y.deg)  # psi o phi : X -> X
    counit = kernels.compose(kt, p, s, X.deg)  # phi o psi : Y -> Y
    return kernels.first_not_leq(kt, X.alpha, unit) < 0 and kernels.first_not_leq(kt, counit, Y.alpha) < 0


def adjoint_identities(phi, psi, X, Y, Z, W, draw):
    """Check the identities satisfied by an adjunction ``phi -| psi`` of distributors.

    ``draw(A, B)`` must return a distributor ``A -o B`` (as a matrix); it is
    called once for every auxiliary distributor. Returns a dict keyed by
    ``composition_as_implication``, ``implication_of_composite``,
    ``composite_of_implication`` and ``mixed`` with one boolean each.
    """
    kt = X.Q.kt
    p, s = _c(_entries(phi)), _c(_entries(psi))

    def comp(b, a, mid):  # b o a, mid = the shared middle set
        return kernels.compose(kt, _c(b), _c(a), mid.deg)

    def il(xi, a, src, tgt):  # xi <- a : src -> tgt
        return kernels.imp_left(kt, _c(xi), _c(a), src.deg, tgt.deg)

    def ir(b, xi, src, tgt):  # b -> xi : src -> tgt
        return kernels.imp_right(kt, _c(b), _c(xi), src.deg, tgt.deg)

    eq = np.array_equal
    out = {}

    xi = draw(Y, Z)  # xi o phi = xi <- psi
    xi2 = draw(Z, Y)  # psi o xi = phi -> xi
    out["composition_as_implication"] = eq(comp(xi, p, Y), il(xi, s, X, Z)) and eq(
        comp(s, xi2, Y), ir(p, xi2, Z, X)
    )

    xi, xi2 = draw(Z, X), draw(W, Y)  # (phi o xi) -> xi2 = xi -> (psi o xi2)
    g2a = eq(ir(comp(p, xi, X), xi2, W, Z), ir(xi, comp(s, xi2, Y), W, Z))
    xi2, xi = draw(Y, W), draw(X, Z)  # (xi2 o phi) <- xi = xi2 <- (xi o psi)
    g2b = eq(il(comp(xi2, p, Y), xi, Z, W), il(xi2, comp(xi, s, X), Z, W))
    out["implication_of_composite"] = g2a and g2b

    xi, xi2 = draw(Z, W), draw(Y, W)  # (xi -> xi2) o phi = xi -> (xi2 o phi)
    g3a = eq(comp(ir(xi, xi2, Y, Z), p, Y), ir(xi, comp(xi2, p, Y), X, Z))
    xi, xi2 = draw(W, Z), draw(W, Y)  # psi o (xi2 <- xi) = (psi o xi2) <- xi
    g3b = eq(comp(s, il(xi2, xi, Z, Y), Y), il(comp(s, xi2, Y), xi, Z, X))
    out["composite_of_implication"] = g3a and g3b

    xi, xi2 = draw(Y, W), draw(Z, W)  # psi o (xi -> xi2) = (xi o phi) -> xi2
    g4a = eq(comp(s, ir(xi, xi2, Z, Y), Y), ir(comp(xi, p, Y), xi2, Z, X))
    xi, xi2 = draw(W, Y), draw(W, Z)  # (xi2 <- xi) o phi = xi2 <- (psi o xi)
    g4b = eq(comp(il(xi2, xi, Y, Z), p, Y), il(xi2, comp(s, xi, Y), X, Z))
    out["mixed"] = g4a and g4b
    return out


# -- Galois pairs of maps ----------------------------------------------------


@dataclass
class GaloisPair:
    """``left -| right`` candidates; ``kind`` records where the pair lives."""

    left: QOrderMap
    right: QOrderMap
    kind: str = "ord-adjunction"
    domain: object = None  # powerset of the left map's source, when applicable
    codomain: object = None


def graph_criterion(f, g):
    """``beta(f x, y) = alpha(x, g y)`` for all ``x, y``."""
    X, Y = f.source, f.target
    if g.source != Y or g.target != X:
        raise DimensionMismatch("g must go back from the target of f to its source")
    return bool(np.array_equal(Y.alpha[f.f, :], X.alpha[:, g.f]))


def is_galois(f, g=None):
    """Whether ``f -| g``; a :class:`GaloisPair` may be passed alone.

    For membership-preserving maps the answer is computed from the matrix
    identity, which also forces both maps to be order-preserving; when both
    maps are order-preserving it is cross-checked against ``1 <= g f`` and
    ``f g <= 1``.
    """
    if isinstance(f, GaloisPair):
        f, g = f.left, f.right
    X, Y = f.source, f.target
    cf, cg = f.check(), g.check()
    if not (cf.membership_preserving and cg.membership_preserving):
        return False
    crit = graph_criterion(f, g)
    if cf.order_preserving and cg.order_preserving:
        Q = X.Q
        unit = bool(Q.leq[X.deg, X.alpha[np.arange(X.n), g.f[f.f]]].all())
        counit = bool(Q.leq[Y.deg, Y.alpha[f.f[g.f], np.arange(Y.n)]].all())
        assert crit == (unit and counit), "graph criterion disagrees with the unit/counit check"
    elif crit:
        raise AssertionError("a pair meeting the graph criterion must be order-preserving")
    return crit


def _candidates_right(f):
    # for each y: labels x' of degree |y| with alpha(-, x') = beta(f -, y)
    X, Y = f.source, f.target
    cols = _row_index(X, _c(X.alpha.T))
    return _lookup(cols, Y.deg, _c(Y.alpha[f.f, :].T))


def _candidates_left(g):
    # g: Y -> X; for each x: labels y' of degree |x| with beta(y', -) = alpha(x, g -)
    Y, X = g.source, g.target
    rows = _row_index(Y, _c(Y.alpha))
    return _lookup(rows, X.deg, _c(X.alpha[:, g.f]))


def find_adjoint(f, side="right"):
    """All adjoints of ``f`` on the given side, as a list of maps.

    ``side="right"`` returns every ``g`` with ``f -| g``; ``side="left"``
    every ``h`` with ``h -| f``. The candidates for each point are found
    independently, so the result is their product; any two results are
    isomorphic.

    Raises
    ------
    SizeCap
        If the number of results exceeds the ``adjoints`` cap.
    """
    if side == "right":
        cands, src, tgt = _candidates_right(f), f.target, f.source
    elif side == "left":
        cands, src, tgt = _candidates_left(f), f.target, f.source
    else:
        raise ValueError("side must be 'left' or 'right'")
    total = prod(len(c) for c in cands)
    if total > caps.cap("adjoints"):
        raise SizeCap(f"{total} adjoints exceed the cap {caps.cap('adjoints')}")
    return [QOrderMap(src, tgt, list(choice), check=False) for choice in product(*cands)]


def has_adjoint(f, side="right"):
    cands = _candidates_right(f) if side == "right" else _candidates_left(f)
    return all(cands)


def _underlying_adjoint_exists(f, side):
    # adjoint between the underlying preorders; membership preservation is forced
    X, Y = f.source, f.target
    lx, ly = underlying_preorder(X), underlying_preorder(Y)
    if side == "right":
        target = ly[f.f, :]  # (x, y): f x <= y
        for y in range(Y.n):
            if not any((lx[:, c] == target[:, y]).all() for c in range(X.n)):
                return False
        return True
    target = ly[:, f.f]  # (y, x): y <= f x
    for y in range(Y.n):
        if not any((lx[c, :] == target[y, :]).all() for c in range(X.n)):
            return False
    return True


def _preserves_tensors(f):
    X, Y = f.source, f.target
    tx = _row_index(X, _c(X.alpha))
    ty = _row_index(Y, _c(Y.alpha))
    for x in range(X.n):
        qs, us = _scalar_rows(X, x, "tensor")
        hx = _lookup(tx, qs, _tensor_rows(X, x, qs, us))
        hy = _lookup(ty, qs, _tensor_rows(Y, int(f.f[x]), qs, us))
        for a, b in zip(hx, hy):
            if not a or int(f.f[a[0]]) not in b:
                return False
    return True


def _preserves_cotensors(f):
    X, Y = f.source, f.target
    tx = _row_index(X, _c(X.alpha.T))
    ty = _row_index(Y, _c(Y.alpha.T))
    for x in range(X.n):
        qs, vs = _scalar_rows(X, x, "cotensor")
        hx = _lookup(tx, qs, _cotensor_cols(X, x, qs, vs))
        hy = _lookup(ty, qs, _cotensor_cols(Y, int(f.f[x]), qs, vs))
        for a, b in zip(hx, hy):
            if not a or int(f.f[a[0]]) not in b:
                return False
    return True


def left_adjoint_criteria(f, PX=None):
    """Three independent tests of whether ``f`` (with complete source) is a left adjoint.

    Returns a dict with ``left_adjoint`` (an adjoint exists), ``sup_preserving``
    and ``underlying_and_tensors`` (a left adjoint of the underlying preorders
    that also preserves tensors), plus ``agree``.
    """
    from .completion import is_sup_preserving

    la = has_adjoint(f, "right")
    sp = is_sup_preserving(f, PX)
    ut = _underlying_adjoint_exists(f, "right") and _preserves_tensors(f)
    return {"left_adjoint": la, "sup_preserving": sp, "underlying_and_tensors": ut, "agree": la == sp == ut}


def right_adjoint_criteria(f, PdX=None):
    """Dual of :func:`left_adjoint_criteria` with infima and cotensors."""
    from .completion import is_inf_preserving

    ra = has_adjoint(f, "left")
    ip = is_inf_preserving(f, PdX)
    uc = _underlying_adjoint_exists(f, "left") and _preserves_cotensors(f)
    return {"right_adjoint": ra, "inf_preserving": ip, "underlying_and_cotensors": uc, "agree": ra == ip == uc}


# -- Isbell, Kan and dual Kan --------------------------------------------------


def isbell_up_values(phi, X, Y, degrees, values):
    """Rows of ``phi <- mu`` (copresheaves on Y) for presheaf rows on X."""
    vt = _c(np.asarray(values).T)
    return kernels.imp_left(X.Q.kt, _c(_entries(phi)), vt, _c(degrees), Y.deg)


def isbell_down_values(phi, X, Y, degrees, values):
    """Rows of ``lam -> phi`` (presheaves on X) for copresheaf rows on Y."""
    out = kernels.imp_right(X.Q.kt, _c(values), _c(_entries(phi)), X.deg, _c(degrees))
    return _c(out.T)


def kan_left_values(phi, X, Y, degrees, values):
    """Rows of ``mu' o phi`` (presheaves on X) for presheaf rows on Y."""
    vt = _c(np.asarray(values).T)
    return _c(kernels.compose(X.Q.kt, vt, _c(_entries(phi)), Y.deg).T)


def kan_right_values(phi, X, Y, degrees, values):
    """Rows of ``mu <- phi`` (presheaves on Y) for presheaf rows on X."""
    vt = _c(np.asarray(values).T)
    return _c(kernels.imp_left(X.Q.kt, vt, _c(_entries(phi)), Y.deg, _c(degrees)).T)


def dual_kan_left_values(phi, X, Y, degrees, values):
    """Rows of ``phi -> lam'`` (copresheaves on X) for copresheaf rows on Y."""
    return kernels.imp_right(X.Q.kt, _c(_entries(phi)), _c(values), _c(degrees), X.deg)


def dual_kan_right_values(phi, X, Y, degrees, values):
    """Rows of ``phi o lam`` (copresheaves on Y) for copresheaf rows on X."""
    return kernels.compose(X.Q.kt, _c(_entries(phi)), _c(values), X.deg)


class _Spaces:
    """Lazily enumerated powersets of a pair of ordered sets."""

    def __init__(self, X, Y, PX=None, PdX=None, PY=None, PdY=None):
        self.X, self.Y = X, Y
        self._p = {"PX": PX, "PdX": PdX, "PY": PY, "PdY": PdY}

    def get(self, key):
        if self._p[key] is None:
            base = self.X if key.endswith("X") else self.Y
            self._p[key] = copresheaves(base) if key.startswith("Pd") else presheaves(base)
        return self._p[key]


def _pair(phi, X, Y, dom, cod, fwd, back, kind):
    left = powerset_map(dom, cod, lambda d, v: fwd(phi, X, Y, d, v))
    right = powerset_map(cod, dom, lambda d, v: back(phi, X, Y, d, v))
    return GaloisPair(left, right, kind, dom, cod)


def isbell(phi, X, Y, PX=None, PdY=None):
    """The polarity ``phi_up -| phi_down`` between ``PX`` and ``P^dag Y``."""
    sp = _Spaces(X, Y, PX=PX, PdY=PdY)
    return _pair(phi, X, Y, sp.get("PX"), sp.get("PdY"), isbell_up_values, isbell_down_values, "polarity")


def kan(phi, X, Y, PX=None, PY=None):
    """The axiality ``phi^* -| phi_*`` between ``PY`` and ``PX``."""
    sp = _Spaces(X, Y, PX=PX, PY=PY)
    return _pair(phi, X, Y, sp.get("PY"), sp.get("PX"), kan_left_values, kan_right_values, "axiality")


def dual_kan(phi, X, Y, PdX=None, PdY=None):
    """The dual axiality ``phi_dag -| phi^dag`` between ``P^dag Y`` and ``P^dag X``."""
    sp = _Spaces(X, Y, PdX=PdX, PdY=PdY)
    return _pair(
        phi, X, Y, sp.get("PdY"), sp.get("PdX"), dual_kan_left_values, dual_kan_right_values, "dual-axiality"
    )


def yoneda_identities(phi, X, Y):
    """Check that rows and columns of ``phi`` are recovered through the Yoneda embeddings.

    ``phi(x, -)`` equals both ``phi_up(y x)`` and ``phi^dag(y^dag x)``;
    ``phi(-, y)`` equals both ``phi_down(y^dag y)`` and ``phi^*(y y)``.
    """
    e = _c(_entries(phi))
    rows_up = isbell_up_values(e, X, Y, X.deg, _c(X.alpha.T))
    rows_dag = dual_kan_right_values(e, X, Y, X.deg, X.alpha)
    cols_down = isbell_down_values(e, X, Y, Y.deg, Y.alpha)
    cols_star = kan_left_values(e, X, Y, Y.deg, _c(Y.alpha.T))
    return {
        "rows_via_isbell": bool(np.array_equal(rows_up, e)),
        "rows_via_dual_kan": bool(np.array_equal(rows_dag, e)),
        "columns_via_isbell": bool(np.array_equal(cols_down, e.T)),
        "columns_via_kan": bool(np.array_equal(cols_star, e.T)),
    }


def _image(m, P, R, degrees, values):
    idx = P.locate(degrees, values)
    if (idx < 0).any():
        raise NotAdjoint("a representable is missing from the powerset of the pair")
    out = m.f[idx]
    return R.values[out]


def dist_from_pair(pair, X, Y):
    """Recover the distributor inducing a pair between powersets.

    For a polarity from ``X`` to ``Y`` the result is ``phi: X -o Y`` with
    ``phi(x, -) = f(y x)``. For an axiality or a dual axiality from ``Y`` to
    ``X`` (as produced by :func:`kan` and :func:`dual_kan` of some
    ``phi: X -o Y``) the result is that ``phi``.

    Raises
    ------
    NotAdjoint
        If the pair is not a Galois connection or is not induced by the
        recovered distributor.
    """
    if not is_galois(pair.left, pair.right):
        raise NotAdjoint("the pair is not a Galois connection")
    dom, cod = pair.domain, pair.codomain
    if pair.kind == "polarity":
        phi = _image(pair.left, dom, cod, X.deg, _c(X.alpha.T))
        again = isbell(phi, X, Y, PX=dom, PdY=cod)
    elif pair.kind == "axiality":
        phi = _c(_image(pair.left, dom, cod, Y.deg, _c(Y.alpha.T)).T)
        again = kan(phi, X, Y, PX=cod, PY=dom)
    elif pair.kind == "dual-axiality":
        phi = _c(_image(pair.right, cod, dom, X.deg, X.alpha))
        again = dual_kan(phi, X, Y, PdX=cod, PdY=dom)
    else:
        raise ValueError(f"no distributor for pairs of kind {pair.kind!r}")
    if not (
        np.array_equal(again.left.f, pair.left.f) and np.array_equal(again.right.f, pair.right.f)
    ):
        raise NotAdjoint("the pair is not induced by a distributor")
    return QRelation(X.carrier, Y.carrier, phi)


def order_isomorphism_check(phi, phi2, X, Y, PX=None, PY=None):
    """Compare two distributors directly and through their induced maps.

    Returns ``(direct, isbell_reversed, kan)``: ``phi <= phi2`` entrywise;
    ``phi <- mu <= phi2 <- mu`` for every presheaf ``mu`` on X (the reverse of
    the dual-powerset order); ``mu' o phi <= mu' o phi2`` for every presheaf
    on Y.
    """
    PX = presheaves(X) if PX is None else PX
    PY = presheaves(Y) if PY is None else PY
    kt = X.Q.kt
    a, b = _c(_entries(phi)), _c(_entries(phi2))
    direct = kernels.first_not_leq(kt, a, b) < 0
    ua = isbell_up_values(a, X, Y, PX.degrees, PX.values)
    ub_ = isbell_up_values(b, X, Y, PX.degrees, PX.values)
    ka = kan_left_values(a, X, Y, PY.degrees, PY.values)
    kb = kan_left_values(b, X, Y, PY.degrees, PY.values)
    return (
        direct,
        kernels.first_not_leq(kt, _c(ua), _c(ub_)) < 0,
        kernels.first_not_leq(kt, _c(ka), _c(kb)) < 0,
    )


def lifted_pairs(f, g, spaces=None):
    """The three powerset pairs built from ``f_nat`` and ``g^nat``.

    Returns a dict with ``polarity`` (``(f_nat)_up``, ``(g^nat)_down``),
    ``axiality`` (``(f_nat)^*``, ``(g^nat)_*``) and ``dual_axiality``
    (``(f_nat)_dag``, ``(g^nat)^dag``).
    """
    X, Y = f.source, f.target
    sp = spaces or _Spaces(X, Y)
    fn, gn = graph(f).entries, cograph(g).entries
    PX, PdX, PY, PdY = sp.get("PX"), sp.get("PdX"), sp.get("PY"), sp.get("PdY")

    def pair(dom, cod, fwd, back, kind):
        left = powerset_map(dom, cod, lambda d, v: fwd(fn, X, Y, d, v))
        right = powerset_map(cod, dom, lambda d, v: back(gn, X, Y, d, v))
        return GaloisPair(left, right, kind, dom, cod)

    return {
        "polarity": pair(PX, PdY, isbell_up_values, isbell_down_values, "polarity"),
        "axiality": pair(PY, PX, kan_left_values, kan_right_values, "axiality"),
        "dual_axiality": pair(PdY, PdX, dual_kan_left_values, dual_kan_right_values, "dual-axiality"),
    }


def lift_galois(f, g, spaces=None):
    """Lift ``f -| g`` to the three powerset pairs and check them.

    Raises
    ------
    NotAdjoint
        If ``f -| g`` fails.
    """
    if not is_galois(f, g):
        raise NotAdjoint("f and g do not form a Galois connection")
    X, Y = f.source, f.target
    pairs = lifted_pairs(f, g, spaces)
    for name, p in pairs.items():
        assert is_galois(p.left, p.right), f"lifted {name} is not a Galois pair"
    # (f_nat)_up y_X = y^dag_Y f and (g^nat)_down y^dag_Y = y_X g
    fn, gn = graph(f).entries, cograph(g).entries
    up = isbell_up_values(fn, X, Y, X.deg, _c(X.alpha.T))
    down = isbell_down_values(gn, X, Y, Y.deg, Y.alpha)
    assert np.array_equal(up, Y.alpha[f.f, :]), "lifted polarity does not extend f"
    assert np.array_equal(down, _c(X.alpha[:, g.f].T)), "lifted polarity does not extend g"
    return pairs


# -- fixed points -------------------------------------------------------------


@dataclass
class FixedPoints:
    """Members of ``pair.domain`` fixed by ``right . left`` with their images."""

    ordered: QOrderedSet
    members: list  # indices into pair.domain
    partners: list  # indices into pair.codomain
    pair: GaloisPair

    def __len__(self):
        return len(self.members)

    def extent(self, i):
        return self.pair.domain[self.members[i]]

    def intent(self, i):
        return self.pair.codomain[self.partners[i]]


def fixed_points(pair):
    """Fixed points of ``right . left``, ordered as in the domain powerset."""
    l, r = pair.left.f, pair.right.f
    members = [i for i in range(len(l)) if r[l[i]] == i]
    D = pair.left.source
    sub = D.carrier.restrict(members)
    ordered = QOrderedSet(sub, QRelation(sub, sub, D.alpha[np.ix_(members, members)]))
    return FixedPoints(ordered, members, [int(l[i]) for i in members], pair)


def macneille(X, PX=None, PdX=None):
    """Fixed points of the Isbell pair of the identity distributor ``alpha``."""
    return fixed_points(isbell(X.alpha, X, X, PX=PX, PdY=PdX))


def concept_lattice(context, mode="fca"):
    """Concepts of a context ``phi: X -> Y`` between discrete Q-subsets.

    ``mode="fca"`` uses the Isbell pair: extents are presheaves on ``X`` and
    intents copresheaves on ``Y``. ``mode="rst"`` uses the Kan pair, whose
    fixed points are presheaves on ``Y`` paired with their images on ``X``.
    Concepts of every degree are kept.
    """
    X, Y = discrete(context.source), discrete(context.target)
    if mode == "fca":
        pair = isbell(context.entries, X, Y)
    elif mode == "rst":
        pair = kan(context.entries, X, Y)
    else:
        raise ValueError("mode must be 'fca' or 'rst'")
    return fixed_points(pair)


# -- Cauchy completeness ----------------------------------------------------------


def left_adjoints_of_presheaf(mu, PdX=None):
    """Copresheaves ``lam`` of the same degree with ``lam -| mu``, as member indices of ``PdX``."""
    X = mu.base
    PdX = copresheaves(X) if PdX is None else PdX
    kt = X.Q.kt
    q = mu.degree
    out = []
    for i in np.flatnonzero(PdX.degrees == q):
        lam = PdX.values[i]
        unit = kernels.compose(kt, _c(mu.values[:, None]), _c(lam[None, :]), X.deg)  # mu o lam : 1_q -> 1_q
        if not X.Q.leq[q, unit[0, 0]]:
            continue
        counit = kernels.compose(kt, _c(lam[None, :]), _c(mu.values[:, None]), np.array([q], dtype=np.int32))
        if kernels.first_not_leq(kt, counit, X.alpha) < 0:
            out.append(int(i))
    return out


def is_right_adjoint_dist(mu, PdX=None):
    return bool(left_adjoints_of_presheaf(mu, PdX))


def cauchy_presheaves(X, PX=None, PdX=None):
    """The ordered set ``(PX)_c`` of right-adjoint presheaves and their indices in ``PX``."""
    PX = presheaves(X) if PX is None else PX
    PdX = copresheaves(X) if PdX is None else PdX
    keep = [i for i in range(len(PX)) if is_right_adjoint_dist(PX[i], PdX)]
    P = PX.ordered
    sub = P.carrier.restrict(keep)
    return QOrderedSet(sub, QRelation(sub, sub, P.alpha[np.ix_(keep, keep)])), keep


def cauchy_left_adjoints(X, PX=None, PdX=None):
    """Left adjoints of the Yoneda embedding corestricted to right-adjoint presheaves."""
    PX = presheaves(X) if PX is None else PX
    Pc, keep = cauchy_presheaves(X, PX, PdX)
    pos = {k: j for j, k in enumerate(keep)}
    y = yoneda_map(X, PX)
    assign = [pos[int(i)] for i in y.f]  # representables are right adjoints
    yc = QOrderMap(X, Pc, assign, check=False)
    return find_adjoint(yc, "left")


def is_cauchy_complete(X, PX=None, PdX=None):
    PX = presheaves(X) if PX is None else PX
    Pc, keep = cauchy_presheaves(X, PX, PdX)
    pos = {k: j for j, k in enumerate(keep)}
    y = yoneda_map(X, PX)
    yc = QOrderMap(X, Pc, [pos[int(i)] for i in y.f], check=False)
    return has_adjoint(yc, "left")
