"""Q-preordered Q-subsets and the maps between them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import caps, kernels
from .errors import (
    DimensionMismatch,
    InvalidMap,
    NotHoehlePreorder,
    NotInDiagonal,
    NotReflexive,
    NotTransitive,
    SizeCap,
)
from .qrel import QRelation, QSubset, identity


class QOrderedSet:
    """A Q-subset with a validated Q-preorder ``alpha`` on it.

    Use :func:`make_ordered` to build one from untrusted data; the
    constructor itself performs no checks.
    """

    __slots__ = ("carrier", "order", "_under")

    def __init__(self, carrier, order):
        self.carrier = carrier
        self.order = order
        self._under = None

    @property
    def Q(self):
        return self.carrier.Q

    @property
    def labels(self):
        return self.carrier.labels

    @property
    def deg(self):
        return self.carrier.deg

    @property
    def alpha(self):
        return self.order.entries

    @property
    def n(self):
        return self.carrier.n

    def index(self, label):
        return self.carrier.index(label)

    def value(self, x, y):
        return self.order.value(x, y)

    def underlying(self):
        if self._under is None:
            self._under = underlying_preorder(self)
        return self._under

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, QOrderedSet) and self.order == other.order

    def __hash__(self):
        return hash(self.order)

    def __repr__(self):
        return f"QOrderedSet({self.labels}, Q={self.Q.name})"


def _as_matrix(X, alpha):
    if isinstance(alpha, QRelation):
        return alpha.entries
    Q = X.Q
    rows = alpha.tolist() if isinstance(alpha, np.ndarray) else [list(r) for r in alpha]
    if len(rows) != X.n or any(len(r) != X.n for r in rows):
        raise DimensionMismatch(f"expected a {X.n}x{X.n} matrix")
    return np.array([[Q.index(v) for v in r] for r in rows], dtype=np.int32).reshape(X.n, X.n)


def _transitivity_witness(Q, alpha, deg):
    # first (x, y, z) in label order with alpha(y,z) & (|y| \ alpha(x,y)) not <= alpha(x,z)
    for x in range(len(deg)):
        t = Q.res_right[deg[:, None], alpha[x][:, None]]  # indexed by y
        terms = Q.mul[alpha, np.broadcast_to(t, alpha.shape)]  # (y, z)
        bad = ~Q.leq[terms, alpha[x][None, :]]
        if bad.any():
            y, z = divmod(int(np.flatnonzero(bad)[0]), len(deg))
            return x, y, z, int(terms[y, z])
    return None


def make_ordered(X, alpha):
    """Validate ``alpha`` as a Q-preorder on the Q-subset ``X``.

    The axioms are checked in the order divisibility, reflexivity,
    transitivity; the first failing one is raised with the first witness in
    label order.

    Raises
    ------
    NotInDiagonal, NotReflexive, NotTransitive
    """
    Q = X.Q
    a = np.ascontiguousarray(_as_matrix(X, alpha), dtype=np.int32)
    lbl = X.labels
    bad = kernels.first_not_in_diagonal(Q.kt, a, X.deg, X.deg)
    if bad >= 0:
        x, y = divmod(bad, X.n)
        allowed = ", ".join(Q.display(u) for u in Q.diagonal(int(X.deg[x]), int(X.deg[y])))
        raise NotInDiagonal(
            (lbl[x], lbl[y]),
            f"{Q.display(int(a[x, y]))} is not in D({Q.display(int(X.deg[x]))}, "
            f"{Q.display(int(X.deg[y]))}) = {{{allowed}}}",
        )
    for x in range(X.n):
        if not Q.leq[X.deg[x], a[x, x]]:
            raise NotReflexive(
                (lbl[x],), f"|x| = {Q.display(int(X.deg[x]))} is not below {Q.display(int(a[x, x]))}"
            )
    comp = kernels.compose(Q.kt, a, a, X.deg)
    if kernels.first_not_leq(Q.kt, comp, a) >= 0:
        x, y, z, v = _transitivity_witness(Q, a, X.deg)
        raise NotTransitive(
            (lbl[x], lbl[y], lbl[z]),
            f"composite {Q.display(v)} is not below {Q.display(int(a[x, z]))}",
        )
    return QOrderedSet(X, QRelation(X, X, a))


def discrete(X):
    """``X`` with the identity relation as its preorder."""
    return QOrderedSet(X, identity(X))


def self_degree_axioms(Q, alpha):
    """Check the two axioms that describe Q-preorders when ``Q`` is divisible.

    Returns ``(bounded, transitive)`` for ``alpha(x,y) <= alpha(x,x) ^ alpha(y,y)``
    and for both ``(alpha(y,z)/alpha(y,y)) & alpha(x,y)`` and
    ``alpha(y,z) & (alpha(y,y)\\alpha(x,y))`` lying below ``alpha(x,z)``. The two
    composites agree over a divisible quantale but not in general, so only the
    inequalities are required. Over a non-divisible quantale both axioms can
    hold while :func:`make_ordered` fails.
    """
    a = np.asarray(alpha, dtype=np.int64)
    d = np.diagonal(a)
    bounded = bool(Q.leq[a, Q.meet[d[:, None], d[None, :]]].all())
    n = len(d)
    transitive = True
    for x, y, z in product(range(n), repeat=3):
        lhs = Q.mul[Q.res_left[a[y, z], d[y]], a[x, y]]
        rhs = Q.mul[a[y, z], Q.res_right[d[y], a[x, y]]]
        if not (Q.leq[lhs, a[x, z]] and Q.leq[rhs, a[x, z]]):
            transitive = False
            break
    return bounded, transitive


def underlying_preorder(X):
    """Boolean matrix of ``x <= y``, which holds iff ``|x| = |y|`` and ``|x| <= alpha(x, y)``."""
    d = X.deg
    same = d[:, None] == d[None, :]
    out = same & X.Q.leq[np.broadcast_to(d[:, None], X.alpha.shape), X.alpha]
    out.flags.writeable = False
    return out


def is_separated(X):
    le = X.underlying()
    both = le & le.T
    return bool((both == np.eye(X.n, dtype=bool)).all())


def equivalence_classes(X):
    """Classes of mutually comparable labels in the underlying preorder, as index tuples."""
    le = X.underlying()
    seen, out = set(), []
    for i in range(X.n):
        if i in seen:
            continue
        cls = tuple(int(j) for j in np.flatnonzero(le[i] & le[:, i]))
        seen.update(cls)
        out.append(cls)
    return out


# -- maps -------------------------------------------------------------------


@dataclass(frozen=True)
class MapCheck:
    membership_preserving: bool
    order_preserving: bool
    fully_faithful: bool


def _assignment(X, Y, assignment):
    if isinstance(assignment, dict):
        try:
            idx = [Y.index(assignment[x]) for x in X.labels]
        except KeyError as exc:
            raise InvalidMap(f"assignment is missing or names an unknown label: {exc}") from None
    else:
        idx = [Y.index(v) for v in assignment]
    if len(idx) != X.n or any(not 0 <= i < Y.n for i in idx):
        raise InvalidMap("assignment must send every source label to a target label")
    arr = np.array(idx, dtype=np.int64).reshape(X.n)
    arr.flags.writeable = False
    return arr


def check_map(assignment, X, Y):
    """Membership preservation, order preservation and full faithfulness of a map."""
    f = _assignment(X, Y, assignment)
    mp = bool((Y.deg[f] == X.deg).all())
    image = Y.alpha[np.ix_(f, f)]
    op = bool(X.Q.leq[X.alpha, image].all())
    ff = op and bool((X.alpha == image).all())
    return MapCheck(mp, mp and op, mp and ff)


class QOrderMap:
    """A map between Q-ordered sets given by target indices.

    With ``check=True`` (the default) the map must be membership- and
    order-preserving; adjoint searches build unchecked candidates.
    """

    __slots__ = ("source", "target", "f")

    def __init__(self, source, target, assignment, check=True):
        self.source = source
        self.target = target
        self.f = _assignment(source, target, assignment)
        if check:
            c = check_map(self.f, source, target)
            if not c.membership_preserving:
                raise InvalidMap("map does not preserve membership degrees")
            if not c.order_preserving:
                raise InvalidMap("map does not preserve the Q-preorder")

    def __call__(self, x):
        return self.target.labels[self.f[self.source.index(x)]]

    def check(self):
        return check_map(self.f, self.source, self.target)

    def as_dict(self):
        return {x: self.target.labels[i] for x, i in zip(self.source.labels, self.f)}

    def __eq__(self, other):
        return (
            isinstance(other, QOrderMap)
            and self.source == other.source
            and self.target == other.target
            and bool((self.f == other.f).all())
        )

    def __hash__(self):
        return hash(self.f.tobytes())

    def __repr__(self):
        return f"QOrderMap({self.as_dict()})"


def identity_map(X):
    return QOrderMap(X, X, np.arange(X.n), check=False)


def compose_maps(g, f):
    """``g . f``; the result is checked only if both factors could be."""
    return QOrderMap(f.source, g.target, g.f[f.f], check=False)


def graph(f):
    """``f_nat(x, y) = beta(f x, y)``."""
    _require_valid(f)
    return QRelation(f.source.carrier, f.target.carrier, f.target.alpha[f.f, :])


def cograph(f):
    """``f^nat(y, x) = beta(y, f x)``."""
    _require_valid(f)
    return QRelation(f.target.carrier, f.source.carrier, f.target.alpha[:, f.f])


def _require_valid(f):
    if not f.check().order_preserving:
        raise InvalidMap("graph and cograph need a membership- and order-preserving map")


def map_leq(f, g):
    """``f <= g`` iff ``|x| <= beta(f x, g x)`` for every ``x``."""
    if f.source != g.source or f.target != g.target:
        raise DimensionMismatch("maps are not parallel")
    Q = f.source.Q
    return bool(Q.leq[f.source.deg, f.target.alpha[f.f, g.f]].all())


def map_equiv(f, g):
    return map_leq(f, g) and map_leq(g, f)


def is_isomorphism(f):
    """Fully faithful and bijective."""
    return f.source.n == f.target.n and len(set(f.f.tolist())) == f.source.n and f.check().fully_faithful


def coreflect(X, keep):
    """Restrict ``X`` to the labels whose degree lies in ``keep``."""
    Q = X.Q
    keep = {Q.index(s) for s in keep}
    idx = [i for i in range(X.n) if int(X.deg[i]) in keep]
    sub = X.carrier.restrict(idx)
    return QOrderedSet(sub, QRelation(sub, sub, X.alpha[np.ix_(idx, idx)]))


def inclusion(sub, X):
    """The inclusion of a coreflected part back into ``X``."""
    return QOrderMap(sub, X, [X.index(x) for x in sub.labels], check=False)


# -- Hoehle's Q-valued preorders ---------------------------------------------


def _hoehle_witness(Q, a):
    n = a.shape[0]
    d = np.diagonal(a)
    for x, y in product(range(n), repeat=2):
        u = a[x, y]
        if Q.mul[Q.res_left[u, d[y]], d[y]] != u or Q.mul[d[x], Q.res_right[d[x], u]] != u:
            return (x, y), "divisibility"
    for x, y, z in product(range(n), repeat=3):
        lhs = Q.mul[a[x, y], Q.res_right[d[y], a[y, z]]]
        alt = Q.mul[Q.res_left[a[x, y], d[y]], a[y, z]]
        if lhs != alt or not Q.leq[lhs, a[x, z]]:
            return (x, y, z), "transitivity"
    return None


def from_hoehle(alpha, Q, labels=None):
    """Read a Q-valued preorder in Hoehle's sense as an ordered set over the conjugate of ``Q``.

    The membership of ``x`` is ``alpha(x, x)``.
    """
    rows = alpha.tolist() if isinstance(alpha, np.ndarray) else [list(r) for r in alpha]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("a Q-valued preorder needs a square matrix")
    a = np.array([[Q.index(v) for v in r] for r in rows], dtype=np.int32).reshape(n, n)
    labels = list(labels) if labels is not None else [f"x{i}" for i in range(n)]
    hit = _hoehle_witness(Q, a)
    if hit is not None:
        where, axiom = hit
        raise NotHoehlePreorder(tuple(labels[i] for i in where), f"{axiom} fails")
    T = Q.conjugate()
    X = QSubset(T, labels, [int(v) for v in np.diagonal(a)])
    return make_ordered(X, a)


def to_hoehle(X):
    """Return ``(alpha, Q^t)``: the preorder read as a Hoehle preorder over the conjugate quantale.

    Different memberships can give the same result, so the conversion
    is lossy unless the quantale is integral.
    """
    Q = X.Q
    if Q.is_integral():
        assert (np.diagonal(X.alpha) == X.deg).all(), "integral quantale with alpha(x,x) != |x|"
    return X.alpha.copy(), Q.conjugate()


# -- counting ----------------------------------------------------------------


def enumerate_memberships(Q, labels, alpha):
    """All membership maps on which ``alpha`` is a Q-preorder, in lexicographic order.

    Reflexivity and transitivity constrain each degree separately, so they
    prune candidate lists before the pairwise diagonal condition is checked.
    """
    labels = list(labels)
    n = len(labels)
    X0 = QSubset(Q, labels, [Q.unit] * n)
    a = _as_matrix(X0, alpha).astype(np.int64)
    if Q.n**n > caps.cap("memberships"):
        raise SizeCap(f"{Q.n}^{n} membership maps exceed the cap {caps.cap('memberships')}")
    cands = []
    for y in range(n):
        ok = []
        for d in range(Q.n):
            if not Q.leq[d, a[y, y]] or not Q.in_diag[d, d, a[y, y]]:
                continue
            terms = Q.mul[a[y, :][None, :], Q.res_right[d, a[:, y]][:, None]]  # (x, z)
            if Q.leq[terms, a].all():
                ok.append(d)
        cands.append(ok)
    out = []
    deg = [0] * n

    def rec(i):
        if i == n:
            out.append(tuple(deg))
            return
        for d in cands[i]:
            deg[i] = d
            if all(Q.in_diag[deg[j], d, a[j, i]] and Q.in_diag[d, deg[j], a[i, j]] for j in range(i)):
                rec(i + 1)

    rec(0)
    return out


def count_singleton_preorders(Q, q=None):
    """Number of values ``a`` for which ``[[a]]`` is a Q-preorder on ``1_q`` (default ``q = e``)."""
    q = Q.unit if q is None else Q.index(q)
    X = QSubset.singleton(Q, q)
    count = 0
    for a in range(Q.n):
        try:
            make_ordered(X, [[a]])
        except (NotInDiagonal, NotReflexive, NotTransitive):
            continue
        count += 1
    return count
