"""Potential lower and upper Q-subsets and the powersets they form.

A presheaf ``mu: X -> 1_q`` is stored as its degree ``q`` and the vector
``mu(x)``; a copresheaf ``lam: 1_q -> X`` likewise. Powersets keep all their
members in one ``(k, n)`` matrix so that whole-powerset operations (the
preorder, image maps, suprema) run as single kernel calls where the
relation being composed has one column or row per member.
"""

from __future__ import annotations

from math import prod

import numpy as np

from . import caps, kernels
from .errors import NotClosed, SizeCap
from .qord import QOrderedSet, QOrderMap, cograph, graph
from .qrel import QRelation, QSubset


def _ro(arr, dtype=np.int32):
    out = np.array(arr, dtype=dtype, order="C")
    out.flags.writeable = False
    return out


class _Potential:
    __slots__ = ("base", "degree", "values")
    dual = False

    def __init__(self, base, degree, values):
        self.base = base
        self.degree = int(degree)
        self.values = values if isinstance(values, np.ndarray) and not values.flags.writeable else _ro(values)

    @property
    def Q(self):
        return self.base.Q

    @property
    def label(self):
        return canonical_label(self.Q, self.degree, self.values)

    def value(self, x):
        return int(self.values[self.base.index(x)])

    def point(self):
        return QSubset.singleton(self.Q, self.degree)

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and self.degree == other.degree
            and bool((self.values == other.values).all())
            and (self.base is other.base or self.base == other.base)
        )

    def __hash__(self):
        return hash((self.dual, self.degree, self.values.tobytes()))

    def __repr__(self):
        kind = "Copresheaf" if self.dual else "Presheaf"
        return f"{kind}({self.label})"


class Presheaf(_Potential):
    """A potential lower Q-subset ``mu: X -> 1_q``."""

    __slots__ = ()

    def as_relation(self):
        return QRelation(self.base.carrier, self.point(), self.values[:, None])


class Copresheaf(_Potential):
    """A potential upper Q-subset ``lam: 1_q -> X``."""

    __slots__ = ()
    dual = True

    def as_relation(self):
        return QRelation(self.point(), self.base.carrier, self.values[None, :])


def canonical_label(Q, degree, values):
    return "{" + ",".join(Q.label(int(v)) for v in values) + "}@" + Q.label(int(degree))


def presheaf_from_relation(X, rel):
    """Read a relation ``X -> 1_q`` as a presheaf (no closure check)."""
    return Presheaf(X, int(rel.target.deg[0]), rel.entries[:, 0])


def copresheaf_from_relation(X, rel):
    return Copresheaf(X, int(rel.source.deg[0]), rel.entries[0, :])


def _closure_violations(X, degrees, values, dual):
    """Row indices of ``values`` that fail the diagonal or closure conditions."""
    Q = X.Q
    kt = Q.kt
    values = np.ascontiguousarray(values, dtype=np.int32)
    degrees = np.ascontiguousarray(degrees, dtype=np.int32)
    if dual:
        legal = Q.in_diag[degrees[:, None], X.deg[None, :], values].all(axis=1)
        closed = kernels.compose(kt, X.alpha, values, X.deg)  # alpha o lam, rows are members
    else:
        legal = Q.in_diag[X.deg[None, :], degrees[:, None], values].all(axis=1)
        closed = kernels.compose(kt, np.ascontiguousarray(values.T), X.alpha, X.deg).T
    below = Q.leq[closed, values].all(axis=1)
    return np.flatnonzero(~(legal & below))


def make_presheaf(X, q, values, dual=False):
    """Validated (co)presheaf on ``X`` at degree ``q``.

    ``values`` is a sequence in label order or a mapping from labels;
    missing labels default to bottom.

    Raises
    ------
    NotClosed
        If a value leaves its diagonal set or the closure condition fails.
    """
    Q = X.Q
    q = Q.index(q)
    if isinstance(values, dict):
        vals = [Q.index(values.get(x, Q.bottom)) for x in X.labels]
    else:
        vals = [Q.index(v) for v in values]
    if len(vals) != X.n:
        raise NotClosed(None, f"expected {X.n} values, got {len(vals)}")
    arr = _ro(vals)
    if len(_closure_violations(X, [q], arr[None, :], dual)):
        for i, v in enumerate(vals):
            ok = Q.in_diag[q, X.deg[i], v] if dual else Q.in_diag[X.deg[i], q, v]
            if not ok:
                raise NotClosed(X.labels[i], f"{Q.display(v)} is outside its diagonal set")
        kind = "upper" if dual else "lower"
        raise NotClosed(None, f"the values do not form a potential {kind} Q-subset")
    return (Copresheaf if dual else Presheaf)(X, q, arr)


def make_copresheaf(X, q, values):
    return make_presheaf(X, q, values, dual=True)


class Powerset:
    """All presheaves (``dual=False``) or all copresheaves of a base ordered set.

    Members are indexed in canonical order: by degree index, then
    lexicographically by value vector.
    """

    def __init__(self, base, dual, degrees, values):
        self.base = base
        self.dual = dual
        self.degrees = _ro(degrees)
        self.values = _ro(values).reshape(len(self.degrees), base.n)
        self._lookup = None
        self._ordered = None

    @property
    def Q(self):
        return self.base.Q

    def __len__(self):
        return len(self.degrees)

    def __getitem__(self, i):
        cls = Copresheaf if self.dual else Presheaf
        return cls(self.base, self.degrees[i], self.values[i])

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    @property
    def labels(self):
        Q = self.Q
        return [canonical_label(Q, d, v) for d, v in zip(self.degrees, self.values)]

    def locate(self, degrees, values):
        """Member indices of the given rows; -1 where a row is not a member."""
        if self._lookup is None:
            self._lookup = {
                (int(d), row.tobytes()): i for i, (d, row) in enumerate(zip(self.degrees, self.values))
            }
        values = np.ascontiguousarray(values, dtype=np.int32)
        return np.array(
            [self._lookup.get((int(d), row.tobytes()), -1) for d, row in zip(degrees, values)],
            dtype=np.int64,
        )

    def index_of(self, p):
        return int(self.locate([p.degree], p.values[None, :])[0])

    def order_matrix(self):
        """``mu' <- mu`` at ``(mu, mu')`` for presheaves, ``lam' -> lam`` at ``(lam, lam')`` for copresheaves."""
        kt = self.Q.kt
        if self.dual:
            return kernels.imp_right(kt, self.values, self.values, self.degrees, self.degrees)
        vt = np.ascontiguousarray(self.values.T)
        return kernels.imp_left(kt, vt, vt, self.degrees, self.degrees)

    @property
    def ordered(self):
        """The powerset as a :class:`QOrderedSet` (computed on first use)."""
        if self._ordered is None:
            carrier = QSubset(self.Q, self.labels, self.degrees.tolist())
            self._ordered = QOrderedSet(carrier, QRelation(carrier, carrier, self.order_matrix()))
        return self._ordered

    def __repr__(self):
        kind = "dual powerset" if self.dual else "powerset"
        return f"<{kind} of {self.base.labels}: {len(self)} members>"


def size_estimate(X, dual=False):
    """Sum over degrees of the product of per-label candidate counts."""
    Q = X.Q
    total = 0
    for q in range(Q.n):
        if dual:
            sizes = [len(Q.diagonal(q, int(d))) for d in X.deg]
        else:
            sizes = [len(Q.diagonal(int(d), q)) for d in X.deg]
        total += prod(sizes)
    return total


def _enumerate(X, dual):
    limit = caps.cap("powerset")
    est = size_estimate(X, dual)
    if est > limit:
        kind = "dual powerset" if dual else "powerset"
        raise SizeCap(f"{kind} estimate {est} exceeds the cap {limit}")
    Q = X.Q
    alpha = np.ascontiguousarray(X.alpha, dtype=np.int32)
    fn = kernels.enumerate_copresheaves if dual else kernels.enumerate_presheaves
    blocks, degs = [], []
    for q in range(Q.n):
        block = fn(Q.kt, alpha, X.deg, q, limit)
        blocks.append(block)
        degs.append(np.full(len(block), q, dtype=np.int32))
    values = np.concatenate(blocks, axis=0) if blocks else np.empty((0, X.n), dtype=np.int32)
    return Powerset(X, dual, np.concatenate(degs), values)


def presheaves(X):
    """The Q-powerset ``PX``.

    Raises
    ------
    SizeCap
        If the candidate estimate exceeds the ``powerset`` cap.
    """
    return _enumerate(X, False)


def copresheaves(X):
    """The dual Q-powerset ``P^dag X``."""
    return _enumerate(X, True)


# -- Yoneda ------------------------------------------------------------------


def yoneda(X, x):
    """``y x = alpha(-, x)`` at degree ``|x|``."""
    i = X.index(x)
    return Presheaf(X, X.deg[i], X.alpha[:, i])


def co_yoneda(X, x):
    """``y^dag x = alpha(x, -)`` at degree ``|x|``."""
    i = X.index(x)
    return Copresheaf(X, X.deg[i], X.alpha[i, :])


def yoneda_map(X, PX=None):
    PX = presheaves(X) if PX is None else PX
    idx = PX.locate(X.deg, np.ascontiguousarray(X.alpha.T))
    return QOrderMap(X, PX.ordered, idx, check=False)


def co_yoneda_map(X, PdX=None):
    PdX = copresheaves(X) if PdX is None else PdX
    idx = PdX.locate(X.deg, X.alpha)
    return QOrderMap(X, PdX.ordered, idx, check=False)


# -- image maps --------------------------------------------------------------


def forward_values(f, degrees, values):
    """Rows of ``mu o f^nat`` for presheaf rows on the source of ``f``."""
    kt = f.source.Q.kt
    vt = np.ascontiguousarray(np.asarray(values, dtype=np.int32).T)
    return np.ascontiguousarray(kernels.compose(kt, vt, cograph(f).entries, f.source.deg).T)


def backward_values(f, degrees, values):
    """Rows of ``mu o f_nat`` for presheaf rows on the target of ``f``."""
    kt = f.source.Q.kt
    vt = np.ascontiguousarray(np.asarray(values, dtype=np.int32).T)
    return np.ascontiguousarray(kernels.compose(kt, vt, graph(f).entries, f.target.deg).T)


def dual_forward_values(f, degrees, values):
    """Rows of ``f_nat o lam`` for copresheaf rows on the source of ``f``."""
    kt = f.source.Q.kt
    vals = np.ascontiguousarray(values, dtype=np.int32)
    return kernels.compose(kt, graph(f).entries, vals, f.source.deg)


def dual_backward_values(f, degrees, values):
    """Rows of ``f^nat o lam`` for copresheaf rows on the target of ``f``."""
    kt = f.source.Q.kt
    vals = np.ascontiguousarray(values, dtype=np.int32)
    return kernels.compose(kt, cograph(f).entries, vals, f.target.deg)


def forward_image(f, mu):
    """``f-> mu = mu o f^nat``, a presheaf on the target."""
    v = forward_values(f, [mu.degree], mu.values[None, :])[0]
    return Presheaf(f.target, mu.degree, v)


def backward_image(f, mu):
    """``f<- mu = mu o f_nat``, a presheaf on the source."""
    v = backward_values(f, [mu.degree], mu.values[None, :])[0]
    return Presheaf(f.source, mu.degree, v)


def dual_forward_image(f, lam):
    """``f_nat o lam``, a copresheaf on the target."""
    v = dual_forward_values(f, [lam.degree], lam.values[None, :])[0]
    return Copresheaf(f.target, lam.degree, v)


def dual_backward_image(f, lam):
    """``f^nat o lam``, a copresheaf on the source."""
    v = dual_backward_values(f, [lam.degree], lam.values[None, :])[0]
    return Copresheaf(f.source, lam.degree, v)


def powerset_map(P, R, fn, *args):
    """Apply a batch value transform to every member of ``P``, landing in ``R``."""
    vals = fn(*args, P.degrees, P.values)
    idx = R.locate(P.degrees, vals)
    if (idx < 0).any():
        raise AssertionError("image of a member is not in the target powerset")
    return QOrderMap(P.ordered, R.ordered, idx, check=False)


def image_maps(f, PX=None, PY=None, PdX=None, PdY=None):
    """The four maps between powersets induced by ``f: X -> Y``.

    Returns a dict with keys ``forward`` (PX -> PY), ``backward`` (PY -> PX),
    ``dual_forward`` (P^dag X -> P^dag Y) and ``dual_backward`` (P^dag Y -> P^dag X).
    """
    X, Y = f.source, f.target
    PX = presheaves(X) if PX is None else PX
    PY = presheaves(Y) if PY is None else PY
    PdX = copresheaves(X) if PdX is None else PdX
    PdY = copresheaves(Y) if PdY is None else PdY
    return {
        "forward": powerset_map(PX, PY, forward_values, f),
        "backward": powerset_map(PY, PX, backward_values, f),
        "dual_forward": powerset_map(PdX, PdY, dual_forward_values, f),
        "dual_backward": powerset_map(PdY, PdX, dual_backward_values, f),
    }


def is_member(X, degree, values, dual=False):
    """Whether a degree/value vector is a (co)presheaf on ``X``."""
    return len(_closure_violations(X, [int(degree)], np.asarray(values)[None, :], dual)) == 0
