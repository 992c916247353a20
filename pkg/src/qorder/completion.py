"""Suprema, infima, tensors and cotensors in Q-ordered sets.

Everything here returns *witness sets*: the labels that represent the
requested relation. A supremum is only defined up to isomorphism in the
underlying preorder, so no representative is chosen; an empty tuple means
the supremum does not exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import caps, kernels
from .errors import InvalidScalar, SizeCap
from .presheaf import (
    Copresheaf,
    Presheaf,
    copresheaves,
    dual_forward_values,
    forward_values,
    presheaves,
)
from .qord import QOrderMap


def _row_index(X, rows):
    table = {}
    for s in range(X.n):
        table.setdefault((int(X.deg[s]), rows[s].tobytes()), []).append(s)
    return table


def _lookup(table, degrees, rows):
    rows = np.ascontiguousarray(rows, dtype=np.int32)
    return [tuple(table.get((int(d), r.tobytes()), ())) for d, r in zip(degrees, rows)]


def ub_values(X, degrees, values):
    """Rows of ``alpha <- mu`` for presheaf rows ``values``."""
    vt = np.ascontiguousarray(np.asarray(values, dtype=np.int32).T)
    return kernels.imp_left(X.Q.kt, X.alpha, vt, np.ascontiguousarray(degrees, dtype=np.int32), X.deg)


def lb_values(X, degrees, values):
    """Rows of ``lam -> alpha`` for copresheaf rows ``values``."""
    vals = np.ascontiguousarray(values, dtype=np.int32)
    out = kernels.imp_right(X.Q.kt, vals, X.alpha, X.deg, np.ascontiguousarray(degrees, dtype=np.int32))
    return np.ascontiguousarray(out.T)


def sup_indices(X, degrees, values):
    """Witness index tuples of the suprema of many presheaves at once."""
    rows = ub_values(X, degrees, values)
    return _lookup(_row_index(X, np.ascontiguousarray(X.alpha)), degrees, rows)


def inf_indices(X, degrees, values):
    cols = lb_values(X, degrees, values)
    return _lookup(_row_index(X, np.ascontiguousarray(X.alpha.T)), degrees, cols)


def sup(X, mu):
    """Labels ``s`` with ``|s| = |mu|`` and ``alpha(s, -) = alpha <- mu``."""
    hit = sup_indices(X, [mu.degree], mu.values[None, :])[0]
    return tuple(X.labels[i] for i in hit)


def inf(X, lam):
    """Labels ``s`` with ``|s| = |lam|`` and ``alpha(-, s) = lam -> alpha``."""
    hit = inf_indices(X, [lam.degree], lam.values[None, :])[0]
    return tuple(X.labels[i] for i in hit)


def ub(X, mu):
    """Upper bounds ``alpha <- mu`` as a copresheaf of the same degree."""
    return Copresheaf(X, mu.degree, ub_values(X, [mu.degree], mu.values[None, :])[0])


def lb(X, lam):
    """Lower bounds ``lam -> alpha`` as a presheaf of the same degree."""
    return Presheaf(X, lam.degree, lb_values(X, [lam.degree], lam.values[None, :])[0])


def _scalar_rows(X, x, side):
    """All legal scalars for point ``x`` as ``(qs, us)`` arrays."""
    Q = X.Q
    d = int(X.deg[x])
    qs, us = [], []
    for q in range(Q.n):
        for u in Q.diagonal(d, q) if side == "tensor" else Q.diagonal(q, d):
            qs.append(q)
            us.append(u)
    return np.array(qs, dtype=np.int32), np.array(us, dtype=np.int32)


def _tensor_rows(X, x, qs, us):
    row = np.ascontiguousarray(X.alpha[x : x + 1, :])
    return kernels.imp_left(X.Q.kt, row, np.ascontiguousarray(us[None, :]), qs, X.deg)


def _cotensor_cols(X, x, qs, vs):
    col = np.ascontiguousarray(X.alpha[:, x : x + 1])
    out = kernels.imp_right(X.Q.kt, np.ascontiguousarray(vs[:, None]), col, X.deg, qs)
    return np.ascontiguousarray(out.T)


def tensor(X, u, x, q):
    """Labels ``t`` with ``|t| = q`` and ``alpha(t, -) = alpha(x, -) <- u``.

    Raises
    ------
    InvalidScalar
        If ``u`` is not in ``D(|x|, q)``.
    """
    Q = X.Q
    i, u, q = X.index(x), Q.index(u), Q.index(q)
    if not Q.in_diagonal(u, int(X.deg[i]), q):
        raise InvalidScalar(f"{Q.display(u)} is not in D({Q.display(int(X.deg[i]))}, {Q.display(q)})")
    qs, us = np.array([q], dtype=np.int32), np.array([u], dtype=np.int32)
    rows = _tensor_rows(X, i, qs, us)
    hit = _lookup(_row_index(X, np.ascontiguousarray(X.alpha)), qs, rows)[0]
    return tuple(X.labels[j] for j in hit)


def cotensor(X, v, x, q):
    """Labels ``t`` with ``|t| = q`` and ``alpha(-, t) = v -> alpha(-, x)``.

    Raises
    ------
    InvalidScalar
        If ``v`` is not in ``D(q, |x|)``.
    """
    Q = X.Q
    i, v, q = X.index(x), Q.index(v), Q.index(q)
    if not Q.in_diagonal(v, q, int(X.deg[i])):
        raise InvalidScalar(f"{Q.display(v)} is not in D({Q.display(q)}, {Q.display(int(X.deg[i]))})")
    qs, vs = np.array([q], dtype=np.int32), np.array([v], dtype=np.int32)
    cols = _cotensor_cols(X, i, qs, vs)
    hit = _lookup(_row_index(X, np.ascontiguousarray(X.alpha.T)), qs, cols)[0]
    return tuple(X.labels[j] for j in hit)


def tensored_witness(X):
    """First ``(u, x, q)`` without a tensor, or ``None`` when ``X`` is tensored."""
    table = _row_index(X, np.ascontiguousarray(X.alpha))
    Q = X.Q
    for x in range(X.n):
        qs, us = _scalar_rows(X, x, "tensor")
        hits = _lookup(table, qs, _tensor_rows(X, x, qs, us))
        for q, u, h in zip(qs, us, hits):
            if not h:
                return (Q.label(int(u)), X.labels[x], Q.label(int(q)))
    return None


def cotensored_witness(X):
    table = _row_index(X, np.ascontiguousarray(X.alpha.T))
    Q = X.Q
    for x in range(X.n):
        qs, vs = _scalar_rows(X, x, "cotensor")
        hits = _lookup(table, qs, _cotensor_cols(X, x, qs, vs))
        for q, v, h in zip(qs, vs, hits):
            if not h:
                return (Q.label(int(v)), X.labels[x], Q.label(int(q)))
    return None


def is_tensored(X):
    return tensored_witness(X) is None


def is_cotensored(X):
    return cotensored_witness(X) is None


def order_complete_witness(X):
    """First degree ``q`` and subset of ``X_q`` without a join, or ``None``.

    Joins are least upper bounds in the underlying preorder, up to
    equivalence; the empty subset needs a least element of ``X_q``.
    """
    Q = X.Q
    le = X.underlying()
    limit = caps.cap("order_complete")
    for q in range(Q.n):
        part = [int(i) for i in np.flatnonzero(X.deg == q)]
        m = len(part)
        if m > limit:
            raise SizeCap(f"|X_q| = {m} exceeds the order_complete cap {limit}")
        up = [sum(1 << j for j in range(m) if le[part[i], part[j]]) for i in range(m)]
        full = (1 << m) - 1
        bounds = [full] * (1 << m)
        for S in range(1 << m):
            if S:
                low = (S & -S).bit_length() - 1
                bounds[S] = bounds[S & (S - 1)] & up[low]
            U = bounds[S]
            if not any(U >> j & 1 and U & ~up[j] == 0 for j in range(m)):
                return Q.label(q), tuple(X.labels[part[j]] for j in range(m) if S >> j & 1)
    return None


def is_order_complete(X):
    return order_complete_witness(X) is None


@dataclass
class CompletenessReport:
    tensored: bool
    cotensored: bool
    order_complete: bool
    complete: bool
    inf_complete: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def characterization_holds(self):
        """Complete iff tensored, cotensored and order-complete."""
        return self.complete == (self.tensored and self.cotensored and self.order_complete)

    @property
    def sup_inf_agree(self):
        """All suprema exist iff all infima exist."""
        return self.complete == self.inf_complete

    def as_dict(self):
        return {
            "tensored": self.tensored,
            "cotensored": self.cotensored,
            "order_complete": self.order_complete,
            "complete": self.complete,
            "inf_complete": self.inf_complete,
            "characterization_holds": self.characterization_holds,
            "witnesses": self.witnesses,
        }


def missing_sup(X, PX=None):
    """Label of the first presheaf without a supremum, or ``None``."""
    PX = presheaves(X) if PX is None else PX
    for i, hit in enumerate(sup_indices(X, PX.degrees, PX.values)):
        if not hit:
            return PX[i].label
    return None


def missing_inf(X, PdX=None):
    PdX = copresheaves(X) if PdX is None else PdX
    for i, hit in enumerate(inf_indices(X, PdX.degrees, PdX.values)):
        if not hit:
            return PdX[i].label
    return None


def is_complete(X, PX=None):
    return missing_sup(X, PX) is None


def completeness_report(X, PX=None, PdX=None):
    """Compute completeness and its three ingredients independently."""
    w = {}
    no_sup = missing_sup(X, PX)
    no_inf = missing_inf(X, PdX)
    t = tensored_witness(X)
    c = cotensored_witness(X)
    o = order_complete_witness(X)
    for key, val in (("sup", no_sup), ("inf", no_inf), ("tensor", t), ("cotensor", c), ("join", o)):
        if val is not None:
            w[key] = val
    return CompletenessReport(
        tensored=t is None,
        cotensored=c is None,
        order_complete=o is None,
        complete=no_sup is None,
        inf_complete=no_inf is None,
        witnesses=w,
    )


def sup_preservation_witness(f, PX=None):
    """First presheaf whose supremum ``f`` fails to carry to a supremum, or ``None``."""
    X, Y = f.source, f.target
    PX = presheaves(X) if PX is None else PX
    src = sup_indices(X, PX.degrees, PX.values)
    img = forward_values(f, PX.degrees, PX.values)
    tgt = sup_indices(Y, PX.degrees, img)
    for i, (s, t) in enumerate(zip(src, tgt)):
        if s and int(f.f[s[0]]) not in t:
            return PX[i].label
    return None


def inf_preservation_witness(f, PdX=None):
    X, Y = f.source, f.target
    PdX = copresheaves(X) if PdX is None else PdX
    src = inf_indices(X, PdX.degrees, PdX.values)
    img = dual_forward_values(f, PdX.degrees, PdX.values)
    tgt = inf_indices(Y, PdX.degrees, img)
    for i, (s, t) in enumerate(zip(src, tgt)):
        if s and int(f.f[s[0]]) not in t:
            return PdX[i].label
    return None


def is_sup_preserving(f, PX=None):
    return sup_preservation_witness(f, PX) is None


def is_inf_preserving(f, PdX=None):
    return inf_preservation_witness(f, PdX) is None


def sup_map(X, PX=None):
    """``sup: PX -> X`` choosing the first witness; needs ``X`` complete."""
    PX = presheaves(X) if PX is None else PX
    hits = sup_indices(X, PX.degrees, PX.values)
    if any(not h for h in hits):
        raise ValueError("X is not complete")
    return QOrderMap(PX.ordered, X, [h[0] for h in hits], check=False)


def inf_map(X, PdX=None):
    PdX = copresheaves(X) if PdX is None else PdX
    hits = inf_indices(X, PdX.degrees, PdX.values)
    if any(not h for h in hits):
        raise ValueError("X is not complete")
    return QOrderMap(PdX.ordered, X, [h[0] for h in hits], check=False)


def extension_along(m, f):
    """Extend ``f: X -> Z`` along ``m: X -> Y`` into a complete ``Z``.

    ``g(y)`` is a supremum in ``Z`` of the forward image under ``f`` of the
    presheaf ``beta(m -, y)``. When ``m`` is fully faithful, ``g . m`` agrees with
    ``f`` up to isomorphism (exactly, if ``Z`` is separated).
    """
    Y, Z = m.target, f.target
    vals = np.ascontiguousarray(Y.alpha[m.f, :].T)  # row y: beta(m -, y)
    img = forward_values(f, Y.deg, vals)
    hits = sup_indices(Z, Y.deg, img)
    if any(not h for h in hits):
        raise ValueError("the target has no supremum for some image; it is not complete")
    return QOrderMap(Y, Z, [h[0] for h in hits], check=False)
