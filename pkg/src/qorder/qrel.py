"""Q-subsets and Q-relations between them.

A Q-relation ``phi: X -> Y`` is a matrix whose ``(x, y)`` entry lies in the
diagonal set ``D(|x|, |y|)``. The hom-set of such matrices is a complete
lattice in which joins are entrywise but meets generally are not: the
entrywise meet can leave the diagonal sets, so it is pushed down to the
largest legal entry below it.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import DimensionMismatch, EntryOutOfDiagonal


def _frozen(arr, shape=None):
    out = np.asarray(arr, dtype=np.int32)
    if shape is not None:
        out = out.reshape(shape)
    if out.flags.writeable or not out.flags.c_contiguous:
        out = np.array(out, dtype=np.int32, order="C")
        out.flags.writeable = False
    return out


class QSubset:
    """A finite carrier with a membership degree for every label."""

    __slots__ = ("Q", "labels", "deg", "_index")

    def __init__(self, Q, labels, membership):
        labels = tuple(str(lbl) for lbl in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("carrier labels must be unique")
        membership = list(membership)
        if len(membership) != len(labels):
            raise DimensionMismatch(f"{len(labels)} labels but {len(membership)} degrees")
        self.Q = Q
        self.labels = labels
        self.deg = _frozen([Q.index(m) for m in membership], (len(labels),))
        self._index = {lbl: i for i, lbl in enumerate(labels)}

    @classmethod
    def crisp(cls, Q, labels):
        return cls(Q, labels, [Q.unit] * len(labels))

    @classmethod
    def singleton(cls, Q, q, label="*"):
        """The one-point Q-subset ``1_q``."""
        return cls(Q, [label], [q])

    @property
    def n(self):
        return len(self.labels)

    def index(self, label):
        if isinstance(label, (int, np.integer)):
            return int(label)
        return self._index[label]

    def degree(self, label):
        return int(self.deg[self.index(label)])

    def restrict(self, indices):
        return QSubset(self.Q, [self.labels[i] for i in indices], [int(self.deg[i]) for i in indices])

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, QSubset):
            return NotImplemented
        return (
            self.labels == other.labels
            and (self.Q is other.Q or self.Q == other.Q)
            and bool((self.deg == other.deg).all())
        )

    def __hash__(self):
        return hash((self.labels, self.deg.tobytes()))

    def __repr__(self):
        items = ", ".join(f"{l}:{self.Q.display(d)}" for l, d in zip(self.labels, self.deg))
        return f"QSubset({items})"


def _same_space(a, b):
    return a is b or a == b


class QRelation:
    """A degree-constrained matrix ``source -> target``.

    Build validated relations with :func:`validate_relation`; the plain
    constructor trusts its input and is used internally for results of the
    calculus, which are always legal.
    """

    __slots__ = ("source", "target", "entries")

    def __init__(self, source, target, entries):
        self.source = source
        self.target = target
        self.entries = _frozen(entries, (source.n, target.n))

    @property
    def Q(self):
        return self.source.Q

    @property
    def shape(self):
        return self.entries.shape

    def value(self, x, y):
        return int(self.entries[self.source.index(x), self.target.index(y)])

    def row(self, x):
        """``phi(x, -)`` as a relation ``1_|x| -> Y``."""
        i = self.source.index(x)
        src = QSubset(self.Q, [self.source.labels[i]], [int(self.source.deg[i])])
        return QRelation(src, self.target, self.entries[i : i + 1])

    def col(self, y):
        """``phi(-, y)`` as a relation ``X -> 1_|y|``."""
        j = self.target.index(y)
        tgt = QSubset(self.Q, [self.target.labels[j]], [int(self.target.deg[j])])
        return QRelation(self.source, tgt, self.entries[:, j : j + 1])

    def transpose_labels(self):
        return [[self.Q.display(v) for v in row] for row in self.entries.tolist()]

    def __eq__(self, other):
        return (
            isinstance(other, QRelation)
            and self.entries.shape == other.entries.shape
            and bool((self.entries == other.entries).all())
            and _same_space(self.source, other.source)
            and _same_space(self.target, other.target)
        )

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __le__(self, other):
        _check_parallel(self, other)
        return kernels.first_not_leq(self.Q.kt, self.entries, other.entries) < 0

    def __ge__(self, other):
        return other.__le__(self)

    def __repr__(self):
        return f"QRelation({self.source.labels} -> {self.target.labels}, {self.transpose_labels()})"


def _check_parallel(a, b):
    if a.entries.shape != b.entries.shape or not _same_space(a.source, b.source) or not _same_space(a.target, b.target):
        raise DimensionMismatch("relations are not parallel")


def validate_relation(X, Y, matrix):
    """Build a relation ``X -> Y`` from a matrix of element indices or labels.

    Raises
    ------
    DimensionMismatch
        If the matrix shape is not ``|X| x |Y|``.
    EntryOutOfDiagonal
        For the first entry (in row-major label order) outside its diagonal set.
    """
    Q = X.Q
    rows = [list(r) for r in matrix] if not isinstance(matrix, np.ndarray) else matrix.tolist()
    if len(rows) != X.n or any(len(r) != Y.n for r in rows):
        raise DimensionMismatch(f"expected a {X.n}x{Y.n} matrix")
    arr = np.array([[Q.index(v) for v in r] for r in rows], dtype=np.int32).reshape(X.n, Y.n)
    bad = kernels.first_not_in_diagonal(Q.kt, arr, X.deg, Y.deg)
    if bad >= 0:
        i, j = divmod(bad, Y.n)
        allowed = [Q.display(u) for u in Q.diagonal(int(X.deg[i]), int(Y.deg[j]))]
        raise EntryOutOfDiagonal(X.labels[i], Y.labels[j], Q.display(int(arr[i, j])), allowed)
    return QRelation(X, Y, arr)


def identity(X):
    """``id_X``: ``|x|`` on the diagonal and bottom elsewhere."""
    arr = np.full((X.n, X.n), X.Q.bottom, dtype=np.int32)
    np.fill_diagonal(arr, X.deg)
    return QRelation(X, X, arr)


def bottom(X, Y):
    return QRelation(X, Y, np.full((X.n, Y.n), X.Q.bottom, dtype=np.int32))


def top(X, Y):
    """Largest relation: each entry is the maximum of its diagonal set."""
    return QRelation(X, Y, X.Q.diag_max[X.deg[:, None], Y.deg[None, :]])


def scalar(Q, p, q, u):
    """An element ``u`` of ``D(p, q)`` viewed as a relation ``1_p -> 1_q``."""
    return validate_relation(QSubset.singleton(Q, p), QSubset.singleton(Q, q), [[u]])


def compose(psi, phi):
    """``psi o phi`` for ``phi: X -> Y`` and ``psi: Y -> Z``."""
    if phi.entries.shape[1] != psi.entries.shape[0] or not _same_space(phi.target, psi.source):
        raise DimensionMismatch("psi.source must equal phi.target")
    out = kernels.compose(phi.Q.kt, psi.entries, phi.entries, phi.target.deg)
    return QRelation(phi.source, psi.target, out)


def imp_left(xi, phi):
    """``xi <- phi``: the largest ``psi: Y -> Z`` with ``psi o phi <= xi``."""
    if xi.entries.shape[0] != phi.entries.shape[0] or not _same_space(xi.source, phi.source):
        raise DimensionMismatch("xi and phi must share their source")
    out = kernels.imp_left(phi.Q.kt, xi.entries, phi.entries, phi.target.deg, xi.target.deg)
    return QRelation(phi.target, xi.target, out)


def imp_right(psi, xi):
    """``psi -> xi``: the largest ``phi: X -> Y`` with ``psi o phi <= xi``."""
    if psi.entries.shape[1] != xi.entries.shape[1] or not _same_space(psi.target, xi.target):
        raise DimensionMismatch("psi and xi must share their target")
    out = kernels.imp_right(psi.Q.kt, psi.entries, xi.entries, xi.source.deg, psi.source.deg)
    return QRelation(xi.source, psi.source, out)


def hom_join(rels, X=None, Y=None):
    """Join in the hom-lattice; ``X`` and ``Y`` are needed only for an empty family."""
    rels = list(rels)
    if not rels:
        if X is None or Y is None:
            raise DimensionMismatch("the empty join needs explicit source and target")
        return bottom(X, Y)
    acc = rels[0]
    for r in rels[1:]:
        _check_parallel(acc, r)
        acc = QRelation(acc.source, acc.target, kernels.hom_join(acc.Q.kt, acc.entries, r.entries))
    return acc


def hom_meet(rels, X=None, Y=None):
    """Meet in the hom-lattice (not the entrywise meet)."""
    rels = list(rels)
    if not rels:
        if X is None or Y is None:
            raise DimensionMismatch("the empty meet needs explicit source and target")
        return top(X, Y)
    acc = top(rels[0].source, rels[0].target)
    for r in rels:
        _check_parallel(acc, r)
        acc = QRelation(
            acc.source,
            acc.target,
            kernels.hom_meet(acc.Q.kt, acc.entries, r.entries, acc.source.deg, acc.target.deg),
        )
    return acc


def is_relation(X, Y, arr):
    """Whether a raw index matrix has every entry in its diagonal set."""
    arr = np.ascontiguousarray(arr, dtype=np.int32)
    return kernels.first_not_in_diagonal(X.Q.kt, arr, X.deg, Y.deg) < 0


def format_matrix(rel):
    """Plain-text table of a relation, one row per source label."""
    Q = rel.Q
    cells = [[""] + list(rel.target.labels)]
    for i, lbl in enumerate(rel.source.labels):
        cells.append([lbl] + [Q.display(int(v)) for v in rel.entries[i]])
    widths = [max(len(r[k]) for r in cells) for k in range(len(cells[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)
