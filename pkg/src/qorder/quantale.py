"""Finite unital quantales.

A :class:`FiniteQuantale` is a finite lattice with a monoid multiplication
that preserves joins in each argument. Elements are the indices
``0..n-1``; every derived operation (joins, meets, both residuations,
diagonal sets) is tabulated once at construction so that the rest of the
library only ever performs table lookups.

Validation only checks binary joins, meets and the empty join. For a
finite poset, pairwise joins plus a bottom element give all joins, so the
lattice is complete; likewise a multiplication preserving binary joins and
bottom preserves every (necessarily finite) join.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from pathlib import Path

import numpy as np

from . import caps
from .errors import AxiomError, ParseError, UnsupportedSize

_SYMBOLS = {"bot": "⊥", "top": "⊤"}
_ALIASES = {"⊥": "bot", "⊤": "top", "_|_": "bot", "T": "top"}


def _greatest(masks, leq):
    """Index of the greatest element of each boolean row of ``masks``, or -1."""
    masks = np.atleast_2d(masks)
    counts = masks.astype(np.int64) @ leq.astype(np.int64)
    sizes = masks.sum(axis=1, keepdims=True)
    hit = masks & (counts == sizes)
    out = np.where(hit.any(axis=1), hit.argmax(axis=1), -1)
    return out


class FiniteQuantale:
    """A validated finite unital quantale with precomputed tables.

    Parameters
    ----------
    name : str
    elements : sequence of str
        Element labels; index ``i`` is the element ``elements[i]``.
    leq : (n, n) array of bool
        A partial order; must make the elements a lattice.
    mul : (n, n) array of int
        ``mul[p, q]`` is ``p & q``.
    unit : int

    Raises
    ------
    AxiomError
        Naming the first violated axiom, checked in the order lattice,
        unit, associativity, join preservation, non-triviality.
    """

    def __init__(self, name, elements, leq, mul, unit):
        self.name = name
        self.elements = tuple(elements)
        n = len(self.elements)
        self.n = n
        if n == 0:
            raise AxiomError("not-a-lattice", "no elements")
        if len(set(self.elements)) != n:
            raise AxiomError("not-a-lattice", "duplicate element labels")
        self._index = {lbl: i for i, lbl in enumerate(self.elements)}
        leq = np.array(leq, dtype=bool)
        mul = np.array(mul, dtype=np.int32)
        if leq.shape != (n, n) or mul.shape != (n, n):
            raise AxiomError("not-a-lattice", "table shapes do not match the element count")
        if mul.min() < 0 or mul.max() >= n:
            raise AxiomError("not-a-lattice", "multiplication table has out-of-range entries")
        self.unit = int(unit)
        self.leq = leq
        self.mul = mul
        self._check_lattice()
        self._check_monoid()
        self._check_distributive()
        if self.bottom == self.unit:
            raise AxiomError("trivial", "bottom equals the unit")
        for arr in (self.leq, self.mul, self.join, self.meet):
            arr.flags.writeable = False
        self._derive()
        self._kernel_tables = None
        self._conjugate = None

    # -- validation ---------------------------------------------------

    def _check_lattice(self):
        n, leq = self.n, self.leq
        if not leq.diagonal().all():
            raise AxiomError("not-a-lattice", "order is not reflexive")
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise AxiomError(
                "not-a-lattice",
                f"order is not antisymmetric ({self.elements[i]} and {self.elements[j]})",
            )
        trans = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
        if (trans & ~leq).any():
            raise AxiomError("not-a-lattice", "order is not transitive")
        join = np.empty((n, n), dtype=np.int32)
        meet = np.empty((n, n), dtype=np.int32)
        for p in range(n):
            ub = leq[p][None, :] & leq  # ub[q, u]: u above p and q
            lb = leq[:, p][None, :] & leq.T  # lb[q, u]: u below p and q
            least = _greatest(ub, leq.T)
            greatest = _greatest(lb, leq)
            for q in range(n):
                if least[q] < 0:
                    raise AxiomError(
                        "not-a-lattice",
                        f"{self.elements[p]} and {self.elements[q]} have no join",
                    )
                if greatest[q] < 0:
                    raise AxiomError(
                        "not-a-lattice",
                        f"{self.elements[p]} and {self.elements[q]} have no meet",
                    )
            join[p] = least
            meet[p] = greatest
        self.join = join
        self.meet = meet
        bottoms = np.flatnonzero(leq.all(axis=1))
        tops = np.flatnonzero(leq.all(axis=0))
        self.bottom = int(bottoms[0])
        self.top = int(tops[0])

    def _check_monoid(self):
        n, mul, e = self.n, self.mul, self.unit
        if not 0 <= e < n:
            raise AxiomError("unit-failure", "unit is not an element")
        idx = np.arange(n)
        for p in range(n):
            if mul[e, p] != p or mul[p, e] != p:
                lbl = self.elements
                bad = f"{lbl[e]}&{lbl[p]} = {lbl[mul[e, p]]}, {lbl[p]}&{lbl[e]} = {lbl[mul[p, e]]}"
                raise AxiomError("unit-failure", bad)
        left = mul[mul[:, :, None], idx[None, None, :]]  # (p&q)&r
        right = mul[idx[:, None, None], mul[None, :, :]]  # p&(q&r)
        diff = np.argwhere(left != right)
        if len(diff):
            p, q, r = (self.elements[int(i)] for i in diff[0])
            raise AxiomError("non-associative", f"({p}&{q})&{r} != {p}&({q}&{r})")

    def _check_distributive(self):
        n, mul, join, bot = self.n, self.mul, self.join, self.bottom
        idx = np.arange(n)
        lbl = self.elements
        if (mul[:, bot] != bot).any() or (mul[bot, :] != bot).any():
            raise AxiomError("non-distributive", "multiplication does not preserve the bottom")
        # p & (q v r) == (p & q) v (p & r)
        lhs = mul[idx[:, None, None], join[None, :, :]]
        rhs = join[mul[:, :, None], mul[:, None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            p, q, r = (lbl[int(i)] for i in bad[0])
            raise AxiomError("non-distributive", f"{p}&({q} v {r}) != {p}&{q} v {p}&{r}")
        # (q v r) & p == (q & p) v (r & p)
        lhs = mul[join[:, :, None], idx[None, None, :]]
        rhs = join[mul[:, None, :], mul[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            q, r, p = (lbl[int(i)] for i in bad[0])
            raise AxiomError("non-distributive", f"({q} v {r})&{p} != {q}&{p} v {r}&{p}")

    # -- derived tables -------------------------------------------------

    def _derive(self):
        n, mul, leq = self.n, self.mul, self.leq
        # res_left[r, q] = r/q: greatest p with p&q <= r
        below = leq[mul[:, :, None], np.arange(n)[None, None, :]]  # below[p, q, r]: p&q <= r
        res_left = _greatest(below.transpose(2, 1, 0).reshape(n * n, n), leq).reshape(n, n)
        # res_right[p, r] = p\r: greatest q with p&q <= r
        res_right = _greatest(below.transpose(0, 2, 1).reshape(n * n, n), leq).reshape(n, n)
        self.res_left = res_left.astype(np.int32)
        self.res_right = res_right.astype(np.int32)
        # diagonal sets: (u/p)&p == u and q&(q\u) == u
        idx = np.arange(n)
        right_div = mul[self.res_left.T, idx[:, None]] == idx[None, :]  # [p, u]
        left_div = mul[idx[:, None], self.res_right] == idx[None, :]  # [q, u]
        in_diag = right_div[:, None, :] & left_div[None, :, :]  # [p, q, u]
        self.in_diag = in_diag.astype(np.uint8)
        self.diag = tuple(
            tuple(sum(1 << int(u) for u in np.flatnonzero(in_diag[p, q])) for q in range(n))
            for p in range(n)
        )
        # floor[p, q, v]: greatest member of D(p, q) below v
        masks = in_diag[:, :, :, None] & leq[None, None, :, :]  # [p, q, u, v]
        masks = masks.transpose(0, 1, 3, 2).reshape(n * n * n, n)
        floor = _greatest(masks, leq).reshape(n, n, n)
        if (floor < 0).any():
            raise AxiomError("non-distributive", "a diagonal set is not closed under joins")
        self.floor = floor.astype(np.int32)
        self.diag_max = self.floor[:, :, self.top].copy()
        for arr in (self.res_left, self.res_right, self.in_diag, self.floor, self.diag_max):
            arr.flags.writeable = False

    # -- element access -------------------------------------------------

    def index(self, label):
        """Element index for ``label`` (``bot``/``top`` and their symbols are accepted)."""
        if isinstance(label, (int, np.integer)):
            if 0 <= label < self.n:
                return int(label)
            raise KeyError(label)
        if label in self._index:
            return self._index[label]
        alias = _ALIASES.get(label, label)
        if alias == "bot":
            return self.bottom
        if alias == "top":
            return self.top
        if alias == "e" and "e" not in self._index:
            return self.unit
        raise KeyError(f"{label!r} is not an element of {self.name}")

    def label(self, i):
        return self.elements[i]

    def display(self, i):
        lbl = self.elements[i]
        return _SYMBOLS.get(lbl, lbl)

    def le(self, p, q):
        return bool(self.leq[p, q])

    def join_all(self, items):
        out = self.bottom
        for x in items:
            out = int(self.join[out, x])
        return out

    def meet_all(self, items):
        out = self.top
        for x in items:
            out = int(self.meet[out, x])
        return out

    # -- operations -----------------------------------------------------

    def residuate(self, p, q, side):
        """Residuation in the quantale.

        ``side="left"`` returns ``q/p``, the greatest ``x`` with ``x&p <= q``;
        ``side="right"`` returns ``p\\q``, the greatest ``x`` with ``p&x <= q``.
        """
        if side == "left":
            return int(self.res_left[q, p])
        if side == "right":
            return int(self.res_right[p, q])
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")

    def diagonal(self, p, q):
        """Sorted tuple of the members of the diagonal set ``D(p, q)``."""
        bits = self.diag[p][q]
        return tuple(u for u in range(self.n) if bits >> u & 1)

    def in_diagonal(self, u, p, q):
        return bool(self.diag[p][q] >> u & 1)

    def diag_floor(self, p, q, v):
        """Greatest member of ``D(p, q)`` below ``v``."""
        return int(self.floor[p, q, v])

    def is_integral(self):
        return self.unit == self.top

    def is_commutative(self):
        return bool((self.mul == self.mul.T).all())

    def is_divisible(self):
        for p in range(self.n):
            for q in range(self.n):
                m = self.meet[p, q]
                down = sum(1 << u for u in range(self.n) if self.leq[u, m])
                if self.diag[p][q] != down:
                    return False
        return True

    def idempotents_above_unit(self):
        return tuple(
            q for q in range(self.n) if self.mul[q, q] == q and self.leq[self.unit, q]
        )

    def classify(self):
        return {
            "integral": self.is_integral(),
            "divisible": self.is_divisible(),
            "commutative": self.is_commutative(),
            "idempotents_above_unit": self.idempotents_above_unit(),
        }

    def conjugate(self):
        """The quantale on the same lattice with multiplication ``p & q := q & p``."""
        if self._conjugate is None:
            name = self.name[:-2] if self.name.endswith("^t") else self.name + "^t"
            conj = FiniteQuantale(name, self.elements, self.leq, self.mul.T, self.unit)
            conj._conjugate = self
            self._conjugate = conj
        return self._conjugate

    @property
    def kt(self):
        """Kernel tables for the active backend (built lazily)."""
        if self._kernel_tables is None:
            from . import kernels

            self._kernel_tables = kernels.make_tables(self)
        return self._kernel_tables

    # -- identity -------------------------------------------------------

    def _key(self):
        return (self.elements, self.unit, self.leq.tobytes(), self.mul.tobytes())

    def __eq__(self, other):
        return isinstance(other, FiniteQuantale) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FiniteQuantale({self.name!r}, n={self.n})"


# ---------------------------------------------------------------------------
# builtins


def _chain_leq(n):
    return np.arange(n)[:, None] <= np.arange(n)[None, :]


def _bool2():
    return FiniteQuantale("bool2", ["bot", "top"], _chain_leq(2), [[0, 0], [0, 1]], 1)


def _c3():
    # bot, e, top with top&top = top, e the unit and bot absorbing
    mul = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]
    return FiniteQuantale("c3", ["bot", "e", "top"], _chain_leq(3), mul, 1)


def _c4():
    # bot < a < b < top, unit top; a.a = b.a = bot, a.b = a, b.b = b
    mul = [
        [0, 0, 0, 0],
        [0, 0, 1, 1],
        [0, 0, 2, 2],
        [0, 1, 2, 3],
    ]
    return FiniteQuantale("c4", ["bot", "a", "b", "top"], _chain_leq(4), mul, 3)


def _lukasiewicz(n):
    if n < 1:
        raise UnsupportedSize("lukasiewicz(n) needs n >= 1")
    if n + 1 > caps.cap("quantale"):
        raise UnsupportedSize(f"lukasiewicz({n}) has {n + 1} elements")
    labels = [str(Fraction(k, n)) for k in range(n + 1)]
    mul = [[max(0, a + b - n) for b in range(n + 1)] for a in range(n + 1)]
    return FiniteQuantale(f"lukasiewicz({n})", labels, _chain_leq(n + 1), mul, n)


def _sup_endo(m):
    """Join-preserving self-maps of the m-element chain under composition."""
    if m < 2:
        raise UnsupportedSize("sup_endo(m) needs m >= 2")
    maps = [
        (0,) + rest
        for rest in product(range(m), repeat=m - 1)
        if all(a <= b for a, b in zip((0,) + rest, rest))
    ]
    if len(maps) > caps.cap("quantale"):
        raise UnsupportedSize(f"sup_endo({m}) has {len(maps)} elements")
    index = {f: i for i, f in enumerate(maps)}
    leq = [[all(a <= b for a, b in zip(f, g)) for g in maps] for f in maps]
    mul = [[index[tuple(f[g[i]] for i in range(m))] for g in maps] for f in maps]
    labels = ["f" + "".join(map(str, f)) for f in maps]
    return FiniteQuantale(f"sup_endo({m})", labels, leq, mul, index[tuple(range(m))])


def _rel(k):
    """All binary relations on a k-set; ``p & q`` relates i to j via q then p."""
    if k < 1:
        raise UnsupportedSize("rel(k) needs k >= 1")
    if k > 2:
        raise UnsupportedSize(f"rel({k}) has 2^{k * k} elements; the cap is k <= 2")
    cells = [(i, j) for i in range(k) for j in range(k)]
    rels = [frozenset(c for bit, c in enumerate(cells) if mask >> bit & 1) for mask in range(1 << len(cells))]
    index = {r: i for i, r in enumerate(rels)}

    def compose(p, q):
        return frozenset((i, j) for (i, m) in q for (m2, j) in p if m == m2)

    leq = [[a <= b for b in rels] for a in rels]
    mul = [[index[compose(p, q)] for q in rels] for p in rels]
    labels = ["r" + "".join("1" if c in r else "0" for c in cells) for r in rels]
    ident = frozenset((i, i) for i in range(k))
    return FiniteQuantale(f"rel({k})", labels, leq, mul, index[ident])


_MONOIDS = {f"z{k}": ([[(a + b) % k for b in range(k)] for a in range(k)], 0) for k in range(1, 5)}


def _free(table, unit, name="free"):
    """Powerset of a finite monoid with elementwise multiplication."""
    m = len(table)
    if m > 4:
        raise UnsupportedSize(f"free quantale over a {m}-element monoid exceeds the cap |M| <= 4")
    subsets = [frozenset(i for i in range(m) if mask >> i & 1) for mask in range(1 << m)]
    index = {s: i for i, s in enumerate(subsets)}
    leq = [[a <= b for b in subsets] for a in subsets]
    mul = [[index[frozenset(table[a][b] for a in A for b in B)] for B in subsets] for A in subsets]
    labels = ["{" + ",".join(map(str, sorted(s))) + "}" for s in subsets]
    return FiniteQuantale(name, labels, leq, mul, index[frozenset([unit])])


BUILTIN_NAMES = ("bool2", "c3", "c4", "lukasiewicz", "sup_endo", "rel", "free")


def builtin(name, *args, **params):
    """Construct one of the built-in quantales.

    ``builtin("c3")``, ``builtin("lukasiewicz", 4)``, ``builtin("sup_endo", 3)``,
    ``builtin("rel", 2)``, ``builtin("free", "z2")`` or
    ``builtin("free", table=[[0, 1], [1, 0]], unit=0)``.
    A single string such as ``"lukasiewicz(4)"`` is also accepted.
    """
    m = re.fullmatch(r"\s*([a-z_0-9]+)\s*(?:\(\s*([^)]*)\s*\))?\s*", name)
    if m is None:
        raise KeyError(f"unknown builtin quantale {name!r}")
    base, arg = m.group(1), m.group(2)
    if arg:
        args = (arg,) + args
    if base == "bool2":
        return _bool2()
    if base == "c3":
        return _c3()
    if base == "c4":
        return _c4()
    if base == "lukasiewicz":
        return _lukasiewicz(int(args[0]) if args else int(params.get("n", 4)))
    if base == "sup_endo":
        return _sup_endo(int(args[0]) if args else int(params.get("m", 3)))
    if base == "rel":
        return _rel(int(args[0]) if args else int(params.get("k", 2)))
    if base == "free":
        if "table" in params:
            return _free(params["table"], params.get("unit", 0))
        key = str(args[0]) if args else "z2"
        if key not in _MONOIDS:
            raise KeyError(f"unknown monoid {key!r}; pass table= and unit= instead")
        table, unit = _MONOIDS[key]
        return _free(table, unit, name=f"free({key})")
    raise KeyError(f"unknown builtin quantale {name!r}")


# ---------------------------------------------------------------------------
# file format


def load_quantale(text, name=None):
    """Parse and validate the line-oriented quantale format.

    ::

        quantale c3
        elements bot e top
        unit e
        order bot<e e<top
        mul bot bot bot
        ...             # one line for every ordered pair

    ``order`` tokens are pairs ``a<b``; the reflexive-transitive closure is
    taken. All ``n*n`` products must be listed.
    """
    qname = name
    elements = None
    unit = None
    covers = []
    muls = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "quantale":
            if len(rest) != 1:
                raise ParseError("expected 'quantale <name>'", lineno)
            qname = qname or rest[0]
        elif head == "elements":
            if elements is not None:
                raise ParseError("duplicate 'elements' line", lineno)
            if not rest:
                raise ParseError("'elements' needs at least one label", lineno)
            elements = rest
        elif head == "unit":
            if len(rest) != 1:
                raise ParseError("expected 'unit <label>'", lineno)
            unit = rest[0]
        elif head == "order":
            for tok in rest:
                a, sep, b = tok.partition("<")
                if not sep or not a or not b:
                    raise ParseError(f"bad order token {tok!r}", lineno)
                covers.append((a, b, lineno))
        elif head == "mul":
            if len(rest) != 3:
                raise ParseError("expected 'mul <p> <q> <r>'", lineno)
            key = (rest[0], rest[1])
            if key in muls:
                raise ParseError(f"duplicate product for {key}", lineno)
            muls[key] = (rest[2], lineno)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if elements is None:
        raise ParseError("missing 'elements' line")
    if unit is None:
        raise ParseError("missing 'unit' line")
    index = {lbl: i for i, lbl in enumerate(elements)}
    if len(index) != len(elements):
        raise ParseError("duplicate element labels")

    def look(lbl, lineno=None):
        if lbl not in index:
            raise ParseError(f"unknown element {lbl!r}", lineno)
        return index[lbl]

    n = len(elements)
    leq = np.eye(n, dtype=bool)
    for a, b, lineno in covers:
        leq[look(a, lineno), look(b, lineno)] = True
    for k in range(n):  # Warshall closure
        leq |= leq[:, k][:, None] & leq[k, :][None, :]
    mul = np.zeros((n, n), dtype=np.int32)
    for p in elements:
        for q in elements:
            if (p, q) not in muls:
                raise ParseError(f"missing product 'mul {p} {q} ...'")
    for (p, q), (r, lineno) in muls.items():
        mul[look(p, lineno), look(q, lineno)] = look(r, lineno)
    return FiniteQuantale(qname or "quantale", elements, leq, mul, look(unit))


def dump_quantale(Q):
    """Serialize ``Q`` in the format read by :func:`load_quantale`."""
    lines = [f"quantale {Q.name}", "elements " + " ".join(Q.elements), f"unit {Q.label(Q.unit)}"]
    covers = []
    for a in range(Q.n):
        for b in range(Q.n):
            if a != b and Q.leq[a, b]:
                if not any(c not in (a, b) and Q.leq[a, c] and Q.leq[c, b] for c in range(Q.n)):
                    covers.append(f"{Q.label(a)}<{Q.label(b)}")
    if covers:
        lines.append("order " + " ".join(covers))
    for p in range(Q.n):
        for q in range(Q.n):
            lines.append(f"mul {Q.label(p)} {Q.label(q)} {Q.label(Q.mul[p, q])}")
    return "\n".join(lines) + "\n"


def resolve_quantale(ref, base_dir=None):
    """A builtin name (``c3``, ``lukasiewicz(4)``) or a path to a quantale file."""
    path = Path(ref)
    if base_dir is not None and not path.is_absolute():
        candidate = Path(base_dir) / path
        if candidate.is_file():
            path = candidate
    if path.is_file():
        return load_quantale(path.read_text(encoding="utf-8"))
    try:
        return builtin(ref)
    except (KeyError, ValueError, IndexError) as exc:
        raise ParseError(f"{ref!r} is neither a quantale file nor a builtin name") from exc
