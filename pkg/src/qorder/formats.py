"""Line-oriented text formats for contexts, ordered sets, maps and presheaves.

Context / ordered-set file::

    context <name> over <quantale>
    source <label>:<degree> ...     # a bare <label> has degree e
    target <label>:<degree> ...     # omitted for an ordered set
    rel <x> <y> <value>

Missing ``rel`` entries are bottom. ``<quantale>`` is a builtin name or a
path to a quantale file (relative paths resolve against the file's folder).

Map file::

    map <name> from <ord-file> to <ord-file>
    send <x> <y>

Presheaf file (a lower Q-subset of an ordered set given separately)::

    presheaf <name> degree <q>
    value <x> <u>

``#`` starts a comment everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError
from .presheaf import Copresheaf, make_presheaf
from .qord import QOrderMap, make_ordered
from .qrel import QSubset, validate_relation
from .quantale import resolve_quantale


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _entries(Q, tokens, no):
    labels, degs = [], []
    for tok in tokens:
        lbl, sep, d = tok.rpartition(":")
        if not sep:
            lbl, d = tok, Q.label(Q.unit)  # a bare label is crisp
        if not lbl:
            raise ParseError(f"expected <label>:<degree>, got {tok!r}", no)
        try:
            degs.append(Q.index(d))
        except (KeyError, ValueError, IndexError):
            raise ParseError(f"unknown quantale element {d!r}", no) from None
        labels.append(lbl)
    return labels, degs


@dataclass
class Context:
    name: str
    quantale_ref: str
    source: QSubset
    target: QSubset
    relation: object  # QRelation, or None when parsed without validation
    same_carrier: bool
    matrix: object = None  # raw index matrix


def parse_context(text, base_dir=None, validate=True):
    """Parse a context or ordered-set file into a :class:`Context`.

    With ``validate=False`` the entries are not checked against the diagonal
    sets and only ``matrix`` is filled in.

    Raises
    ------
    ParseError
        On malformed lines or unknown labels.
    DimensionMismatch, EntryOutOfDiagonal
        From relation validation.
    """
    header = None
    Q = None
    src = tgt = None
    rels = []
    for no, tok in _lines(text):
        kw = tok[0]
        if kw == "context":
            if header is not None or len(tok) != 4 or tok[2] != "over":
                raise ParseError("expected 'context <name> over <quantale>'", no)
            header = tok[1]
            ref = tok[3]
            Q = resolve_quantale(ref, base_dir)
        elif header is None:
            raise ParseError("file must start with a 'context' line", no)
        elif kw in ("source", "target"):
            labels, degs = _entries(Q, tok[1:], no)
            try:
                sub = QSubset(Q, labels, degs)
            except ValueError as exc:
                raise ParseError(str(exc), no) from None
            if kw == "source":
                if src is not None:
                    raise ParseError("duplicate 'source' line", no)
                src = sub
            else:
                if tgt is not None:
                    raise ParseError("duplicate 'target' line", no)
                tgt = sub
        elif kw == "rel":
            if len(tok) != 4:
                raise ParseError("expected 'rel <x> <y> <value>'", no)
            rels.append((no, tok[1], tok[2], tok[3]))
        else:
            raise ParseError(f"unknown keyword {kw!r}", no)
    if header is None:
        raise ParseError("empty context file")
    if src is None:
        raise ParseError("missing 'source' line")
    same = tgt is None
    if same:
        tgt = src
    matrix = [[Q.bottom] * tgt.n for _ in range(src.n)]
    for no, x, y, v in rels:
        try:
            i, j = src.index(x), tgt.index(y)
        except KeyError as exc:
            raise ParseError(f"unknown label {exc}", no) from None
        try:
            matrix[i][j] = Q.index(v)
        except (KeyError, ValueError, IndexError):
            raise ParseError(f"unknown quantale element {v!r}", no) from None
    arr = np.array(matrix, dtype=np.int32).reshape(src.n, tgt.n)
    rel = validate_relation(src, tgt, arr) if validate else None
    return Context(header, ref, src, tgt, rel, same, arr)


def load_context(path, validate=True):
    path = Path(path)
    return parse_context(path.read_text(encoding="utf-8"), path.parent, validate)


def load_ordered(path):
    """An ordered-set file as a validated :class:`QOrderedSet`."""
    ctx = load_context(path)
    if not ctx.same_carrier and ctx.source != ctx.target:
        raise ParseError("an ordered-set file needs source = target")
    return make_ordered(ctx.source, ctx.relation.entries)


def dump_context(rel, name="context", quantale_ref=None, ordered=False):
    """Serialize a relation; ``ordered=True`` writes an ordered-set file (no target line)."""
    Q = rel.Q
    ref = quantale_ref or Q.name

    def side(kw, X):
        return kw + " " + " ".join(f"{l}:{Q.label(int(d))}" for l, d in zip(X.labels, X.deg))

    out = [f"context {name} over {ref}", side("source", rel.source)]
    if not ordered:
        out.append(side("target", rel.target))
    for i, x in enumerate(rel.source.labels):
        for j, y in enumerate(rel.target.labels):
            v = int(rel.entries[i, j])
            if v != Q.bottom:
                out.append(f"rel {x} {y} {Q.label(v)}")
    return "\n".join(out) + "\n"


def dump_ordered(X, name="ord", quantale_ref=None):
    return dump_context(X.order, name, quantale_ref, ordered=True)


def parse_map(text, base_dir=None, check=True):
    """A map file as a :class:`QOrderMap`, checked unless ``check=False``."""
    header = None
    sends = {}
    for no, tok in _lines(text):
        if tok[0] == "map":
            if header is not None or len(tok) != 6 or tok[2] != "from" or tok[4] != "to":
                raise ParseError("expected 'map <name> from <ord> to <ord>'", no)
            header = tok
        elif header is None:
            raise ParseError("file must start with a 'map' line", no)
        elif tok[0] == "send":
            if len(tok) != 3:
                raise ParseError("expected 'send <x> <y>'", no)
            if tok[1] in sends:
                raise ParseError(f"{tok[1]!r} is sent twice", no)
            sends[tok[1]] = tok[2]
        else:
            raise ParseError(f"unknown keyword {tok[0]!r}", no)
    if header is None:
        raise ParseError("empty map file")
    base = Path(base_dir) if base_dir is not None else Path(".")
    X = load_ordered(base / header[3])
    Y = load_ordered(base / header[5])
    return QOrderMap(X, Y, sends, check=check)


def load_map(path, check=True):
    path = Path(path)
    return parse_map(path.read_text(encoding="utf-8"), path.parent, check)


def parse_presheaf(text, X, dual=False):
    """A presheaf (or copresheaf) file over the ordered set ``X``."""
    degree = None
    values = {}
    for no, tok in _lines(text):
        if tok[0] in ("presheaf", "copresheaf"):
            if degree is not None or len(tok) != 4 or tok[2] != "degree":
                raise ParseError("expected 'presheaf <name> degree <q>'", no)
            degree = tok[3]
        elif degree is None:
            raise ParseError("file must start with a 'presheaf' line", no)
        elif tok[0] == "value":
            if len(tok) != 3:
                raise ParseError("expected 'value <x> <u>'", no)
            if tok[1] not in X.labels:
                raise ParseError(f"unknown label {tok[1]!r}", no)
            values[tok[1]] = tok[2]
        else:
            raise ParseError(f"unknown keyword {tok[0]!r}", no)
    if degree is None:
        raise ParseError("empty presheaf file")
    try:
        return make_presheaf(X, degree, values, dual=dual)
    except (KeyError, IndexError):
        raise ParseError("unknown quantale element in presheaf file") from None


def dump_presheaf(p, name="mu"):
    Q = p.Q
    kw = "copresheaf" if isinstance(p, Copresheaf) else "presheaf"
    out = [f"{kw} {name} degree {Q.label(int(p.degree))}"]
    for lbl, v in zip(p.base.labels, p.values):
        if int(v) != Q.bottom:
            out.append(f"value {lbl} {Q.label(int(v))}")
    return "\n".join(out) + "\n"


__all__ = [
    "Context",
    "dump_context",
    "dump_ordered",
    "dump_presheaf",
    "load_context",
    "load_map",
    "load_ordered",
    "parse_context",
    "parse_map",
    "parse_presheaf",
]

