"""DOT and JSON exports."""

from __future__ import annotations

import json
import re

import numpy as np

from .qord import equivalence_classes


def quotient_covers(X):
    """Classes of the underlying preorder and the cover pairs between them."""
    classes = equivalence_classes(X)
    le = X.underlying()
    reps = [c[0] for c in classes]
    k = len(reps)
    below = np.array([[i != j and le[reps[i], reps[j]] for j in range(k)] for i in range(k)], dtype=bool)
    covers = []
    for i in range(k):
        for j in range(k):
            if below[i, j] and not any(below[i, m] and below[m, j] for m in range(k)):
                covers.append((i, j))
    return classes, covers


def _quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(X, name="hasse"):
    """Hasse diagram of the quotient poset, one node per class, edges upward."""
    Q = X.Q
    classes, covers = quotient_covers(X)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for i, cls in enumerate(classes):
        members = " ".join(X.labels[c] for c in cls)
        lines.append(f"  n{i} [label={_quote(members + ' @' + Q.label(int(X.deg[cls[0]])))}];")
    for i, j in covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE = re.compile(r'^\s*n(\d+) \[label="((?:[^"\\]|\\.)*)"\];$')
_EDGE = re.compile(r"^\s*n(\d+) -> n(\d+);$")


def read_hasse_dot(text):
    """Parse a diagram written by :func:`hasse_dot` into ``(labels, edges)``."""
    labels, edges = {}, []
    for line in text.splitlines():
        m = _NODE.match(line)
        if m:
            labels[int(m.group(1))] = re.sub(r"\\(.)", r"\1", m.group(2))
            continue
        m = _EDGE.match(line)
        if m:
            edges.append((int(m.group(1)), int(m.group(2))))
    return [labels[i] for i in sorted(labels)], edges


def concepts_payload(fp):
    """Concepts of a fixed-point set as plain data with an explicit cover list."""
    Q = fp.ordered.Q
    out = []
    for i in range(len(fp)):
        ext, inn = fp.extent(i), fp.intent(i)
        out.append(
            {
                "degree": Q.label(int(ext.degree)),
                "extent": {l: Q.label(int(v)) for l, v in zip(ext.base.labels, ext.values)},
                "intent": {l: Q.label(int(v)) for l, v in zip(inn.base.labels, inn.values)},
            }
        )
    classes, covers = quotient_covers(fp.ordered)
    # the fixed points are separated, so classes are singletons
    idx = [c[0] for c in classes]
    return {"concepts": out, "covers": [[idx[i], idx[j]] for i, j in covers]}


def concepts_json(fp):
    return json.dumps(concepts_payload(fp), indent=2, ensure_ascii=False) + "\n"


def load_concepts_json(text):
    data = json.loads(text)
    if not isinstance(data, dict) or "concepts" not in data or "covers" not in data:
        raise ValueError("not a concept export")
    return data


def concepts_dot(fp, name="concepts"):
    """Hasse diagram of a concept lattice, nodes labelled by extents."""
    Q = fp.ordered.Q
    classes, covers = quotient_covers(fp.ordered)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for i, cls in enumerate(classes):
        ext = fp.extent(cls[0])
        body = ",".join(f"{l}:{Q.label(int(v))}" for l, v in zip(ext.base.labels, ext.values) if v != Q.bottom)
        lines.append(f"  n{i} [label={_quote('{' + body + '} @' + Q.label(int(ext.degree)))}];")
    for i, j in covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
