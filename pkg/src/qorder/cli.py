"""Command line interface.

Exit codes: 0 on success, 1 when a checked law or adjunction fails, 2 on
usage, parse or validation errors.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from . import completion, galois, verify
from .errors import QorderError
from .export import concepts_dot, concepts_json, concepts_payload, hasse_dot
from .formats import dump_context, dump_ordered, load_context, load_map, load_ordered, parse_presheaf
from .presheaf import copresheaves, presheaves
from .qord import coreflect, enumerate_memberships, is_separated, underlying_preorder
from .qrel import compose, format_matrix, imp_left, imp_right
from .quantale import resolve_quantale


def _emit(as_json, payload, text):
    if as_json:
        click.echo(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        click.echo(text.rstrip("\n"))


json_flag = click.option("--json", "as_json", is_flag=True, help="Print JSON instead of text.")


def _set(Q, elems):
    return "{" + ",".join(Q.display(int(u)) for u in elems) + "}"


def _matrix_payload(rel):
    Q = rel.Q
    return {
        "source": {l: Q.label(int(d)) for l, d in zip(rel.source.labels, rel.source.deg)},
        "target": {l: Q.label(int(d)) for l, d in zip(rel.target.labels, rel.target.deg)},
        "entries": [[Q.label(int(v)) for v in row] for row in rel.entries],
    }


@click.group()
def main():
    """Quantale-valued preorders on fuzzy sets."""


# -- quantale -----------------------------------------------------------------


@main.group()
def quantale():
    """Finite quantales: validation, classification, diagonal sets."""


@quantale.command("validate")
@click.argument("ref")
@json_flag
def quantale_validate(ref, as_json):
    """Check the quantale axioms of a file or builtin."""
    Q = resolve_quantale(ref)
    _emit(as_json, {"name": Q.name, "elements": Q.n, "valid": True}, f"{Q.name}: valid quantale with {Q.n} elements")


@quantale.command("classify")
@click.argument("ref")
@json_flag
def quantale_classify(ref, as_json):
    Q = resolve_quantale(ref)
    c = Q.classify()
    payload = {
        "integral": c["integral"],
        "divisible": c["divisible"],
        "commutative": c["commutative"],
        "idempotents_above_unit": [Q.label(int(u)) for u in c["idempotents_above_unit"]],
    }
    text = "\n".join(
        [
            f"integral: {c['integral']}",
            f"divisible: {c['divisible']}",
            f"commutative: {c['commutative']}",
            f"idempotents above unit: {_set(Q, c['idempotents_above_unit'])}",
        ]
    )
    _emit(as_json, payload, text)


@quantale.command("dq")
@click.argument("ref")
@click.option("--pair", nargs=2, default=None, help="Print only D(p, q).")
@json_flag
def quantale_dq(ref, pair, as_json):
    """Print the diagonal sets D(p, q)."""
    Q = resolve_quantale(ref)
    if pair:
        p, q = Q.index(pair[0]), Q.index(pair[1])
        d = Q.diagonal(p, q)
        _emit(as_json, {"p": Q.label(p), "q": Q.label(q), "D": [Q.label(u) for u in d]}, _set(Q, d))
        return
    rows, payload = [], []
    for p in range(Q.n):
        for q in range(Q.n):
            d = Q.diagonal(p, q)
            rows.append(f"D({Q.display(p)},{Q.display(q)}) = {_set(Q, d)}")
            payload.append({"p": Q.label(p), "q": Q.label(q), "D": [Q.label(u) for u in d]})
    _emit(as_json, payload, "\n".join(rows))


# -- relations -------------------------------------------------------------------


@main.group()
def rel():
    """Q-relations between Q-subsets."""


def _write_or_print(r, out, as_json, name):
    if out:
        Path(out).write_text(dump_context(r, name), encoding="utf-8")
    _emit(as_json, _matrix_payload(r), format_matrix(r))


@rel.command("validate")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@json_flag
def rel_validate(path, as_json):
    ctx = load_context(path)
    _emit(as_json, _matrix_payload(ctx.relation), format_matrix(ctx.relation))


@rel.command("compose")
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), help="Also write the result as a context file.")
@json_flag
def rel_compose(first, second, out, as_json):
    """Composite ``second o first`` of relations X -> Y and Y -> Z."""
    phi, psi = load_context(first).relation, load_context(second).relation
    _write_or_print(compose(psi, phi), out, as_json, "composite")


@rel.command("imp")
@click.option("--side", type=click.Choice(["left", "right"]), required=True)
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False))
@json_flag
def rel_imp(side, first, second, out, as_json):
    """``first <- second`` (left) or ``first -> second`` (right)."""
    a, b = load_context(first).relation, load_context(second).relation
    r = imp_left(a, b) if side == "left" else imp_right(a, b)
    _write_or_print(r, out, as_json, "implication")


# -- ordered sets -------------------------------------------------------------------


@main.group("ord")
def ord_():
    """Q-ordered Q-subsets."""


@ord_.command("check")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@json_flag
def ord_check(path, as_json):
    X = load_ordered(path)
    sep = is_separated(X)
    _emit(as_json, {"valid": True, "elements": X.n, "separated": sep}, f"valid Q-preorder on {X.n} elements; separated: {sep}")


@ord_.command("underlying")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--dot", is_flag=True, help="Print a Hasse diagram of the quotient.")
@json_flag
def ord_underlying(path, dot, as_json):
    X = load_ordered(path)
    if dot:
        click.echo(hasse_dot(X).rstrip("\n"))
        return
    le = underlying_preorder(X)
    pairs = [[X.labels[i], X.labels[j]] for i, j in zip(*np.nonzero(le))]
    _emit(as_json, {"leq": pairs}, "\n".join(f"{a} <= {b}" for a, b in pairs))


@ord_.command("coreflect")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--keep", required=True, help="Comma-separated degrees to keep, e.g. e,bot.")
@click.option("--out", type=click.Path(dir_okay=False))
@json_flag
def ord_coreflect(path, keep, out, as_json):
    X = load_ordered(path)
    A = coreflect(X, [s.strip() for s in keep.split(",") if s.strip()])
    if out:
        Path(out).write_text(dump_ordered(A, "coreflected"), encoding="utf-8")
    _emit(as_json, _matrix_payload(A.order), format_matrix(A.order))


@ord_.command("enumerate-memberships")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@json_flag
def ord_memberships(path, as_json):
    """All membership maps turning the file's matrix into a Q-preorder.

    Degrees on the source line are ignored.
    """
    ctx = load_context(path, validate=False)
    Q = ctx.source.Q
    found = enumerate_memberships(Q, ctx.source.labels, ctx.matrix)
    payload = [{l: Q.label(int(d)) for l, d in zip(ctx.source.labels, m)} for m in found]
    text = "\n".join(" ".join(f"{l}:{Q.display(int(d))}" for l, d in zip(ctx.source.labels, m)) for m in found)
    _emit(as_json, payload, text or "none")


# -- powersets and completeness ----------------------------------------------------------


@main.command("powerset")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--dual", is_flag=True, help="Copresheaves instead of presheaves.")
@click.option("--list", "mode", flag_value="list", default=True)
@click.option("--count", "mode", flag_value="count")
@click.option("--order-dot", "mode", flag_value="dot")
@json_flag
def powerset_cmd(path, dual, mode, as_json):
    X = load_ordered(path)
    P = copresheaves(X) if dual else presheaves(X)
    if mode == "count":
        _emit(as_json, {"count": len(P)}, str(len(P)))
    elif mode == "dot":
        click.echo(hasse_dot(P.ordered, "powerset").rstrip("\n"))
    else:
        _emit(as_json, P.labels, "\n".join(P.labels))


@main.group()
def complete():
    """Suprema, tensors and completeness."""


@complete.command("report")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@json_flag
def complete_report(path, as_json):
    X = load_ordered(path)
    r = completion.completeness_report(X)
    d = r.as_dict()
    text = "\n".join(f"{k}: {v}" for k, v in d.items())
    _emit(as_json, d, text)


@complete.command("sup")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--presheaf", "pfile", required=True, type=click.Path(exists=True, dir_okay=False))
@json_flag
def complete_sup(path, pfile, as_json):
    X = load_ordered(path)
    mu = parse_presheaf(Path(pfile).read_text(encoding="utf-8"), X)
    hits = completion.sup(X, mu)
    _emit(as_json, {"sup": list(hits)}, " ".join(hits) if hits else "none")


@complete.command("tensor")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--u", "u", required=True)
@click.option("--x", "x", required=True)
@click.option("--q", "q", required=True)
@json_flag
def complete_tensor(path, u, x, q, as_json):
    X = load_ordered(path)
    hits = completion.tensor(X, u, x, q)
    _emit(as_json, {"tensor": list(hits)}, " ".join(hits) if hits else "none")


# -- Galois connections --------------------------------------------------------------------


@main.group("galois")
def galois_():
    """Galois connections between Q-ordered sets."""


@galois_.command("check")
@click.option("--f", "ffile", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--g", "gfile", required=True, type=click.Path(exists=True, dir_okay=False))
@json_flag
def galois_check(ffile, gfile, as_json):
    """Exit 0 if f -| g, 1 otherwise."""
    f, g = load_map(ffile, check=False), load_map(gfile, check=False)
    ok = galois.is_galois(f, g)
    _emit(as_json, {"galois": ok}, "f -| g" if ok else "not a Galois connection")
    if not ok:
        sys.exit(1)


@galois_.command("find")
@click.option("--map", "mfile", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--side", type=click.Choice(["left", "right"]), required=True)
@json_flag
def galois_find(mfile, side, as_json):
    """All adjoints of a map on the given side."""
    f = load_map(mfile)
    found = galois.find_adjoint(f, side)
    payload = [g.as_dict() for g in found]
    text = "\n".join(" ".join(f"{k}->{v}" for k, v in d.items()) for d in payload)
    _emit(as_json, payload, text or "none")


@main.command("concepts")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(["fca", "rst"]), default="fca")
@click.option("--dot", "dot_out", type=click.Path(dir_okay=False))
@click.option("--json", "json_out", type=click.Path(dir_okay=False), help="Write the concepts as JSON.")
def concepts_cmd(path, mode, dot_out, json_out):
    """Fuzzy concept lattice of a context file."""
    ctx = load_context(path)
    fp = galois.concept_lattice(ctx.relation, mode)
    if dot_out:
        Path(dot_out).write_text(concepts_dot(fp), encoding="utf-8")
    if json_out:
        Path(json_out).write_text(concepts_json(fp), encoding="utf-8")
    data = concepts_payload(fp)
    for c in data["concepts"]:
        ext = ",".join(f"{k}:{v}" for k, v in c["extent"].items())
        inn = ",".join(f"{k}:{v}" for k, v in c["intent"].items())
        click.echo(f"@{c['degree']}  extent {{{ext}}}  intent {{{inn}}}")
    click.echo(f"{len(data['concepts'])} concepts, {len(data['covers'])} covers")


@main.command("macneille")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--dot", "dot_out", type=click.Path(dir_okay=False))
@json_flag
def macneille_cmd(path, dot_out, as_json):
    """MacNeille completion: fixed points of the upper/lower bound pair."""
    X = load_ordered(path)
    fp = galois.macneille(X)
    if dot_out:
        Path(dot_out).write_text(hasse_dot(fp.ordered, "macneille"), encoding="utf-8")
    labels = list(fp.ordered.labels)
    _emit(as_json, {"members": labels}, "\n".join(labels))


@main.command("cauchy")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@json_flag
def cauchy_cmd(path, as_json):
    X = load_ordered(path)
    Pc, keep = galois.cauchy_presheaves(X)
    ok = galois.is_cauchy_complete(X)
    _emit(
        as_json,
        {"cauchy_complete": ok, "right_adjoint_presheaves": list(Pc.labels)},
        f"cauchy complete: {ok}\nright adjoint presheaves: {len(keep)}",
    )


# -- verification --------------------------------------------------------------------------


@main.command("verify")
@click.option("--quantale", "refs", multiple=True, help="Builtin name or quantale file; repeatable.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--samples", default=50, show_default=True, type=int)
@click.option("--report", type=click.Path(dir_okay=False), help="Write the JSON report here.")
@click.option("--law", "laws", multiple=True, help="Restrict to these law ids.")
def verify_cmd(refs, seed, samples, report, laws):
    """Run the law suite and exit 1 if any law fails."""
    qs = [(r, resolve_quantale(r)) for r in refs] or None
    unknown = [l for l in laws if l not in verify.REGISTRY]
    if unknown:
        raise click.UsageError(f"unknown law id(s): {', '.join(unknown)}")
    rep = verify.run(qs, seed, samples, laws or None)
    if report:
        Path(report).write_text(rep.to_json(), encoding="utf-8")
    for e in rep.entries:
        status = "PASS" if e["pass"] else "FAIL"
        line = f"{status} {e['law']} [{e['quantale']}] {e['instances']} instances"
        if not e["pass"]:
            line += f" witness={json.dumps(e['witness'], ensure_ascii=False)}"
        click.echo(line)
    for q, note in rep.findings().items():
        click.echo(f"implications vs residuation [{q}]: {note}")
    s = rep.as_dict()["summary"]
    click.echo(f"{s['passed']}/{s['total']} passed")
    if rep.exit_code:
        sys.exit(1)


def run(argv=None):
    """Run the CLI on ``argv`` and return the exit code instead of exiting."""
    try:
        main.main(args=argv, prog_name="qorder", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 2
    except (QorderError, KeyError, OSError) as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        return 2
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    return 0


def entry():
    sys.exit(run())
