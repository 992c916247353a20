import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import FIXTURES
from qorder import galois
from qorder.errors import EntryOutOfDiagonal, NotClosed, ParseError
from qorder.export import concepts_json, concepts_dot, hasse_dot, load_concepts_json, read_hasse_dot
from qorder.formats import (
    dump_context,
    dump_ordered,
    dump_presheaf,
    load_context,
    load_ordered,
    parse_context,
    parse_map,
    parse_presheaf,
)
from qorder.generators import random_ordered, random_relation, random_subset
from qorder.presheaf import copresheaves, presheaves
from qorder.qrel import QRelation
from qorder.quantale import builtin

NAMES = ("bool2", "c3", "c4", "lukasiewicz(4)")


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1))
def test_context_round_trip(name, seed):
    Q = builtin(name)
    rng = np.random.default_rng(seed)
    X = random_subset(Q, 3, rng, prefix="g")
    Y = random_subset(Q, 2, rng, prefix="m")
    rel = QRelation(X, Y, random_relation(X, Y, rng))
    ctx = parse_context(dump_context(rel, "r"))
    assert ctx.relation == rel and not ctx.same_carrier


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1))
def test_ordered_round_trip(name, seed):
    X = random_ordered(builtin(name), 3, seed)
    ctx = parse_context(dump_ordered(X))
    assert ctx.same_carrier
    assert np.array_equal(ctx.relation.entries, X.alpha)


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1), st.booleans())
def test_presheaf_round_trip(name, seed, dual):
    X = random_ordered(builtin(name), 2, seed)
    P = copresheaves(X) if dual else presheaves(X)
    mu = P[int(np.random.default_rng(seed).integers(len(P)))]
    assert parse_presheaf(dump_presheaf(mu), X, dual=dual) == mu


@given(st.sampled_from(NAMES), st.integers(0, 2**32 - 1))
def test_hasse_dot_round_trip(name, seed):
    from qorder.export import quotient_covers

    X = random_ordered(builtin(name), 4, seed)
    labels, edges = read_hasse_dot(hasse_dot(X))
    classes, covers = quotient_covers(X)
    assert edges == covers
    assert [l.rsplit(" @", 1)[0].split() for l in labels] == [[X.labels[i] for i in c] for c in classes]


def test_concepts_json_round_trip_and_dot():
    ctx = load_context(FIXTURES + "/c3_context.ctx")
    fp = galois.concept_lattice(ctx.relation)
    text = concepts_json(fp)
    assert load_concepts_json(text) == json.loads(text)
    labels, edges = read_hasse_dot(concepts_dot(fp))
    assert len(labels) == len(fp)
    assert len(edges) == len(json.loads(text)["covers"])
    with pytest.raises(ValueError):
        load_concepts_json("[1, 2]")


def test_bare_labels_are_crisp():
    ctx = parse_context("context c over c3\nsource a b:top\n")
    Q = ctx.source.Q
    assert list(ctx.source.deg) == [Q.unit, Q.top]
    assert (ctx.matrix == Q.bottom).all()


@pytest.mark.parametrize(
    "text, line",
    [
        ("source a\n", 1),
        ("context c over c3\nsource a\nrel a\n", 3),
        ("context c over c3\nsource a\nrel a zz e\n", 3),
        ("context c over c3\nsource a:nope\n", 2),
        ("context c over c3\nsource a\nsource b\n", 3),
        ("context c over c3\nsource a\nbogus\n", 3),
        ("context c c3\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_context(text)
    assert exc.value.line == line


def test_validation_error_from_context():
    with pytest.raises(EntryOutOfDiagonal):
        parse_context("context c over c3\nsource a:e\ntarget b:top\nrel a b e\n")
    ctx = parse_context("context c over c3\nsource a:e\ntarget b:top\nrel a b e\n", validate=False)
    assert ctx.relation is None


def test_quantale_path_relative_to_file(tmp_path):
    from qorder.quantale import dump_quantale

    (tmp_path / "q.quantale").write_text(dump_quantale(builtin("c4")))
    (tmp_path / "x.ord").write_text("context x over q.quantale\nsource p:top\nrel p p top\n")
    X = load_ordered(tmp_path / "x.ord")
    assert X.Q.name == "c4"


def test_map_errors(tmp_path):
    with pytest.raises(ParseError):
        parse_map("send a b\n")
    with pytest.raises(ParseError):
        parse_map("map m from chain2.ord to chain3.ord\nsend lo a\nsend lo b\n", FIXTURES)


def test_presheaf_errors():
    X = load_ordered(FIXTURES + "/chain3.ord")
    with pytest.raises(ParseError):
        parse_presheaf("value a e\n", X)
    with pytest.raises(ParseError):
        parse_presheaf("presheaf m degree e\nvalue zz e\n", X)
    with pytest.raises(NotClosed):
        parse_presheaf("presheaf m degree e\nvalue c e\n", X)
