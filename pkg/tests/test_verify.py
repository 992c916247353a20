import json

import pytest

from qorder import verify
from qorder.quantale import builtin


@pytest.fixture(scope="module")
def report():
    return verify.run(seed=11, samples=8)


def test_every_law_runs_once_per_quantale(report):
    keys = [(e["law"], e["quantale"]) for e in report.entries]
    assert len(keys) == len(set(keys))
    assert {k[0] for k in keys} == set(verify.REGISTRY)
    assert {k[1] for k in keys} == set(verify.DEFAULT_QUANTALES)


def test_all_laws_pass(report):
    assert report.failed == [], json.dumps(report.failed, default=str)[:2000]
    assert report.exit_code == 0


def test_laws_exercise_instances(report):
    idle = [(e["law"], e["quantale"]) for e in report.entries if e["instances"] == 0]
    # c3 is not integral, so the integral-only law has nothing to check there
    assert idle == [("preorder.integral_diagonal", "c3")]


def test_report_is_deterministic():
    a = verify.run([("c3", builtin("c3"))], seed=5, samples=3, laws=["relations.currying"]).to_json()
    b = verify.run([("c3", builtin("c3"))], seed=5, samples=3, laws=["relations.currying"]).to_json()
    assert a == b


def test_failures_are_reported(monkeypatch):
    def broken(Q, rng, samples):
        o = verify.Outcome(1)
        o.fail("always")
        return o

    monkeypatch.setitem(verify.REGISTRY, "zz.broken", verify.Law("zz.broken", "fails", broken))
    rep = verify.run([("bool2", builtin("bool2"))], laws=["zz.broken"])
    assert rep.exit_code == 1
    assert rep.failed[0]["witness"] == "always"


@pytest.mark.parametrize("name", verify.DEFAULT_QUANTALES)
def test_discrepancy_search_is_exhaustive(name):
    import oracles

    Q = builtin(name)
    found = False
    for p in range(Q.n):
        for q in range(Q.n):
            for r in range(Q.n):
                for u in oracles.diagonal(Q, p, q):
                    for w in oracles.diagonal(Q, p, r):
                        rel = oracles.imp_left(Q, [[w]], [[u]], [p], [q], [r])[0, 0]
                        found |= rel != oracles.res_left(Q, w, u)
                for v in oracles.diagonal(Q, q, r):
                    for w in oracles.diagonal(Q, p, r):
                        rel = oracles.imp_right(Q, [[v]], [[w]], [p], [q], [r])[0, 0]
                        found |= rel != oracles.res_right(Q, v, w)
    assert found == (verify.implication_discrepancy(Q) is not None)
