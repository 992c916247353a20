import json

import pytest

from conftest import FIXTURES
from qorder.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dq_pair(capsys):
    code, out, _ = _run(capsys, "quantale", "dq", "c3", "--pair", "e", "e")
    assert code == 0 and out.strip() == "{⊥,e,⊤}"


def test_dq_json(capsys):
    code, out, _ = _run(capsys, "quantale", "dq", "c3", "--pair", "e", "top", "--json")
    assert code == 0
    assert "bot" in json.dumps(json.loads(out))


def test_classify(capsys):
    code, out, _ = _run(capsys, "quantale", "classify", "c4", "--json")
    data = json.loads(out)
    assert code == 0
    assert (data["integral"], data["divisible"], data["commutative"]) == (True, False, False)


def test_broken_quantale_exits_2(capsys):
    code, _, err = _run(capsys, "verify", "--quantale", FIXTURES + "/broken_assoc.quantale")
    assert code == 2 and "AxiomError" in err
    code, _, err = _run(capsys, "quantale", "validate", FIXTURES + "/broken_assoc.quantale")
    assert code == 2


def test_usage_errors_exit_2(capsys):
    assert _run(capsys, "quantale", "dq")[0] == 2
    assert _run(capsys, "nope")[0] == 2
    assert _run(capsys, "verify", "--law", "no.such.law")[0] == 2
    assert _run(capsys, "ord", "check", FIXTURES + "/missing.ord")[0] == 2


def test_verify_single_law_report(capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, out, _ = _run(
        capsys, "verify", "--quantale", "c3", "--seed", "7", "--samples", "5",
        "--law", "relations.adjunction", "--report", str(rep),
    )
    assert code == 0
    assert out.splitlines()[0].startswith("PASS relations.adjunction [c3]")
    data = json.loads(rep.read_text())
    assert data["summary"] == {"failed": 0, "passed": 1, "total": 1}


def test_verify_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--quantale", "c4", "--seed", "3", "--samples", "4", "--law", "galois.graph_criterion"]
    _run(capsys, *args, "--report", str(a))
    _run(capsys, *args, "--report", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_galois_check_and_find(capsys):
    f, g, bad = (FIXTURES + "/" + n for n in ("incl.map", "collapse_low.map", "collapse.map"))
    assert _run(capsys, "galois", "check", "--f", f, "--g", g)[0] == 0
    assert _run(capsys, "galois", "check", "--f", f, "--g", bad)[0] == 1
    code, out, _ = _run(capsys, "galois", "find", "--map", f, "--side", "right")
    assert code == 0 and out.strip() == "a->lo b->lo c->hi"


def test_concepts_exports_reparse(capsys, tmp_path):
    from qorder.export import load_concepts_json, read_hasse_dot

    j, d = tmp_path / "c.json", tmp_path / "c.dot"
    code, out, _ = _run(capsys, "concepts", FIXTURES + "/c3_context.ctx", "--mode", "fca",
                        "--json", str(j), "--dot", str(d))
    assert code == 0
    data = load_concepts_json(j.read_text())
    with open(FIXTURES + "/c3_concepts.json", encoding="utf-8") as fh:
        assert data == json.load(fh)
    labels, _ = read_hasse_dot(d.read_text())
    assert len(labels) == len(data["concepts"])


def test_concepts_output_is_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        _run(capsys, "concepts", FIXTURES + "/c3_context.ctx", "--mode", "rst", "--json", str(p))
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["ord", "check", "chain3.ord"],
        ["ord", "underlying", "diamond.ord", "--dot"],
        ["ord", "coreflect", "fuzzy.ord", "--keep", "e"],
        ["ord", "enumerate-memberships", "chain2.ord"],
        ["powerset", "chain2.ord", "--count"],
        ["powerset", "chain2.ord", "--dual", "--list"],
        ["powerset", "antichain2.ord", "--order-dot"],
        ["complete", "report", "antichain2.ord"],
        ["complete", "tensor", "chain2.ord", "--u", "e", "--x", "lo", "--q", "e"],
        ["macneille", "diamond.ord"],
        ["cauchy", "fuzzy.ord"],
        ["rel", "validate", "c3_context.ctx"],
    ],
)
def test_commands_succeed(capsys, argv):
    argv = [FIXTURES + "/" + a if a.endswith((".ord", ".ctx")) else a for a in argv]
    code, out, err = _run(capsys, *argv)
    assert code == 0, err
    assert out.strip()


def test_json_mirrors(capsys):
    for argv in (
        ["ord", "check", FIXTURES + "/chain3.ord", "--json"],
        ["complete", "report", FIXTURES + "/antichain2.ord", "--json"],
        ["cauchy", FIXTURES + "/fuzzy.ord", "--json"],
        ["macneille", FIXTURES + "/diamond.ord", "--json"],
    ):
        code, out, _ = _run(capsys, *argv)
        assert code == 0
        json.loads(out)
