import json
import subprocess
import sys

import pytest

from irrthompson.cli import run
from irrthompson.diagrams import diagram_from_json, diagram_to_json, equals, reduce
from irrthompson.presentation import compile_word, random_word
from irrthompson.trees import BETA
from irrthompson.vbeta import compile_beta_word


def out(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err.strip()


def test_eq_relator(capsys):
    assert out(capsys, "eq", "y0 y0", "x0 x1")[:2] == (0, "equal")


def test_eq_negative(capsys):
    assert out(capsys, "eq", "x1 x0", "x0 x1")[:2] == (1, "not equal")


def test_parity_of_z0(capsys):
    assert out(capsys, "parity", "y0 y2")[:2] == (0, "0")


def test_parity_json(capsys):
    code, text, _ = out(capsys, "parity", "y1", "--json")
    assert code == 0 and json.loads(text) == {"parity": 1, "Vxz": False, "Txz": False}


def test_eval(capsys):
    assert out(capsys, "eval", "c1", "--at", "1-t")[:2] == (0, "0+1*t")


def test_eval_outside(capsys):
    assert out(capsys, "eval", "c1", "--at", "2")[0] == 3


def test_classify(capsys):
    assert out(capsys, "classify", "x1 c2 p0")[1] == "V"
    assert out(capsys, "classify", "c2")[1] == "T"


def test_normal_form(capsys):
    assert out(capsys, "normal-form", "x1 c2")[:2] == (0, "c1")
    code, text, _ = out(capsys, "normal-form", "y0 c2 p0", "--json")
    data = json.loads(text)
    assert equals(compile_word(data["word"]), compile_word("y0 c2 p0"))


def test_factor(capsys):
    code, text, _ = out(capsys, "factor", "y0 y1 p0", "--json")
    assert code == 0
    prod = None
    for f in json.loads(text)["factors"]:
        d = diagram_from_json(f["diagram"])
        prod = d if prod is None else prod * d
    assert equals(prod, compile_word("y0 y1 p0"))


def test_factor_odd_parity(capsys):
    code, _, err = out(capsys, "factor", "y0")
    assert code == 3 and "parity" in err


@pytest.mark.parametrize("argv", [["eq", "x0", "q1"], ["reduce", "c0"], ["eval", "x0", "--at", "zz"], ["reduce", "{bad"]])
def test_parse_errors(capsys, argv):
    assert out(capsys, *argv)[0] == 2


def test_unknown_command(capsys):
    assert run(["frobnicate"]) == 2
    capsys.readouterr()


def test_relcheck(capsys):
    code, text, _ = out(capsys, "relcheck", "--max-index", "3")
    assert code == 0 and text.endswith("all families pass")
    assert "5.1" in text and "6.4" in text


def test_relcheck_beta(capsys):
    code, text, _ = out(capsys, "relcheck", "--ring", "beta", "--max-index", "3", "--json")
    assert code == 0 and json.loads(text)["ok"]


def test_reduce_json_round_trip(capsys):
    code, text, _ = out(capsys, "reduce", "y0 y0 x1^-1 x0^-1 x2", "--json")
    v = diagram_from_json(json.loads(text))
    assert v.identical(reduce(compile_word("x2")))


def test_json_input(capsys, tmp_path):
    v = compile_word("p0 y1")
    path = tmp_path / "v.json"
    path.write_text(json.dumps(diagram_to_json(v)))
    assert out(capsys, "eq", f"@{path}", "p0 y1")[:2] == (0, "equal")
    assert out(capsys, "eq", json.dumps(diagram_to_json(v)), "p0 y1")[0] == 0
    assert out(capsys, "eq", f"@{tmp_path / 'missing.json'}", "x0")[0] == 2


def test_render(capsys, tmp_path):
    path = tmp_path / "d.dot"
    assert out(capsys, "render", "p0", "--dot", str(path))[0] == 0
    assert path.read_text().startswith("digraph")
    code, text, _ = out(capsys, "render", "c1", "--dot", "-")
    assert "cluster_range" in text


def test_random_is_seeded(capsys):
    a = out(capsys, "random", "--length", "12", "--seed", "9", "--parity", "0")[1]
    b = out(capsys, "random", "--length", "12", "--seed", "9", "--parity", "0")[1]
    assert a == b and sum(tok.startswith("y") for tok in a.split()) % 2 == 0


def test_beta_ring(capsys):
    assert out(capsys, "eq", "--ring", "beta", "y1^2", "x1 x2")[:2] == (0, "equal")
    code, text, _ = out(capsys, "parity", "--ring", "beta", "y0 p0", "--json")
    assert json.loads(text) == {"parity": 1, "sign": 1}
    assert out(capsys, "normal-form", "--ring", "beta", "x0")[0] == 3
    code, text, _ = out(capsys, "reduce", "--ring", "beta", "x0 x0^-1 y2", "--json")
    assert equals(diagram_from_json(json.loads(text), BETA), compile_beta_word("y2"))


def test_eq_agrees_with_library(capsys):
    for seed in range(30):
        u = random_word(5, 3, seed)
        v = random_word(5, 3, seed + 1000) if seed % 2 else u + random_word(0, 3, seed)
        expected = equals(compile_word(u), compile_word(v))
        code = out(capsys, "eq", str(u) or "1", str(v) or "1")[0]
        assert code == (0 if expected else 1)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "irrthompson", "classify", "c1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "T"
