import json

import pytest

from secpair import jsonio as jio
from secpair.cli import main
from secpair.pairing import ExtensionClass


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def mult3(tmp_path):
    p = tmp_path / "mult3.json"
    p.write_text(json.dumps(jio.extension_to_json(ExtensionClass.multiplication(3))))
    return str(p)


def test_pairing_ext_file(capsys, mult3):
    code, out, _ = run(capsys, "pairing-ext", "--extension", mult3)
    assert code == 0
    assert "[1] ↦ 1/3" in out
    assert "independence of the rational extension (16 solves): PASS" in out


def test_kk_table(capsys):
    code, out, _ = run(capsys, "kk-table", "--max", "6", "--degree", "0")
    assert code == 0
    lines = out.splitlines()
    assert lines[2].split() == ["1", "Z", "Z/2", "Z/3", "Z/4", "Z/5", "Z/6"]
    assert lines[7].split() == ["6", "0", "Z/2", "Z/3", "Z/2", "0", "Z/6"]


def test_crosscheck_all(capsys):
    code, out, _ = run(capsys, "crosscheck-all", "--d-max", "12")
    assert code == 0
    assert out.count(": PASS") == 11 and "FAIL" not in out


def test_json_output_is_deterministic(capsys, mult3):
    a = run(capsys, "pairing-ext", "--extension", mult3, "--format", "json", "--seed", "7")
    b = run(capsys, "pairing-ext", "--extension", mult3, "--format", "json", "--seed", "7")
    assert a == b
    data = json.loads(a[1])
    assert data["result"]["delta"]["values"] == ["1/3"]
    assert data["status"] == "PASS"


@pytest.mark.parametrize("argv,expect", [
    (["snf", "--matrix", "[[2,4],[6,8]]"], "D = [[2, 0], [0, 4]]"),
    (["group", "--generators", "2", "--relations", "[[2,0],[0,3]]"], "group = Z/6"),
    (["ext", "--group", '{"free_rank": 1, "torsion": [5]}'], "Ext(G, Z) = Z/5"),
    (["tor", "--n", "4", "--group", '{"free_rank": 1, "torsion": [6]}'], "Tor(Z/4, G) = Z/2"),
    (["eta", "--theta", "1/3"], "eta = -0.333333333333"),
    (["rho", "--theta1", "1/3", "--theta2", "0", "--crosscheck"], "= 1/3 mod 1"),
    (["zeta-check", "--m", "3"], "= 1/3 mod 1"),
    (["pairing-qz", "--k", '{"k0": {"free_rank": 1}, "k1": {"free_rank": 0, "torsion": [4]}}',
      "--alpha", '["3/4"]'], "[1] ↦ 3/4"),
    (["lambda-roundtrip", "--k1", '{"free_rank": 0, "torsion": [6]}', "--delta", '["1/6"]',
      "--bound", "12", "--count"], "psi_4 on Z/2: [2]"),
])
def test_commands(capsys, argv, expect):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    assert expect in out


def test_hom_command(capsys):
    h = '{"source": {"free_rank": 0, "torsion": [6]}, "target": {"free_rank": 0, "torsion": [6]}, "matrix": [[2]]}'
    code, out, _ = run(capsys, "hom", "--hom", h)
    assert code == 0
    assert "kernel = Z/2" in out and "image = Z/3" in out


def test_detpair_command(capsys, tmp_path):
    import math
    p, s = tmp_path / "pi.json", tmp_path / "sigma.json"
    p.write_text(json.dumps([[[math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3)]]]))
    s.write_text("[[[1, 0]]]")
    code, out, _ = run(capsys, "detpair", "--pi", str(p), "--sigma", str(s))
    assert code == 0 and "= 1/3 mod 1" in out


def test_family_input(capsys, tmp_path):
    from secpair.fgab import cyclic
    from secpair.functors import QZHom, QZValue
    from secpair.lambda_families import family_from_delta
    F = family_from_delta(QZHom(cyclic(6), (QZValue(1, 6),)), cyclic(6), 12)
    p = tmp_path / "f.json"
    p.write_text(json.dumps(jio.family_to_json(F)))
    code, out, _ = run(capsys, "lambda-roundtrip", "--family", str(p))
    assert code == 0 and "[1] ↦ 1/6" in out
    bad = jio.family_to_json(F.with_entry(4, 0, 1))
    p.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "lambda-roundtrip", "--family", str(p))
    assert code == 1
    assert "compatibility squares: FAIL (pair (2, 2), square 1)" in out


def test_math_failure_exit_code(capsys):
    code, out, _ = run(capsys, "pairing-qz", "--k", '{"k0": {"free_rank": 1}, "k1": {"free_rank": 0}}',
                       "--alpha", "[]", "--divisible", "1")
    assert code == 1 and "FAIL" in out


@pytest.mark.parametrize("argv,path", [
    (["ext", "--group", '{"free_rank": "x"}'], "$.free_rank"),
    (["snf", "--matrix", "[[1, 2], [3, \"a\"]]"], "$[1][1]"),
    (["eta", "--theta", "1/0"], "--theta"),
    (["detpair", "--pi", "[[[1, 0]]]", "--sigma", "[[1]]"], "$[0][0]"),
])
def test_input_errors(capsys, argv, path):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert f"input error at {path}" in err


def test_argparse_errors(capsys):
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "kk-table", "--max", "3")[0] == 2
    assert run(capsys, "kk-table", "--max", "3", "--degree", "2")[0] == 2


def test_pairing_ext_reports_generator_images(capsys, tmp_path):
    from secpair.fgab import FgGroup
    p = tmp_path / "x.json"
    p.write_text(json.dumps(jio.extension_to_json(ExtensionClass.from_inclusion(FgGroup(1, (2,)), [4, 1]))))
    code, out, _ = run(capsys, "pairing-ext", "--extension", str(p))
    assert code == 0
    assert "k1 = Z/8" in out and "pi(e_0) = [7] ↦ 1/4" in out
