import json
import shutil
import subprocess

import pytest

from supalg import shcp
from supalg.cli import main
from supalg.superpoly import SuperPolynomial


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("expr, expected", [
    ("E21*E12", "E11 + E22 - E12*E21"),
    ("E12*E12", "0"),
    ("1", "1"),
    ("E11*E12", "E11*E12"),
])
def test_pbw_normal_forms(capsys, expr, expected):
    code, out, _ = run(capsys, "pbw", expr)
    assert code == 0 and out.strip() == expected


def test_pbw_on_a_larger_group(capsys):
    code, out, _ = run(capsys, "pbw", "E32*E13", "--group", "gl(2|1)", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["group"] == "gl(2|1)"
    # as matrices E13 E32 = E12 and E32 E13 = 0, so E32 E13 = E12 - E13 E32
    assert data["normal_form"] == "E12 - E13*E32"


def test_parse_error_reports_position(capsys):
    code, _, err = run(capsys, "pbw", "E11 + E99")
    assert code == 2 and "parse error" in err and "6" in err


def test_unknown_suite_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "nope"])
    assert exc.value.code == 2


def test_check_passes_and_writes_json(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, err = run(capsys, "check", "jacobi", "--group", "gl(2|1)", "--out", str(target))
    report = json.loads(target.read_text())
    assert code == 0 and report["passed"]
    assert "wall time" in err and "wall time" not in target.read_text()
    assert len(report["checks"]) == 5
    assert out.startswith("== jacobi: PASS")


def test_check_is_deterministic(capsys):
    _, first, _ = run(capsys, "check", "eta-roundtrip", "--seed", "42", "--format", "json")
    _, second, _ = run(capsys, "check", "eta-roundtrip", "--seed", "42", "--format", "json")
    assert first == second
    assert "(100 cases)" in first


def test_check_failure_exit_code(capsys, monkeypatch):
    from supalg import suites

    def failing(cfg):
        rep = suites.Report("jacobi")
        rep.add("always fails", False, "witness")
        return rep
    monkeypatch.setitem(suites.RUNNERS, "jacobi", failing)
    code, out, _ = run(capsys, "check", "jacobi")
    assert code == 1 and "FAIL" in out


def test_reconstruct_examples(capsys):
    code, out, _ = run(capsys, "reconstruct", '{"1": "a11"}')
    assert code == 0 and out.strip() == "a11 + 1/2*a22^-1*alpha12*alpha21"
    code, out, _ = run(capsys, "reconstruct", '{"1": "1"}')
    assert out.strip() == "1"


def test_reconstruct_from_file(capsys, tmp_path):
    P = shcp.gl11_shcp()
    sec = shcp.eta_star(SuperPolynomial.gen(P.ambient.sig, "alpha12"))
    path = tmp_path / "section.json"
    path.write_text(json.dumps(sec.to_json()))
    code, out, _ = run(capsys, "reconstruct", str(path))
    assert code == 0 and out.strip() == "alpha12"


@pytest.mark.parametrize("arg, needle", [
    ('{"1": "alpha12"}', "odd generator"),
    ('{"1": ', "malformed JSON"),
    ("/nonexistent/section.json", "cannot read"),
    ('{"E13": "1"}', "error"),
])
def test_reconstruct_rejects_bad_input(capsys, arg, needle):
    code, _, err = run(capsys, "reconstruct", arg)
    assert code == 2 and needle in err


def test_convolve(capsys):
    a = json.dumps([{"point": [[2, 0], [0, 3]], "u": [{"monomial": {"E12": 1}, "coeff": "1"}]}])
    b = json.dumps([{"point": [[1, 0], [0, 5]], "u": [{"monomial": {"E21": 1}, "coeff": "1"}]}])
    code, out, _ = run(capsys, "convolve", a, b, "--format", "json")
    assert code == 0
    # (g ⊗ E12)(h ⊗ E21) = gh ⊗ (h^{-1}.E12) E21 and h^{-1}.E12 = 5 E12
    from supalg.distributions import Distribution, gl_hopf
    from supalg.liesuper import ReducedPoint
    H = gl_hopf(1, 1)
    U = H.U
    got = Distribution.from_json(H, json.loads(out)["result"])
    assert got == Distribution.at(H, ReducedPoint.diagonal(2, 15, m=1), U.gen("E12") * U.gen("E21") * 5)


@pytest.mark.skipif(shutil.which("supalg") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["supalg", "pbw", "E21*E12"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "E11 + E22 - E12*E21"
