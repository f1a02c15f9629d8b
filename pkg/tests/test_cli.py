import json

import pytest

from codegree_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_qian_json(capsys):
    code, out, _ = run(capsys, "qian", "Alt(5)", "--json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "pass" and len(data["witnesses"]) == 3


def test_lie_order(capsys):
    code, out, _ = run(capsys, "lie", "order", "G2", "3")
    assert code == 0 and out.strip() == "4245696"


def test_global_flags_before_command(capsys):
    code, out, _ = run(capsys, "--json", "lie", "alpha", "G2", "3")
    assert code == 0 and json.loads(out)["alpha"] == 104


def test_usage_errors_exit_2(capsys):
    code, out, err = run(capsys, "qian", "PSL2(6)")
    assert code == 2 and out == "" and "prime power" in err
    assert run(capsys, "qian", "Foo(3)")[0] == 2
    assert run(capsys, "lie", "order", "2B2", "4")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "corpus", "/nonexistent/file")[0] == 2
    assert run(capsys, "monolithic", "Sym(4)", "()")[0] == 2
    assert run(capsys, "monolithic", "Alt(5)", "(0 1")[0] == 2


def test_check_failure_exits_1(capsys):
    # PSL3(2) is not a degree-exact fit for the tabulated alpha
    code, out, _ = run(capsys, "lie", "check", "A2", "2", "--json")
    assert code == 1 and json.loads(out)["alpha_in_degrees"] is False


def test_other_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "codegrees", "Sym(3)", "--json", "--cache-dir", str(tmp_path))
    assert code == 0 and json.loads(out)["codegrees"] == [1, 2, 3]
    code, out, _ = run(capsys, "chartab", "Alt(5)", "--json", "--cache-dir", str(tmp_path))
    assert code == 0 and json.loads(out)["degrees"] == [1, 3, 3, 4, 5]
    code, out, _ = run(capsys, "fitting", "Sym(4)", "--json")
    assert code == 0 and json.loads(out)["fitting_order"] == 4
    code, out, _ = run(capsys, "monolithic", "Wr(Alt(5),Cyc(2))", "(0 5)(1 6)(2 7)(3 8)(4 9)", "--json")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "lie", "check", "A1", "8")
    assert code == 0 and "pass" in out


def test_corpus(capsys, tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("Sym(3)\nAlt(5)\n")
    code, out, _ = run(capsys, "corpus", str(path), "--jobs", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["summary"]["passed"] == 2


def test_chartab_output_is_stable(capsys):
    first = run(capsys, "chartab", "PSL2(7)", "--json")[1]
    second = run(capsys, "chartab", "PSL2(7)", "--json")[1]
    assert first == second
