import json

import pytest

from tests.samples import HAND_V, THETA_V, THETA_Z, W2
from wicks_forms.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, run
from wicks_forms.log import logger
from wicks_forms.words import CyclicWord, format_word, parse_word


@pytest.fixture(autouse=True)
def detach_log_handlers():
    # 处理器绑定在每个用例各自捕获的 stderr 上
    yield
    logger.handlers.clear()


def run_json(capsys, argv):
    code = run(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


# ==================== validate ====================


def test_validate_pass(capsys):
    assert run(["validate", "1 2 -1 -2"]) == EXIT_OK
    assert capsys.readouterr().out == "PASS genus=1 maximal=0\n"


def test_validate_fail(capsys):
    assert run(["validate", "1 2 -2 -1"]) == EXIT_FAILURE
    assert capsys.readouterr().out == "FAIL iii 0\n"


def test_validate_graph(capsys):
    assert run(["validate", "--graph", "1 2 3 -1 -2 -3"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "PASS genus=1 maximal=1"
    assert "vertex 0: 1 -2 3" in lines


def test_validate_file(tmp_path, capsys):
    path = tmp_path / "words.txt"
    path.write_text("1 2 -1 -2\n\n1 2 1 -2\n", encoding="utf-8")
    assert run(["validate", "--file", str(path)]) == EXIT_FAILURE
    assert capsys.readouterr().out.splitlines() == ["PASS genus=1 maximal=0", "FAIL i 0"]


def test_validate_empty_word(capsys):
    assert run(["validate", ""]) == EXIT_OK
    assert capsys.readouterr().out == "PASS genus=0 maximal=0\n"


def test_validate_json(capsys):
    code, data = run_json(capsys, ["validate", "1 2 -1 -2"])
    assert code == EXIT_OK
    assert data["command"] == "validate"
    assert data["results"][0]["report"]["genus"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["validate"],
        ["enumerate", "--genus", "1", "--min-length", "4"],
        ["bounds", "--table", "3", "1"],
        ["bounds", "--genus", "0"],
        ["squarefree", "--thue", "-1"],
        ["genus", "--word", "1 2 -1 -2", "--g-max", "0"],
        ["represent", "--word", "1 2 -1 -2", "--form", "1 2 -1 -2", "--limit", "0"],
        ["construct", "--form", "1 2 3 -1 -2 -3", "--offsets", "0 x"],
        ["count", "--word", "1 2 -1 -2"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE


def test_domain_error_goes_to_stderr(capsys):
    assert run(["validate", "1 x"]) == EXIT_FAILURE
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "error:" in captured.err


def test_domain_error_as_json(capsys):
    code, data = run_json(capsys, ["construct", "--form", "1 2 -1 -2"])
    assert code == EXIT_FAILURE
    assert data["command"] == "construct"
    assert "error" in data


# ==================== construct / squarefree ====================


def test_construct_theta(capsys):
    assert run(["construct", "--form", "1 2 3 -1 -2 -3", "--squarefree"]) == EXIT_OK
    out = capsys.readouterr().out
    assert f"v={format_word(THETA_V)}\n" in out
    assert "PASS genus=1 mirror_triple_free=1" in out
    assert f"z={format_word(THETA_Z)}\n" in out
    assert "  21 = γ2[0]" in out


def test_construct_json(capsys):
    code, data = run_json(capsys, ["construct", "--form", "1 2 3 -1 -2 -3"])
    assert code == EXIT_OK
    assert data["coloring"] == [1, 2]
    assert data["phi"]["1"] == "1 -6"
    assert data["squarefree"] is None


def test_squarefree_thue(capsys):
    assert run(["squarefree", "--thue", "5"]) == EXIT_OK
    assert capsys.readouterr().out == "thue=5\nword=1 2 3 1 3\nsquare_free=1 cyclic=0\n"


def test_squarefree_word_with_square(capsys):
    assert run(["squarefree", "--word", "1 2 1 2"]) == EXIT_FAILURE
    assert "square_free=0" in capsys.readouterr().out


# ==================== enumerate / represent / count ====================


def test_enumerate_then_count(tmp_path, capsys):
    path = tmp_path / "g1.cat"
    assert run(["enumerate", "--genus", "1", "--out", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("genus=1 maximal=0 complete=1 count=2\n")
    assert f"catalog written to {path}" in out

    assert run(["represent", "--word", "1 2 -1 -2", "--catalog", str(path), "--count-only"]) == EXIT_OK
    assert capsys.readouterr().out == "M=1\n"

    code, data = run_json(capsys, ["count", "--word", format_word(THETA_V), "--catalog", str(path)])
    assert code == EXIT_OK
    assert data["count"] >= 1
    assert data["exact"] is True


def test_enumerate_maximal_reports_formula(capsys):
    code, data = run_json(capsys, ["enumerate", "--genus", "1", "--maximal"])
    assert code == EXIT_OK
    assert data["forms"] == ["1 2 3 -1 -2 -3"]
    assert data["rooted"] == data["rooted_expected"] == 1
    assert data["m"] == "1/6"


def test_represent_form(capsys):
    assert run(["represent", "--word", "1 2 -1 -2", "--form", "1 2 -1 -2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("form=1 2 -1 -2\noffset=0\na1 -> 1\na2 -> 2\n")
    assert out.endswith("representations=4\n")


def test_missing_catalog_file(tmp_path, capsys):
    missing = tmp_path / "missing.cat"
    assert run(["count", "--word", "1 2 -1 -2", "--catalog", str(missing)]) == EXIT_FAILURE
    assert "error:" in capsys.readouterr().err


# ==================== genus / bounds ====================


def test_genus_command(capsys):
    assert run(["genus", "--word", "1 2 -1 -2", "--g-max", "1"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("genus=1\nform=1 2 -1 -2\noffset=0\n")
    assert run(["genus", "--word", "1 1 2 2"]) == EXIT_OK
    assert capsys.readouterr().out == "genus=infinite\n"


def test_bounds_exact(capsys):
    code, data = run_json(capsys, ["bounds", "--genus", "2", "--exact"])
    assert code == EXIT_OK
    assert data["holds"] is False
    assert data["m"] == "35"
    assert data["V"] == str(4 * 9**17)


def test_bounds_text(capsys):
    assert run(["bounds", "--genus", "2", "--exact"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "holds=False" in out
    assert "m=35\n" in out


def test_bounds_table(capsys):
    assert run(["bounds", "--table", "1", "3", "--exact"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "1/6" in out
    assert "1201200" in out


# ==================== --file / 指定着色 ====================


def test_word_from_file(tmp_path, capsys):
    path = tmp_path / "word.txt"
    path.write_text("\n1 2 -1 -2\n1 2 3 -1 -2 -3\n", encoding="utf-8")
    assert run(["genus", "--file", str(path), "--g-max", "1"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("genus=1\nform=1 2 -1 -2\n")
    assert run(["represent", "--file", str(path), "--form", "1 2 -1 -2", "--count-only"]) == EXIT_OK
    assert capsys.readouterr().out == "M=1\n"


def test_empty_word_file_is_usage_error(tmp_path, capsys):
    path = tmp_path / "blank.txt"
    path.write_text("\n  \n", encoding="utf-8")
    assert run(["genus", "--file", str(path)]) == EXIT_USAGE


def test_construct_with_coloring_and_offsets(tmp_path, capsys):
    path = tmp_path / "w2.txt"
    path.write_text(format_word(W2) + "\n", encoding="utf-8")
    code, data = run_json(
        capsys,
        ["construct", "--file", str(path), "--coloring", "3 1 2 1 3 2", "--offsets", "0 1 2 0 1 1"],
    )
    assert code == EXIT_OK
    assert data["coloring"] == [3, 1, 2, 1, 3, 2]
    assert data["offsets"] == [0, 1, 2, 0, 1, 1]
    assert CyclicWord(parse_word(data["v"])) == CyclicWord(HAND_V)


def test_construct_rejects_out_of_range_offset(capsys):
    argv = ["construct", "--form", "1 2 3 -1 -2 -3", "--offsets", "0 3"]
    assert run(argv) == EXIT_FAILURE
    assert "error:" in capsys.readouterr().err


# ==================== 文本与 JSON 一致 ====================


def test_construct_text_matches_json(capsys):
    argv = ["construct", "--form", "1 2 3 -1 -2 -3", "--squarefree"]
    assert run(argv) == EXIT_OK
    text = capsys.readouterr().out
    _, data = run_json(capsys, argv)
    lines = text.splitlines()
    assert f"form={data['form']}" in lines
    assert f"genus={data['genus']} colors=1,2 offsets=0,0" in lines
    assert f"v={data['v']}" in lines
    assert f"pairing={','.join(str(i) for i in data['pairing'])}" in lines
    for base, image in data["phi"].items():
        assert f"a{base} -> {image}" in lines
    for letter, name in data["legend"].items():
        assert f"  {letter} = {name}" in lines
    assert f"z={data['squarefree']['z']}" in lines
    for letter, name in data["squarefree"]["legend"].items():
        assert f"  {letter} = {name}" in lines


def test_bounds_text_matches_json(capsys):
    argv = ["bounds", "--genus", "2"]
    assert run(argv) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    _, data = run_json(capsys, argv)
    assert lines[0] == f"g={data['g']} mode={data['mode']} variant={data['variant']} holds={data['holds']}"
    assert lines[1] == f"margin={data['margin']} dps={data['dps']}"
    assert lines[2:] == [f"m={data['m']}", f"V={data['V']}", f"Z={data['Z']}"]
