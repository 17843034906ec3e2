import json

import pytest

from mcprod import models
from mcprod.cli import main
from mcprod.dgla import massey_data
from mcprod.io import serialize_dgla


@pytest.fixture
def model_file(tmp_path):
    p = tmp_path / "heisenberg.model"
    p.write_text(models.HEISENBERG_MODEL_TEXT)
    return str(p)


def test_validate_exit_0(model_file, capsys):
    assert main(["validate", model_file]) == 0
    out = capsys.readouterr().out
    assert "[validate] ok" in out


def test_cohomology(model_file, capsys):
    assert main(["cohomology", model_file, "--degree", "2"]) == 0
    out = capsys.readouterr().out
    assert "a*c" in out and "b*c" in out


def test_massey_json(model_file, capsys):
    code = main(["--json", "massey", model_file, "a", "a", "b"])
    assert code == 0
    body = json.loads(capsys.readouterr().out)
    assert body["results"]["indeterminacy_dimension"] == 0


def test_annihilate(model_file, capsys):
    assert main(["annihilate", model_file, "--cocycle", "a*c", "--max-degree", "6"]) == 0


def test_mc_product(model_file, tmp_path, capsys):
    dgla = tmp_path / "triple.dgla"
    dgla.write_text(serialize_dgla(massey_data(3, [1, 1, 1])))
    system = tmp_path / "triple.system"
    system.write_text("system:\n  e1: a\n  e2: a\n  e3: b\n  b2_3: -c\n")
    code = main([
        "mc-product", model_file, "--data", str(dgla), "--system", str(system)
    ])
    assert code == 0


def test_missing_file_exit_2(capsys):
    assert main(["validate", "/nonexistent/file.model"]) == 2


def test_parse_error_exit_2(model_file, capsys):
    assert main(["massey", model_file, "a*(b", "a"]) == 2


def test_math_failure_exit_1(tmp_path, capsys):
    p = tmp_path / "free.model"
    p.write_text("truncation: 6\ngenerators:\n  a 1\n  b 1\ndifferential:\n")
    code = main(["massey", str(p), "a", "b", "a"])
    assert code == 1
    out = capsys.readouterr().out
    assert "obstructed" in out
