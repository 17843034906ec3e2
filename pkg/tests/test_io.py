import json

import pytest

from mcprod import models
from mcprod.dgla import massey_data
from mcprod.io import (
    FormatError,
    Report,
    parse_dgla,
    parse_model,
    parse_system,
    serialize_dgla,
    serialize_model,
    serialize_system,
)
from mcprod.products import mc_product


def test_model_roundtrip():
    A = models.heisenberg()
    text = serialize_model(A)
    B = parse_model(text)
    assert [g.name for g in B.generators] == [g.name for g in A.generators]
    assert B.truncation == A.truncation
    assert serialize_model(B) == text
    assert B.validate().ok


def test_model_text_fixture():
    A = parse_model(models.HEISENBERG_MODEL_TEXT)
    assert A.validate().ok
    assert A.betti(2) == 2


def test_model_errors():
    with pytest.raises(FormatError):
        parse_model("generators:\n  a 1\n")  # missing truncation
    with pytest.raises(FormatError):
        parse_model("truncation: 5\ngenerators:\n  a one\n")
    with pytest.raises(FormatError):
        parse_model("truncation: 5\ngenerators:\n  a 1\ndifferential:\n  zz: a\n")


def test_dgla_roundtrip():
    for args in ((2, [1, 1]), (3, [2, 1, 1]), (4, [1, 1, 1, 1])):
        lam = massey_data(*args)
        text = serialize_dgla(lam)
        back = parse_dgla(text)
        assert back.q == lam.q
        assert back.total.dim == lam.total.dim
        assert back.total.brackets == lam.total.brackets
        assert serialize_dgla(back) == text
        assert back.validate().ok


def test_dgla_q_mismatch_rejected():
    lam = massey_data(3, [2, 1, 1])
    text = serialize_dgla(lam).replace("q: -1", "q: 0")
    with pytest.raises(FormatError):
        parse_dgla(text)


def test_dgla_with_differential_roundtrip():
    text = """\
basis:
  u -1
  v 0
  z -1
brackets:
differential:
  u: v
center: z
q: -1
"""
    data = parse_dgla(text)
    assert data.validate().ok
    assert serialize_dgla(data) == text.replace("brackets:\n", "brackets:\n")


def test_system_roundtrip():
    A = models.heisenberg()
    lam = massey_data(3, [1, 1, 1])
    text = """\
system:
  e1: a
  e2: a
  e3: b
  b2_3: -c
"""
    sigma = parse_system(text, lam, A)
    assert serialize_system(sigma) == text
    assert not mc_product(sigma).cls.is_zero()


def test_system_rejects_non_mc():
    A = models.heisenberg()
    lam = massey_data(3, [1, 1, 1])
    with pytest.raises(ValueError):
        parse_system("system:\n  e1: a\n  e2: a\n  e3: b\n", lam, A)


def test_system_unknown_name():
    A = models.heisenberg()
    lam = massey_data(2, [1, 1])
    with pytest.raises(FormatError):
        parse_system("system:\n  nope: a\n", lam, A)


def test_report_json_roundtrip():
    rep = Report(
        command="cohomology", ok=True, exit_code=0,
        results={"degree": 2, "classes": [{"representative": "a*c"}]},
    )
    blob = rep.to_json()
    parsed = json.loads(blob)
    assert json.dumps(parsed, sort_keys=True, indent=2) == blob
    assert parsed["ok"] is True
