import json

from mcprod import models, service
from mcprod.dgla import massey_data
from mcprod.io import serialize_dgla

MODEL = models.HEISENBERG_MODEL_TEXT

TRIPLE_DGLA = serialize_dgla(massey_data(3, [1, 1, 1]))

TRIPLE_SYSTEM = """\
system:
  e1: a
  e2: a
  e3: b
  b2_3: -c
"""


def test_validate_ok():
    rep = service.run_validate(MODEL)
    assert rep.ok and rep.exit_code == 0
    assert rep.results["trustworthy_degree_range"] == "0..8"


def test_validate_math_failure():
    bad = MODEL.replace("c: a*b", "c: a")
    rep = service.run_validate(bad)
    assert not rep.ok and rep.exit_code == 1
    assert rep.results["failures"]


def test_validate_input_error():
    rep = service.run_validate("truncation: x\n")
    assert rep.exit_code == 2


def test_cohomology():
    rep = service.run_cohomology(MODEL, 2)
    assert rep.ok
    assert rep.results["dimension"] == 2
    reps = sorted(c["representative"] for c in rep.results["classes"])
    assert reps == ["a*c", "b*c"]


def test_cohomology_out_of_range():
    rep = service.run_cohomology(MODEL, 99)
    assert rep.exit_code == 2


def test_massey_value():
    rep = service.run_massey(MODEL, ["a", "a", "b"])
    assert rep.ok and rep.exit_code == 0
    val = rep.results["value"]
    assert val["representative"] in ("-a*c", "a*c")
    assert rep.results["indeterminacy_dimension"] == 0


def test_massey_obstruction_exit_1():
    model = "truncation: 6\ngenerators:\n  a 1\n  b 1\ndifferential:\n"
    rep = service.run_massey(model, ["a", "b", "a"])
    assert not rep.ok and rep.exit_code == 1
    assert rep.results["obstruction_window"] == [1, 2]


def test_massey_not_cocycle_exit_1():
    rep = service.run_massey(MODEL, ["c", "a"])
    assert rep.exit_code == 1


def test_massey_parse_error_exit_2():
    rep = service.run_massey(MODEL, ["a*zz", "b"])
    assert rep.exit_code == 2


def test_mc_product():
    rep = service.run_mc_product(MODEL, TRIPLE_DGLA, TRIPLE_SYSTEM)
    assert rep.ok
    assert rep.results["product_degree"] == 2
    assert rep.results["value"]["representative"] == "-a*c"


def test_mc_product_rejects_non_mc_system():
    # ab (x) b1_2 appears in the curvature and is nonzero, so this is not MC
    rep = service.run_mc_product(MODEL, TRIPLE_DGLA, "system:\n  e1: a\n  e2: b\n")
    assert rep.exit_code == 1


def test_annihilate_true():
    rep = service.run_annihilate(MODEL, "a*c", 6)
    assert rep.ok and rep.exit_code == 0
    assert rep.results["annihilated"] is True
    wit = rep.results["witness"]
    assert wit["new_generators"][0]["euler"] == "a*c"
    # the witness model text parses and validates
    from mcprod.io import parse_model
    W = parse_model(wit["model"])
    assert W.validate().ok


def test_annihilate_unit_false():
    rep = service.run_annihilate(MODEL, "1", 6)
    assert not rep.ok and rep.exit_code == 1
    assert rep.results["conclusive"] is True


def test_descend_end_to_end():
    from mcprod.io import serialize_model, serialize_system
    from mcprod.products import massey_product
    W = models.triple_witness()
    u, a, b, s, t = W.gens()
    res = massey_product(
        W, [W.reduce_to_class(u), W.reduce_to_class(a), W.reduce_to_class(b)],
        compute_indeterminacy=False,
    )
    model_text = serialize_model(W)
    dgla_text = serialize_dgla(res.system.data)
    system_text = serialize_system(res.system)
    c_text = "-b*s + t*u"
    rep = service.run_descend(model_text, "0", 3, dgla_text, system_text, c_text)
    assert rep.ok, rep.error
    assert "zeta" in rep.results
    # the reported data re-verifies through mc-product
    rep2 = service.run_mc_product(
        model_text, rep.results["zeta"], rep.results["descended_system"]
    )
    assert rep2.ok
    assert rep2.results["value"]["representative"] == rep.results["normalized_c"]


def test_descend_math_failure_exit_1():
    from mcprod.io import serialize_model
    W = models.triple_witness()
    model_text = serialize_model(W)
    rep = service.run_descend(
        model_text, "0", 3, TRIPLE_DGLA, "system:\n", "a*b*t"
    )
    assert rep.exit_code == 1  # q = 0 is even; rejected mathematically


def test_report_machine_roundtrip():
    rep = service.run_massey(MODEL, ["a", "a", "b"])
    blob = rep.to_json()
    assert json.dumps(json.loads(blob), sort_keys=True, indent=2) == blob
