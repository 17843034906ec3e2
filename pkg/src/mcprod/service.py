"""Command handlers shared by the HTTP API and the CLI.

Each handler takes raw file contents (never paths), runs the requested
computation and returns an io.Report.  Exit codes: 0 success, 1 for a
mathematical failure (invalid structure, obstruction, class survives,
descend assertion), 2 for malformed input.
"""

from __future__ import annotations

from typing import Optional, Sequence

from mcprod import acceptance
from mcprod.cdga import DegreeRangeError, NotACocycle
from mcprod.expressions import ParseError, parse_element, serialize_element
from mcprod.fibrations import DescendError, adjoin_odd, annihilates, descend
from mcprod.io import (
    FormatError,
    Report,
    class_payload,
    parse_dgla,
    parse_model,
    parse_system,
    serialize_dgla,
    serialize_model,
    serialize_system,
)
from mcprod.products import CurvatureEscape, massey_product, mc_product

def _input_error(command: str, exc: Exception) -> Report:
    return Report(command=command, ok=False, exit_code=2, error=str(exc))


def _math_error(command: str, message: str, results: Optional[dict] = None) -> Report:
    return Report(
        command=command, ok=False, exit_code=1, results=results or {}, error=message
    )


def _load_valid_model(command: str, model_text: str):
    """Parse and validate; returns (algebra, None) or (None, error Report)."""
    try:
        A = parse_model(model_text)
    except FormatError as exc:
        return None, _input_error(command, exc)
    rep = A.validate()
    if not rep.ok:
        return None, _math_error(command, "model is not a valid CDGA",
                                 {"failures": rep.failures})
    return A, None


def run_validate(model_text: str) -> Report:
    command = "validate"
    try:
        A = parse_model(model_text)
    except FormatError as exc:
        return _input_error(command, exc)
    rep = A.validate()
    results = {
        "generators": [{"name": g.name, "degree": g.degree} for g in A.generators],
        "truncation": A.truncation,
        "trustworthy_degree_range": f"0..{A.trustworthy_range()}",
        "failures": rep.failures,
    }
    if rep.ok:
        return Report(command=command, ok=True, exit_code=0, results=results)
    return _math_error(command, "model is not a valid CDGA", results)


def run_cohomology(model_text: str, degree: int) -> Report:
    command = "cohomology"
    A, err = _load_valid_model(command, model_text)
    if err:
        return err
    try:
        classes = A.cohomology(degree)
    except DegreeRangeError as exc:
        return _input_error(command, exc)
    results = {
        "degree": degree,
        "dimension": len(classes),
        "classes": [class_payload(c) for c in classes],
        "trustworthy_degree_range": f"0..{A.trustworthy_range()}",
    }
    return Report(command=command, ok=True, exit_code=0, results=results)


def run_massey(model_text: str, expressions: Sequence[str]) -> Report:
    command = "massey"
    A, err = _load_valid_model(command, model_text)
    if err:
        return err
    classes = []
    try:
        for src in expressions:
            el = parse_element(src, A)
            classes.append(A.reduce_to_class(el))
    except ParseError as exc:
        return _input_error(command, exc)
    except NotACocycle as exc:
        return _math_error(command, f"input is not a cocycle: {exc}")
    if len(classes) < 2:
        return _input_error(command, ValueError("need at least two classes"))
    try:
        res = massey_product(A, classes)
    except ValueError as exc:
        return _input_error(command, exc)
    if res.obstructed:
        window, obs = res.obstruction
        return _math_error(
            command,
            f"obstructed at window {window}",
            {
                "obstruction_window": list(window),
                "obstruction_class": class_payload(obs),
                "note": res.note,
            },
        )
    indet = res.indeterminacy
    results = {
        "value": class_payload(res.value.cls),
        "indeterminacy_dimension": indet.dim if indet else 0,
        "indeterminacy_basis": [
            {str(k): str(v) for k, v in sorted(vec.items())}
            for vec in (indet.vectors if indet else [])
        ],
        "defining_system": serialize_system(res.system),
        "note": res.note,
    }
    return Report(command=command, ok=True, exit_code=0, results=results)


def _lift_payload(sigma, product) -> dict:
    total = sigma.data.total
    lift = product.witness_lift
    return {
        total.names[i]: serialize_element(e) for i, e in sorted(lift.terms.items())
    }


def run_mc_product(model_text: str, dgla_text: str, system_text: str) -> Report:
    command = "mc-product"
    A, err = _load_valid_model(command, model_text)
    if err:
        return err
    try:
        data = parse_dgla(dgla_text)
    except FormatError as exc:
        return _input_error(command, exc)
    rep = data.validate()
    if not rep.ok:
        return _math_error(command, "extension data is invalid",
                           {"failures": rep.failures})
    try:
        sigma = parse_system(system_text, data, A)
    except FormatError as exc:
        return _input_error(command, exc)
    except ValueError as exc:
        return _math_error(command, f"system rejected: {exc}")
    try:
        product = mc_product(sigma)
    except CurvatureEscape as exc:
        return _math_error(command, str(exc))
    except DegreeRangeError as exc:
        return _input_error(command, exc)
    results = {
        "q": data.q,
        "product_degree": 2 - data.q,
        "value": class_payload(product.cls),
        "witness_lift": _lift_payload(sigma, product),
    }
    return Report(command=command, ok=True, exit_code=0, results=results)


def run_annihilate(model_text: str, cocycle: str, max_degree: int) -> Report:
    command = "annihilate"
    A, err = _load_valid_model(command, model_text)
    if err:
        return err
    try:
        el = parse_element(cocycle, A)
    except ParseError as exc:
        return _input_error(command, exc)
    try:
        cls = A.reduce_to_class(el)
    except NotACocycle as exc:
        return _math_error(command, f"input is not a cocycle: {exc}")
    try:
        res = annihilates(A, cls, N=max_degree)
    except ValueError as exc:
        return _input_error(command, exc)
    results = {
        "class": class_payload(cls),
        "annihilated": res.annihilated,
        "conclusive": res.conclusive,
        "message": res.message,
    }
    if res.annihilated and res.witness is not None:
        wit = res.witness
        results["witness"] = {
            "model": serialize_model(wit.total),
            "new_generators": [
                {
                    "name": name,
                    "degree": wit.total.generators[wit.total._index[name]].degree,
                    "stage": wit.stages[name],
                    "euler": serialize_element(
                        wit.total.d_images[wit.total._index[name]]
                    ),
                }
                for name in wit.new_names
            ],
        }
        return Report(command=command, ok=True, exit_code=0, results=results)
    return _math_error(command, "class was not annihilated", results)


def run_descend(
    model_text: str,
    euler: str,
    x_degree: int,
    dgla_text: str,
    system_text: str,
    target_class: str,
    x_name: str = "x",
) -> Report:
    command = "descend"
    A, err = _load_valid_model(command, model_text)
    if err:
        return err
    try:
        e = parse_element(euler, A)
        c = parse_element(target_class, A)
    except ParseError as exc:
        return _input_error(command, exc)
    try:
        fib = adjoin_odd(A, e, x_name, degree=x_degree if e.is_zero() else None)
    except ValueError as exc:
        return _input_error(command, exc)
    if not e.is_zero() and fib.steps[0].degree != x_degree:
        return _input_error(
            command,
            ValueError(
                f"x-degree {x_degree} conflicts with |euler| - 1 = {fib.steps[0].degree}"
            ),
        )
    try:
        data = parse_dgla(dgla_text)
    except FormatError as exc:
        return _input_error(command, exc)
    rep = data.validate()
    if not rep.ok:
        return _math_error(command, "extension data is invalid",
                           {"failures": rep.failures})
    try:
        sigma = parse_system(system_text, data, fib.total)
    except FormatError as exc:
        return _input_error(command, exc)
    except ValueError as exc:
        return _math_error(command, f"system rejected: {exc}")
    try:
        res = descend(fib, data, sigma, c)
    except DescendError as exc:
        return _math_error(command, str(exc))
    results = {
        "checks": res.checks,
        "normalized_c": serialize_element(res.normalized_c),
        "class": class_payload(A.reduce_to_class(res.normalized_c)),
        "l0": {
            data.total.names[i]: str(cc) for i, cc in sorted(res.ell0.items())
        },
        "zeta": serialize_dgla(res.zeta),
        "descended_system": serialize_system(res.system),
    }
    return Report(command=command, ok=True, exit_code=0, results=results)


def run_selftest() -> Report:
    command = "selftest"
    results = acceptance.run_all()
    lines = []
    all_ok = True
    for r in results:
        lines.append({"criterion": r.name, "verdict": r.verdict, "detail": r.detail})
        if not r.passed:
            all_ok = False
    report = Report(
        command=command,
        ok=all_ok,
        exit_code=0 if all_ok else 1,
        results={"criteria": lines},
        error=None if all_ok else "some criteria failed (see verdicts)",
    )
    return report
