"""Line-oriented text formats for models, extension data, and systems.

All rationals are serialized as p or p/q in lowest terms; every format
round-trips bit-exactly through its serializer.  '#' starts a comment.

Model file:                      DGLA file:
    truncation: 8                    basis:
    generators:                        e1 0
      a 1                              e2 -1
      c 1                              eta -1
    differential:                    brackets:
      c: a*b                           [e1, e2]: eta
                                     differential:
System file:                         center: eta
    system:                          q: -1
      e1: a
      e2: 2/3*a*b
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from mcprod.cdga import Element, FreeCDGA
from mcprod.dgla import FDGLA, MCProductData
from mcprod.expressions import ParseError, _tokenize, parse_element, serialize_element
from mcprod.linalg import Vec
from mcprod.products import DefiningSystem
from mcprod.tensor import TensorElement


class FormatError(Exception):
    """Malformed input file."""


def _strip(line: str) -> str:
    if "#" in line:
        line = line[: line.index("#")]
    return line.strip()


def _sections(text: str) -> tuple[dict[str, str], dict[str, list[str]]]:
    """Split into top-level 'key: value' scalars and sectioned line lists."""
    scalars: dict[str, str] = {}
    sections: dict[str, list[str]] = {}
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*:", line):
            current = line[:-1]
            sections.setdefault(current, [])
            continue
        if raw[:1] not in (" ", "\t") and ":" in line:
            key, val = line.split(":", 1)
            key = key.strip()
            val = val.strip()
            if val == "":
                current = key
                sections.setdefault(current, [])
            else:
                scalars[key] = val
                current = None
            continue
        if current is None:
            raise FormatError(f"line {lineno}: content outside any section: {line!r}")
        sections[current].append(line)
    return scalars, sections


def parse_model(text: str) -> FreeCDGA:
    """Model file -> FreeCDGA (syntax only; run validate separately)."""
    scalars, sections = _sections(text)
    if "truncation" not in scalars:
        raise FormatError("missing 'truncation:'")
    try:
        truncation = int(scalars["truncation"])
    except ValueError:
        raise FormatError(f"bad truncation {scalars['truncation']!r}")
    gens = []
    for line in sections.get("generators", []):
        bits = line.split()
        if len(bits) != 2:
            raise FormatError(f"bad generator line {line!r}; expected 'name degree'")
        try:
            gens.append((bits[0], int(bits[1])))
        except ValueError:
            raise FormatError(f"bad degree in {line!r}")
    if not gens:
        raise FormatError("no generators")
    try:
        A = FreeCDGA(gens, truncation=truncation)
    except ValueError as exc:
        raise FormatError(str(exc))
    images = {}
    for line in sections.get("differential", []):
        if ":" not in line:
            raise FormatError(f"bad differential line {line!r}; expected 'name: expr'")
        name, expr = line.split(":", 1)
        name = name.strip()
        if name not in A._index:
            raise FormatError(f"differential of unknown generator {name!r}")
        try:
            images[name] = parse_element(expr.strip(), A)
        except ParseError as exc:
            raise FormatError(f"d({name}): {exc}")
    A.set_differential(images)
    return A


def serialize_model(A: FreeCDGA) -> str:
    lines = [f"truncation: {A.truncation}", "generators:"]
    for g in A.generators:
        lines.append(f"  {g.name} {g.degree}")
    lines.append("differential:")
    for g, img in zip(A.generators, A.d_images):
        if not img.is_zero():
            lines.append(f"  {g.name}: {serialize_element(img)}")
    return "\n".join(lines) + "\n"


def _parse_linear(src: str, index: dict[str, int]) -> Vec:
    """Rational linear combination of basis names -> sparse vector."""
    tokens = _tokenize(src)
    if not tokens:
        raise FormatError(f"empty linear expression {src!r}")
    out: Vec = {}
    i = 0

    def term(i: int, sign: Fraction) -> int:
        coeff = Fraction(1)
        if i < len(tokens) and tokens[i].kind == "int":
            num = int(tokens[i].text)
            i += 1
            if i < len(tokens) and tokens[i].kind == "op" and tokens[i].text == "/":
                i += 1
                if i >= len(tokens) or tokens[i].kind != "int":
                    raise FormatError(f"bad rational in {src!r}")
                num = Fraction(num, int(tokens[i].text))
                i += 1
            coeff = Fraction(num)
            if i < len(tokens) and tokens[i].kind == "op" and tokens[i].text == "*":
                i += 1
            else:
                if coeff != 0:
                    raise FormatError(f"constant term {coeff} not allowed in {src!r}")
                return i
        if i >= len(tokens) or tokens[i].kind != "name":
            raise FormatError(f"expected basis name in {src!r}")
        name = tokens[i].text
        if name not in index:
            raise FormatError(f"unknown basis element {name!r} in {src!r}")
        i += 1
        j = index[name]
        s = out.get(j, Fraction(0)) + sign * coeff
        if s:
            out[j] = s
        else:
            out.pop(j, None)
        return i

    sign = Fraction(1)
    if tokens[0].kind == "op" and tokens[0].text in "+-":
        sign = Fraction(1) if tokens[0].text == "+" else Fraction(-1)
        i = 1
    i = term(i, sign)
    while i < len(tokens):
        tok = tokens[i]
        if tok.kind != "op" or tok.text not in "+-":
            raise FormatError(f"expected '+' or '-' in {src!r}")
        sign = Fraction(1) if tok.text == "+" else Fraction(-1)
        i = term(i + 1, sign)
    return out


_BRACKET_KEY = re.compile(r"\[\s*([A-Za-z_][A-Za-z0-9_]*)\s*,\s*([A-Za-z_][A-Za-z0-9_]*)\s*\]")


def parse_dgla(text: str) -> MCProductData:
    """DGLA file -> MCProductData (syntax only; validate separately)."""
    scalars, sections = _sections(text)
    basis = []
    for line in sections.get("basis", []):
        bits = line.split()
        if len(bits) != 2:
            raise FormatError(f"bad basis line {line!r}; expected 'name degree'")
        try:
            basis.append((bits[0], int(bits[1])))
        except ValueError:
            raise FormatError(f"bad degree in {line!r}")
    if not basis:
        raise FormatError("no basis")
    index = {n: i for i, (n, _) in enumerate(basis)}
    brackets = {}
    for line in sections.get("brackets", []):
        if ":" not in line:
            raise FormatError(f"bad bracket line {line!r}")
        key, val = line.split(":", 1)
        m = _BRACKET_KEY.fullmatch(key.strip())
        if not m:
            raise FormatError(f"bad bracket key {key.strip()!r}; expected [x,y]")
        a, b = m.group(1), m.group(2)
        if a not in index or b not in index:
            raise FormatError(f"unknown basis element in bracket {key.strip()!r}")
        brackets[(index[a], index[b])] = _parse_linear(val.strip(), index)
    differential = {}
    for line in sections.get("differential", []):
        if ":" not in line:
            raise FormatError(f"bad differential line {line!r}")
        name, val = line.split(":", 1)
        name = name.strip()
        if name not in index:
            raise FormatError(f"differential of unknown element {name!r}")
        differential[index[name]] = _parse_linear(val.strip(), index)
    if "center" not in scalars:
        raise FormatError("missing 'center:'")
    center = scalars["center"]
    if center not in index:
        raise FormatError(f"unknown center {center!r}")
    try:
        total = FDGLA(basis, brackets, differential)
    except ValueError as exc:
        raise FormatError(str(exc))
    data = MCProductData.from_center(total, center)
    if "q" in scalars:
        try:
            q = int(scalars["q"])
        except ValueError:
            raise FormatError(f"bad q {scalars['q']!r}")
        if q != data.q:
            raise FormatError(f"declared q = {q} but the center has degree {data.q}")
    return data


def serialize_dgla(data: MCProductData) -> str:
    t = data.total
    lines = ["basis:"]
    for name, deg in t.basis:
        lines.append(f"  {name} {deg}")
    lines.append("brackets:")
    for (i, j), v in sorted(t.brackets.items()):
        if i > j or not v:
            continue
        lines.append(f"  [{t.names[i]}, {t.names[j]}]: {_show_linear(v, t)}")
    lines.append("differential:")
    for j in sorted(t.differential):
        lines.append(f"  {t.names[j]}: {_show_linear(t.differential[j], t)}")
    lines.append(f"center: {t.names[data.center_index]}")
    lines.append(f"q: {data.q}")
    return "\n".join(lines) + "\n"


def _show_linear(v: Vec, g: FDGLA) -> str:
    bits = []
    for i in sorted(v):
        c = v[i]
        mag = -c if c < 0 else c
        body = g.names[i] if mag == 1 else f"{mag}*{g.names[i]}"
        bits.append(("-" if c < 0 else "+", body))
    sign, body = bits[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in bits[1:]:
        out += f" {sign} {body}"
    return out


def parse_system(text: str, data: MCProductData, algebra: FreeCDGA) -> DefiningSystem:
    """System file -> DefiningSystem over (algebra, data.quotient)."""
    scalars, sections = _sections(text)
    L = data.quotient
    terms: dict[int, Element] = {}
    for line in sections.get("system", []):
        if ":" not in line:
            raise FormatError(f"bad system line {line!r}; expected 'name: expr'")
        name, expr = line.split(":", 1)
        name = name.strip()
        if name not in L.index:
            raise FormatError(f"unknown quotient basis element {name!r}")
        try:
            el = parse_element(expr.strip(), algebra)
        except ParseError as exc:
            raise FormatError(f"{name}: {exc}")
        if not el.is_zero():
            terms[L.index[name]] = el
    element = TensorElement(algebra, L, 1, terms)
    return DefiningSystem(data, element)


def serialize_system(sigma: DefiningSystem) -> str:
    L = sigma.data.quotient
    lines = ["system:"]
    for i in sorted(sigma.element.terms):
        lines.append(f"  {L.names[i]}: {serialize_element(sigma.element.terms[i])}")
    return "\n".join(lines) + "\n"


# -- reports -----------------------------------------------------------------


@dataclass
class Report:
    """Outcome of one command; the machine variant is stable JSON."""

    command: str
    ok: bool
    exit_code: int
    results: dict = field(default_factory=dict)
    error: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "ok": self.ok,
            "exit_code": self.exit_code,
            "results": self.results,
            "error": self.error,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def human(self) -> str:
        lines = [f"[{self.command}] {'ok' if self.ok else 'FAILED'}"]
        if self.error:
            lines.append(f"  error: {self.error}")
        lines.extend(_human_dict(self.results, indent=2))
        return "\n".join(lines)


def _human_dict(d, indent=0) -> list[str]:
    pad = " " * indent
    out = []
    if isinstance(d, dict):
        for k in d:
            v = d[k]
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.extend(_human_dict(v, indent + 2))
            else:
                out.append(f"{pad}{k}: {v}")
    elif isinstance(d, list):
        for v in d:
            if isinstance(v, (dict, list)):
                out.extend(_human_dict(v, indent))
            else:
                out.append(f"{pad}- {v}")
    return out


def fraction_str(c: Fraction) -> str:
    return str(c)


def class_payload(cls) -> dict:
    return {
        "degree": cls.degree,
        "zero": cls.is_zero(),
        "representative": serialize_element(cls.representative),
        "coordinates": {str(k): str(v) for k, v in sorted(cls.coordinates.items())},
    }
