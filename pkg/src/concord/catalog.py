"""Catalog files: named Seifert matrices, templates, expressions and atom
assignments in a line-oriented text format.

Sections are opened by headers and hold one "key = value" style line per
fact::

    [knot granny]
    matrix = [[-1, 1, 0, 0], [0, -1, 0, 0], [0, 0, -1, 1], [0, 0, 0, -1]]

    [template myop]
    base = 9_46
    slice = true
    site alpha = (1, 0)
    site beta = (0, 1)
    metabolizer = t - 2

    [expr J4]
    iterate R946_op 4 trefoil

    [assign]
    rho1(9_46) = 8/3
    C = 1

Rationals are exact ('-1/2' style literals); '#' starts a comment.  The
built-in knots (unknot, trefoil, figure-eight, 9_46) and templates (R946_op,
fig8_op) are pre-registered and cannot be redefined.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .infection import (
    KnotExpr,
    Atom,
    RhoAtom,
    Site,
    Template,
    FIG8_DOUBLING,
    R946_DOUBLING,
    infect,
    iterate_operator,
    rho0_atom,
    rho1_atom,
    rho_sub_atom,
)
from .intervals import RatInterval
from .obstruction import Assignment
from .seifert import FIGURE_EIGHT, K9_46, TREFOIL, UNKNOT, SeifertMatrix


class ParseError(ValueError):
    """Syntax problem in a catalog file, with 1-based line and column."""

    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class ValidationError(ValueError):
    """A parsed catalog entry that does not make sense, by name."""

    def __init__(self, name: str, reason: str):
        super().__init__(f"{name}: {reason}")
        self.name = name
        self.reason = reason


_CONSTANT_NAMES = ("C", "Cprime", "D")


# ---------------------------------------------------------------------------
# Literal parsers


def _parse_rational(text: str, line: int, col: int = 1) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational literal: {text.strip()!r}", line, col)


def _parse_nested(text: str, line: int):
    """Parse a nested bracket list of rationals: '[[0, 2], [1, 0]]'."""
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse_item():
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            raise ParseError("unexpected end of list literal", line, pos)
        if text[pos] in "[(":
            close = "]" if text[pos] == "[" else ")"
            pos += 1
            items = []
            skip_ws()
            if pos < len(text) and text[pos] == close:
                pos += 1
                return tuple(items)
            while True:
                items.append(parse_item())
                skip_ws()
                if pos < len(text) and text[pos] == ",":
                    pos += 1
                    continue
                if pos < len(text) and text[pos] == close:
                    pos += 1
                    return tuple(items)
                raise ParseError("expected ',' or closing bracket", line, pos + 1)
        start = pos
        while pos < len(text) and text[pos] not in ",])(":
            pos += 1
        return _parse_rational(text[start:pos], line, start + 1)

    out = parse_item()
    skip_ws()
    if pos != len(text):
        raise ParseError("trailing characters after list literal", line, pos + 1)
    return out


def _parse_vector(text: str, line: int) -> tuple:
    v = _parse_nested(text.strip(), line)
    if not isinstance(v, tuple) or any(isinstance(e, tuple) for e in v):
        raise ParseError("expected a flat vector of rationals", line)
    return v


def _parse_matrix(text: str, line: int) -> tuple:
    m = _parse_nested(text.strip(), line)
    if not isinstance(m, tuple) or not all(isinstance(r, tuple) for r in m):
        raise ParseError("expected a list of rows", line)
    return m


_TERM_RE = re.compile(
    r"^(?P<sign>-)?(?P<coef>\d+(?:/\d+)?)?(?:\*)?(?P<var>t(?:\^(?P<exp>\d+))?)?$"
)


def parse_poly(text: str, line: int = 0) -> tuple:
    """Ascending coefficient tuple for a polynomial literal like
    't^2 - 5/2*t + 1'."""
    compact = text.replace(" ", "")
    if not compact:
        raise ParseError("empty polynomial literal", line)
    pieces = compact.replace("-", "+-").split("+")
    coeffs = {}
    for piece in pieces:
        if not piece:
            continue
        m = _TERM_RE.match(piece)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ParseError(f"bad polynomial term {piece!r} in {text!r}", line)
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign"):
            coef = -coef
        exp = 0
        if m.group("var"):
            exp = int(m.group("exp")) if m.group("exp") else 1
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + coef
    degree = max(coeffs)
    out = tuple(coeffs.get(k, Fraction(0)) for k in range(degree + 1))
    while len(out) > 1 and out[-1] == 0:
        out = out[:-1]
    return out


def _parse_value(text: str, line: int):
    """An assignment value: exact rational or '[lo, hi]' interval."""
    s = text.strip()
    if s.startswith("["):
        v = _parse_nested(s, line)
        if len(v) != 2 or any(isinstance(e, tuple) for e in v):
            raise ParseError("interval literal needs exactly two rationals", line)
        if v[0] > v[1]:
            raise ParseError(f"empty interval [{v[0]}, {v[1]}]", line)
        return RatInterval(v[0], v[1])
    return _parse_rational(s, line)


# ---------------------------------------------------------------------------
# The catalog


@dataclass
class Catalog:
    """Resolved catalog: built-ins plus whatever a file defined."""

    knots: dict = field(default_factory=dict)
    templates: dict = field(default_factory=dict)
    exprs: dict = field(default_factory=dict)
    assignment: Assignment = field(default_factory=Assignment)
    constants: dict = field(default_factory=dict)
    sources: tuple = ()

    @staticmethod
    def builtins() -> "Catalog":
        return Catalog(
            knots={
                "unknot": UNKNOT,
                "trefoil": TREFOIL,
                "figure-eight": FIGURE_EIGHT,
                "9_46": K9_46,
            },
            templates={"R946_op": R946_DOUBLING, "fig8_op": FIG8_DOUBLING},
        )

    def names(self) -> set:
        return set(self.knots) | set(self.templates) | set(self.exprs)

    def expression(self, name: str) -> KnotExpr:
        if name in self.exprs:
            return self.exprs[name]
        if name in self.knots:
            return Atom(self.knots[name])
        raise ValidationError(name, "unknown knot or expression")

    def template(self, name: str) -> Template:
        if name in self.templates:
            return self.templates[name]
        raise ValidationError(name, "unknown template")

    def atom(self, text: str) -> RhoAtom:
        """Resolve an atom literal: rho0(NAME), rho1(NAME) or rho(NAME, POLY)."""
        m = re.match(r"^\s*(rho0|rho1|rho)\((.*)\)\s*$", text)
        if not m:
            raise ValidationError(text.strip(), "not an atom literal (rho0/rho1/rho)")
        kind, body = m.group(1), m.group(2).strip()
        if kind == "rho0":
            return rho0_atom(self.expression(body))
        if kind == "rho1":
            if body not in self.knots:
                raise ValidationError(body, "rho1 atoms name a knot")
            return rho1_atom(self.knots[body])
        name, sep, poly = body.partition(",")
        if not sep:
            raise ValidationError(text.strip(), "rho atoms need a knot and a divisor")
        name = name.strip()
        if name not in self.knots:
            raise ValidationError(name, "rho atoms name a knot")
        return rho_sub_atom(self.knots[name], parse_poly(poly.strip()))


# ---------------------------------------------------------------------------
# Section assembly


def _split_comment(raw: str) -> str:
    cut = raw.find("#")
    return raw if cut < 0 else raw[:cut]


_HEADER_RE = re.compile(r"^\[\s*(knot|template|expr|assign)(?:\s+(\S+))?\s*\]$")


def _key_value(body: str, line: int):
    key, sep, value = body.partition("=")
    if not sep:
        raise ParseError("expected 'key = value'", line, len(body) + 1)
    return key.strip(), value.strip()


def _build_knot(catalog: Catalog, name: str, body, header_line: int):
    matrix = None
    slice_hint = False
    for line, text in body:
        key, value = _key_value(text, line)
        if key == "matrix":
            matrix = _parse_matrix(value, line)
        elif key == "slice":
            slice_hint = _parse_bool(value, line)
        else:
            raise ParseError(f"unknown knot field {key!r}", line)
    if matrix is None:
        raise ValidationError(name, "knot section needs a matrix")
    try:
        catalog.knots[name] = SeifertMatrix(matrix, name=name, slice_hint=slice_hint)
    except ValueError as ex:
        raise ValidationError(name, str(ex))


def _parse_bool(value: str, line: int) -> bool:
    if value == "true":
        return True
    if value == "false":
        return False
    raise ParseError(f"expected true or false, got {value!r}", line)


def _build_template(catalog: Catalog, name: str, body, header_line: int):
    base = None
    slice_flag = False
    sites = []
    metabolizers = []
    rho1_known = None
    for line, text in body:
        key, value = _key_value(text, line)
        if key == "base":
            if value not in catalog.knots:
                raise ValidationError(name, f"base knot {value!r} is not defined")
            base = catalog.knots[value]
        elif key == "slice":
            slice_flag = _parse_bool(value, line)
        elif key.startswith("site "):
            site_name = key[5:].strip()
            disjoint = True
            if value.endswith(" nondisjoint"):
                disjoint = False
                value = value[: -len(" nondisjoint")]
            sites.append(Site(site_name, _parse_vector(value, line), disjoint))
        elif key == "metabolizer":
            metabolizers.append(parse_poly(value, line))
        elif key == "rho1":
            rho1_known = _parse_rational(value, line)
        else:
            raise ParseError(f"unknown template field {key!r}", line)
    if base is None:
        raise ValidationError(name, "template section needs a base knot")
    if not sites:
        raise ValidationError(name, "template section needs at least one site")
    try:
        catalog.templates[name] = Template(
            name=name,
            base=base,
            sites=tuple(sites),
            slice_flag=slice_flag,
            ribbon_metabolizers=tuple(metabolizers),
            rho1_known=rho1_known,
        )
    except ValueError as ex:
        raise ValidationError(name, str(ex))


def _build_expr(catalog: Catalog, name: str, body, header_line: int):
    if len(body) != 1:
        raise ParseError(
            "expr section needs exactly one definition line",
            body[1][0] if len(body) > 1 else header_line,
        )
    line, text = body[0]
    words = text.split()
    kind = words[0]
    try:
        if kind == "atom" and len(words) == 2:
            expr = catalog.expression(words[1])
        elif kind == "sum" and len(words) >= 3:
            expr = catalog.expression(words[1])
            for w in words[2:]:
                expr = expr + catalog.expression(w)
        elif kind == "infect" and len(words) >= 3:
            tpl = catalog.template(words[1])
            inputs = {}
            for w in words[2:]:
                site, sep, target = w.partition("=")
                if not sep:
                    raise ParseError(f"expected site=EXPR, got {w!r}", line)
                inputs[site] = catalog.expression(target)
            expr = infect(tpl, inputs)
        elif kind == "iterate" and len(words) == 4:
            tpl = catalog.template(words[1])
            try:
                n = int(words[2])
            except ValueError:
                raise ParseError(f"iteration count must be an integer, got {words[2]!r}", line)
            expr = iterate_operator(tpl, n, catalog.expression(words[3]))
        else:
            raise ParseError(
                "expected 'atom N', 'sum A B ...', 'infect TPL site=EXPR ...' "
                "or 'iterate TPL N SEED'",
                line,
            )
    except ValueError as ex:
        if isinstance(ex, (ParseError, ValidationError)):
            raise
        raise ValidationError(name, str(ex))
    catalog.exprs[name] = expr


def _build_assign(catalog: Catalog, body):
    updates = dict(catalog.assignment.items())
    for line, text in body:
        key, value = _key_value(text, line)
        parsed = _parse_value(value, line)
        if key in _CONSTANT_NAMES:
            if isinstance(parsed, RatInterval):
                raise ParseError(f"constant {key} must be an exact rational", line)
            catalog.constants[key] = parsed
        else:
            updates[catalog.atom(key)] = parsed
    catalog.assignment = Assignment(updates)


_BUILDERS = {"knot": _build_knot, "template": _build_template, "expr": _build_expr}


def loads(text: str, source: str = "<catalog>") -> Catalog:
    """Parse catalog text on top of the built-ins."""
    catalog = Catalog.builtins()
    catalog.sources = (source,)
    merge(catalog, text)
    return catalog


def merge(catalog: Catalog, text: str) -> None:
    """Parse catalog text into an existing catalog."""
    section = None  # (kind, name, header_line, body list)
    sections = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        stripped = _split_comment(raw).strip()
        if not stripped:
            continue
        if stripped.startswith("["):
            m = _HEADER_RE.match(stripped)
            if not m:
                raise ParseError(f"bad section header {stripped!r}", line_no)
            kind, name = m.group(1), m.group(2)
            if kind == "assign":
                if name is not None:
                    raise ParseError("[assign] takes no name", line_no)
            elif name is None:
                raise ParseError(f"[{kind}] header needs a name", line_no)
            section = (kind, name, line_no, [])
            sections.append(section)
        else:
            if section is None:
                raise ParseError("content before any section header", line_no)
            section[3].append((line_no, stripped))
    for kind, name, header_line, body in sections:
        if kind == "assign":
            _build_assign(catalog, body)
            continue
        if name in catalog.names():
            raise ValidationError(name, "name already defined (built-ins included)")
        _BUILDERS[kind](catalog, name, body, header_line)


def load(path: str) -> Catalog:
    """Load and validate a catalog file; built-ins are always pre-registered."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return loads(text, source=path)
