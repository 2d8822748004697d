"""Plain-text instance files and JSON result documents.

Instance files hold one record per line::

    # comment
    L <a> <b> [mult]     y = a*x + b
    V <x0> [mult]        x = x0

Numbers are integers, p/q fractions or decimals (converted exactly).
"""
from __future__ import annotations

import json
from pathlib import Path

from .kernel import Instance, Line, VerticalLine, format_rational, rational


class ParseError(ValueError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _number(tok, lineno):
    try:
        return rational(tok)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ParseError(lineno, f"not a rational number: {tok!r}") from None


def _mult(tok, lineno):
    try:
        m = int(tok)
    except ValueError:
        raise ParseError(lineno, f"multiplicity must be an integer, got {tok!r}") from None
    if m < 1:
        raise ParseError(lineno, f"multiplicity must be at least 1, got {m}")
    return m


def parse_instance(text: str) -> Instance:
    lines, verticals, mult = [], [], {}
    ident = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if not body:
            continue
        tag, args = body[0].upper(), body[1:]
        ident += 1
        if tag == "L":
            if len(args) not in (2, 3):
                raise ParseError(lineno, "expected 'L <a> <b> [mult]'")
            lines.append(Line(ident, _number(args[0], lineno), _number(args[1], lineno)))
        elif tag == "V":
            if len(args) not in (1, 2):
                raise ParseError(lineno, "expected 'V <x0> [mult]'")
            verticals.append(VerticalLine(ident, _number(args[0], lineno)))
        else:
            raise ParseError(lineno, f"unknown record type {body[0]!r}")
        if len(args) == (2 if tag == "V" else 3):
            m = _mult(args[-1], lineno)
            if m != 1:
                mult[ident] = m
    return Instance(lines, mult, verticals)


def read_instance(path) -> Instance:
    return parse_instance(Path(path).read_text())


def format_instance(instance: Instance, comment: str = "") -> str:
    rows = []
    for c in comment.splitlines():
        rows.append(f"# {c}".rstrip())
    items = [(l.id, "L", l) for l in instance.lines] + [(v.id, "V", v) for v in instance.verticals]
    for ident, tag, obj in sorted(items, key=lambda t: t[0]):
        if tag == "L":
            row = f"L {format_rational(obj.a)} {format_rational(obj.b)}"
        else:
            row = f"V {format_rational(obj.x0)}"
        m = instance.mu(ident)
        rows.append(row + (f" {m}" if m != 1 else ""))
    return "\n".join(rows) + "\n"


def write_instance(path, instance: Instance, comment: str = ""):
    Path(path).write_text(format_instance(instance, comment))


def point_json(p):
    return {"x": format_rational(p.x), "y": format_rational(p.y)}


def result_json(res, timings: bool = False) -> str:
    doc = {
        "schema": 1,
        "n": res.n,
        "mode": res.mode,
        "case": res.case.value,
        "max_level": res.max_level,
        "k0": res.k0,
        "search": res.search,
        "vertices": [dict(point_json(v.point), degree=v.degree, level=v.level, source=v.source)
                     for v in sorted(res.vertices, key=lambda v: v.point)],
    }
    if timings:
        doc["timings_ms"] = {k: round(v, 3) for k, v in sorted(res.timings.items())}
    return json.dumps(doc, indent=2) + "\n"


def oracle_json(o) -> str:
    doc = {
        "schema": 1,
        "n": o.n,
        "max_level": o.max_level,
        "vertices": [dict(point_json(v.point), degree=v.degree, level=v.level) for v in o.vertices],
        "vertex_count": len(o.all_vertex_levels),
    }
    return json.dumps(doc, indent=2) + "\n"


def chain_json(chain, k: int, upper: bool = True) -> str:
    """A level chain as a polyline: vertices plus the lines of its two rays."""
    doc = {
        "schema": 1,
        "k": k,
        "upper": upper,
        "edges": [{"a": format_rational(e.a), "b": format_rational(e.b), "line": e.id} for e in chain.edges],
        "vertices": [dict(point_json(v.point), lines=list(v.lines), turns=v.turns) for v in chain.vertices],
    }
    return json.dumps(doc, indent=2) + "\n"
