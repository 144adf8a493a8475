"""Coefficient expressions and the YAML algebra / witness file formats.

Coefficient grammar (whitespace is ignored)::

    coefficient := sum [ "/" sum ]          # at most one division, top level only
    sum         := ["+"|"-"] term { ("+"|"-") term }
    term        := factor { ["*"] factor }  # juxtaposition multiplies: 2t, 3(a+1)
    factor      := atom [ "^" ["-"] INT ]
    atom        := INT | INT "/" INT | NAME | "(" sum ")"

``p/q`` written without spaces is a rational literal. The two operands of
the top-level division must be single terms, so ``(t^3-1)/t`` is accepted
and ``1 + t/2`` is rejected as ambiguous. Names are the one free variable
of the context (``t`` for witnesses, the declared parameter for algebra
files) or constants bound to rational values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import yaml

from .algebra import Algebra, PARAM, RATIONAL
from .errors import DimensionMismatch, ParseError
from .degeneration import Witness
from .exactmath import Matrix, PolyRing, RatFunc, UniPoly, det

_TOKEN = re.compile(r"\s*(?:(?P<rat>\d+/\d+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str, where) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            where.fail(f"unexpected character {text[pos:].lstrip()[0]!r}", len(text) - len(text[pos:].lstrip()))
        kind = m.lastgroup
        start = m.start(kind)
        tok_text = m.group(kind)
        if kind == "rat" and toks and toks[-1].text == "^":
            # an exponent is an integer: re-read only the numerator
            tok_text = tok_text.split("/")[0]
            kind = "int"
            toks.append(_Tok(kind, tok_text, start))
            pos = start + len(tok_text)
            continue
        toks.append(_Tok(kind, tok_text, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Where:
    """Maps offsets inside a coefficient string to file positions."""

    def __init__(self, text: str, source: str = "<string>", line: int = 1, column: int = 1):
        self.text, self.source, self.line, self.column = text, source, line, column

    def fail(self, message: str, offset: int):
        raise ParseError(f"{message} in {self.text!r}", self.line, self.column + offset, self.source)


class _Domain:
    """Arithmetic for one value kind: Fraction, MultiPoly in a parameter, or RatFunc in t."""

    def __init__(self, kind: str, var: str | None = None):
        self.kind, self.var = kind, var
        if kind == PARAM:
            self.ring = PolyRing((var,))

    def const(self, c: Fraction):
        if self.kind == PARAM:
            return self.ring.constant(c)
        if self.kind == "ratfunc":
            return RatFunc(UniPoly([c], self.var))
        return c

    def variable(self):
        if self.kind == PARAM:
            return self.ring.gen(self.var)
        return RatFunc.var_power(1, self.var)

    def is_const(self, x) -> bool:
        if self.kind == PARAM:
            return x.is_constant()
        if self.kind == "ratfunc":
            return x.is_constant()
        return True


class _Parser:
    def __init__(self, text: str, domain: _Domain, bindings: Mapping[str, Fraction], where: _Where):
        self.domain, self.bindings, self.where = domain, bindings, where
        self.toks = _tokenize(text, where)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok: _Tok | None = None):
        self.where.fail(message, (tok or self.peek()).pos)

    def coefficient(self):
        start = self.peek()
        num, nterms = self.sum()
        if self.peek().text == "/":
            slash = self.take()
            if nterms > 1:
                self.fail("parenthesize the numerator of a division", start)
            den, dterms = self.sum()
            if dterms > 1:
                self.fail("parenthesize the denominator of a division", slash)
            if self.peek().text == "/":
                self.fail("only a single top-level division is allowed")
            if not den:
                self.fail("division by zero", slash)
            if self.domain.kind != "ratfunc" and not self.domain.is_const(den):
                self.fail("division by a non-constant is only allowed over t", slash)
            if self.domain.kind == PARAM:
                num = num / den.constant_value()
            else:
                num = num / den
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}")
        return num

    def sum(self):
        sign = 1
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = -1 if self.take().text == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        n = 1
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            t = self.term()
            acc = acc + t if op == "+" else acc - t
            n += 1
        return acc, n

    def _starts_factor(self) -> bool:
        tok = self.peek()
        return tok.kind in ("int", "rat", "name") or tok.text == "("

    def term(self):
        if not self._starts_factor():
            self.fail("expected a number, name or '('" if self.peek().kind != "end" else "unexpected end")
        acc = self.factor()
        while True:
            if self.peek().text == "*":
                self.take()
                acc = acc * self.factor()
            elif self._starts_factor():
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base_tok = self.peek()
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            neg = False
            if self.peek().text == "-":
                self.take()
                neg = True
            tok = self.take()
            if tok.kind != "int":
                self.fail("exponent must be an integer", tok)
            k = int(tok.text) * (-1 if neg else 1)
            if k < 0:
                if self.domain.kind != "ratfunc":
                    self.fail("negative exponents are only allowed over t", tok)
                if not base:
                    self.fail("zero to a negative power", base_tok)
            base = base**k
        return base

    def atom(self):
        tok = self.take()
        if tok.kind == "int":
            return self.domain.const(Fraction(int(tok.text)))
        if tok.kind == "rat":
            p, q = tok.text.split("/")
            if int(q) == 0:
                self.fail("zero denominator", tok)
            return self.domain.const(Fraction(int(p), int(q)))
        if tok.kind == "name":
            if tok.text in self.bindings:
                return self.domain.const(Fraction(self.bindings[tok.text]))
            if self.domain.kind != RATIONAL and tok.text == self.domain.var:
                return self.domain.variable()
            self.fail(f"unknown name {tok.text!r}", tok)
        if tok.text == "(":
            value, _ = self.sum()
            if self.peek().text == "/":
                self.fail("division is only allowed at the top level")
            if self.take().text != ")":
                self.fail("expected ')'", self.toks[self.i - 1])
            return value
        self.fail(f"unexpected {tok.text or 'end'!r}", tok)


def parse_coefficient(text, kind: str = RATIONAL, var: str | None = None,
                      bindings: Mapping[str, object] | None = None, where: _Where | None = None):
    """Parse ``text`` into a Fraction (``kind="rational"``), a MultiPoly in
    ``var`` (``kind="param"``) or a RatFunc in ``var`` (``kind="ratfunc"``)."""
    if isinstance(text, bool):
        raise ParseError(f"expected a coefficient, got {text!r}")
    if isinstance(text, int):
        text = str(text)
    if kind == "ratfunc" and var is None:
        var = "t"
    where = where or _Where(str(text))
    if not str(text).strip():
        where.fail("empty coefficient", 0)
    binds = {k: Fraction(v) for k, v in (bindings or {}).items()}
    return _Parser(str(text), _Domain(kind, var), binds, where).coefficient()


def parse_ratfunc(text, var: str = "t", bindings=None) -> RatFunc:
    return parse_coefficient(text, "ratfunc", var, bindings)


# -- YAML files -------------------------------------------------------------------


def _compose(text: str, source: str):
    try:
        node = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line, col = (mark.line + 1, mark.column + 1) if mark else (None, None)
        raise ParseError(f"invalid YAML: {getattr(exc, 'problem', exc)}", line, col, source) from None
    if not isinstance(node, yaml.MappingNode):
        raise ParseError("expected a mapping at the top level", 1, 1, source)
    return node


def _fail(node, message: str, source: str):
    m = node.start_mark
    raise ParseError(message, m.line + 1, m.column + 1, source)


def _mapping(node, source: str, allowed: set[str], required: set[str]) -> dict:
    if not isinstance(node, yaml.MappingNode):
        _fail(node, "expected a mapping", source)
    out = {}
    for k, v in node.value:
        key = k.value
        if key not in allowed:
            _fail(k, f"unknown key {key!r}", source)
        if key in out:
            _fail(k, f"duplicate key {key!r}", source)
        out[key] = v
    for key in sorted(required - out.keys()):
        _fail(node, f"missing key {key!r}", source)
    return out


def _scalar(node, source: str) -> str:
    if not isinstance(node, yaml.ScalarNode):
        _fail(node, "expected a scalar", source)
    return node.value


def _int(node, source: str, lo: int = 1, hi: int | None = None) -> int:
    text = _scalar(node, source)
    if not re.fullmatch(r"[-+]?\d+", text.strip()):
        _fail(node, f"expected an integer, got {text!r}", source)
    v = int(text)
    if v < lo or (hi is not None and v > hi):
        rng = f"{lo}..{hi}" if hi is not None else f">= {lo}"
        _fail(node, f"value {v} out of range {rng}", source)
    return v


def _bool(node, source: str) -> bool:
    text = _scalar(node, source).lower()
    if text not in ("true", "false", "yes", "no"):
        _fail(node, f"expected true or false, got {text!r}", source)
    return text in ("true", "yes")


def _sequence(node, source: str) -> list:
    if not isinstance(node, yaml.SequenceNode):
        _fail(node, "expected a list", source)
    return node.value


def _where(node, source: str) -> _Where:
    m = node.start_mark
    quoted = 1 if node.style in ('"', "'") else 0
    return _Where(node.value, source, m.line + 1, m.column + 1 + quoted)


def _coefficient(node, source, kind, var=None, bindings=None):
    _scalar(node, source)
    return parse_coefficient(node.value, kind, var, bindings, _where(node, source))


def _bindings(node, source: str) -> dict[str, Fraction]:
    if not isinstance(node, yaml.MappingNode):
        _fail(node, "expected a mapping", source)
    out = {}
    for k, v in node.value:
        name = k.value
        if not re.fullmatch(r"[A-Za-z_]\w*", name):
            _fail(k, f"bad parameter name {name!r}", source)
        if name in out:
            _fail(k, f"duplicate parameter {name!r}", source)
        out[name] = _coefficient(v, source, RATIONAL)
    return out


def algebra_from_yaml(text: str, source: str = "<string>") -> Algebra:
    root = _compose(text, source)
    m = _mapping(root, source, {"label", "dim", "parameter", "products"}, {"dim", "products"})
    dim = _int(m["dim"], source)
    label = _scalar(m["label"], source) if "label" in m else None
    param = None
    if "parameter" in m:
        param = _scalar(m["parameter"], source)
        if not re.fullmatch(r"[A-Za-z_]\w*", param) or param == "t":
            _fail(m["parameter"], f"bad parameter name {param!r}", source)
    kind = PARAM if param else RATIONAL
    triples = []
    seen = {}
    for item in _sequence(m["products"], source):
        p = _mapping(item, source, {"i", "j", "k", "c"}, {"i", "j", "k", "c"})
        i, j, k = (_int(p[key], source, 1, dim) for key in "ijk")
        if (i, j, k) in seen:
            _fail(item, f"duplicate product ({i},{j},{k})", source)
        seen[(i, j, k)] = True
        triples.append((i, j, k, _coefficient(p["c"], source, kind, param)))
    return Algebra.from_products(dim, triples, label, param)


def read_algebra(path) -> Algebra:
    with open(path, encoding="utf-8") as fh:
        return algebra_from_yaml(fh.read(), str(path))


def _yaml_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def algebra_to_yaml(A: Algebra) -> str:
    """Deterministic export; products in lexicographic (i, j, k) order."""
    if A.coeff_ring not in (RATIONAL, PARAM):
        raise TypeError("only rational or parametric algebras can be exported")
    lines = []
    if A.label:
        lines.append(f"label: {_yaml_str(A.label)}")
    lines.append(f"dim: {A.dim}")
    if A.param:
        lines.append(f"parameter: {A.param}")
    prods = A.nonzero_products()
    if not prods:
        lines.append("products: []")
    else:
        lines.append("products:")
        for i, j, k, c in prods:
            lines.append(f"  - {{i: {i}, j: {j}, k: {k}, c: {_yaml_str(str(c).replace(' ', ''))}}}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class WitnessFile:
    dim: int
    matrix: Matrix
    inverse_given: bool = True
    relabel: Matrix | None = None
    params: dict = field(default_factory=dict)

    def witness(self):
        return Witness(self.matrix, self.inverse_given, self.relabel, self.params)


def _matrix(node, source, dim, kind, bindings) -> Matrix:
    rows = _sequence(node, source)
    if len(rows) != dim:
        _fail(node, f"expected {dim} rows, got {len(rows)}", source)
    out = []
    for r in rows:
        entries = _sequence(r, source)
        if len(entries) != dim:
            _fail(r, f"expected {dim} entries, got {len(entries)}", source)
        out.append([_coefficient(e, source, kind, "t" if kind == "ratfunc" else None, bindings)
                    for e in entries])
    return Matrix(out)


def witness_from_yaml(text: str, source: str = "<string>") -> WitnessFile:
    root = _compose(text, source)
    m = _mapping(root, source, {"dim", "inverse_given", "entries", "params", "relabel"}, {"dim", "entries"})
    dim = _int(m["dim"], source)
    params = _bindings(m["params"], source) if "params" in m else {}
    if "t" in params:
        _fail(m["params"], "'t' is the deformation variable and cannot be bound", source)
    inverse_given = _bool(m["inverse_given"], source) if "inverse_given" in m else True
    matrix = _matrix(m["entries"], source, dim, "ratfunc", params)
    relabel = _matrix(m["relabel"], source, dim, RATIONAL, params) if "relabel" in m else None
    if not det(matrix):
        _fail(m["entries"], "witness matrix is singular", source)
    if relabel is not None and not det(relabel):
        _fail(m["relabel"], "relabel matrix is singular", source)
    return WitnessFile(dim, matrix, inverse_given, relabel, params)


def read_witness(path) -> WitnessFile:
    with open(path, encoding="utf-8") as fh:
        return witness_from_yaml(fh.read(), str(path))


def witness_to_yaml(w, dim: int | None = None) -> str:
    """Deterministic export of a Witness."""
    M = w.matrix
    lines = [f"dim: {dim or M.nrows}", f"inverse_given: {'true' if w.inverse_given else 'false'}"]
    if w.params:
        lines.append("params: {" + ", ".join(f"{k}: {_yaml_str(str(v))}" for k, v in sorted(w.params.items())) + "}")
    lines.append("entries:")
    for r in M.rows:
        lines.append("  - [" + ", ".join(_yaml_str(str(x).replace(" ", "")) for x in r) + "]")
    if w.relabel is not None:
        lines.append("relabel:")
        for r in w.relabel.rows:
            lines.append("  - [" + ", ".join(_yaml_str(str(x)) for x in r) + "]")
    return "\n".join(lines) + "\n"


def check_dims(A: Algebra, B: Algebra) -> None:
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimensions {A.dim} and {B.dim} differ")
