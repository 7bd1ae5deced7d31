"""Recursive-descent parser and printers for the text formats.

One grammar serves ring elements, polynomials in x1, x2 and free-algebra
elements::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('-' | '+') unary | power
    power := atom ('^' INT)?
    atom  := INT | NAME | '(' expr ')'

Names are ``x1``, ``x2``, ``t`` (Q[t] coefficients) and ``z`` when bound.
Division is only by nonzero constants that divide exactly in the ring.  In
the free algebra products are left-normed: ``a*b*c`` is ``(a*b)*c`` and
``w^n`` is ``w^(n-1)*w``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from .endo import DAut, ElementaryMove, EndoPair, TameCertificate
from .euclid import DomainError, EuclideanRing, UPoly, get_ring
from .free import Leaf, Node, FreeElem, FreeEndo, MagmaWord, UNIT, comm_key
from .poly2 import Poly2, _coeff_text, format_poly, format_word


class ParseError(ValueError):
    """Malformed input; ``offset`` indexes into the original text."""

    def __init__(self, message: str, offset: int, expected: Tuple[str, ...] = (), text: str = ""):
        self.message = message
        self.offset = offset
        self.expected = tuple(expected)
        self.text = text
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f" (expected one of: {', '.join(expected)})"
        super().__init__(detail)

    def caret(self) -> str:
        if not self.text:
            return str(self)
        return f"{self.text}\n{' ' * self.offset}^ {self}"


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str, base: int = 0) -> List[_Tok]:
    toks = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", base + i, ("number", "name", "operator"))
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), base + m.start(kind)))
        i = m.end()
    toks.append(_Tok("end", "", base + n))
    return toks


class _Algebra:
    """What the parser needs from a target algebra."""

    def const(self, c): ...
    def var(self, name: str, tok: _Tok): ...
    def is_const(self, v) -> Optional[Any]: ...
    def div_const(self, v, c, tok: _Tok): ...
    def pow(self, v, n: int): return v ** n


class _PolyAlgebra(_Algebra):
    def __init__(self, ring: EuclideanRing, z=None):
        self.ring, self.z = ring, z

    def const(self, c):
        return Poly2.const(self.ring.coerce(c))

    def var(self, name, tok):
        if name == "x1":
            return Poly2.x1()
        if name == "x2":
            return Poly2.x2()
        scalar = _scalar_name(name, tok, self.ring, self.z)
        return Poly2.const(scalar)

    def is_const(self, v):
        return v.constant_term() if v.is_constant() else None

    def div_const(self, v, c, tok):
        out = {}
        for w, a in v.terms.items():
            out[w] = _exact_div(self.ring, a, c, tok)
        return Poly2(out)


class _FreeAlgebra(_Algebra):
    def __init__(self, ring: EuclideanRing, commutative: bool, z=None):
        self.ring, self.commutative, self.z = ring, commutative, z

    def const(self, c):
        return FreeElem.const(self.ring.coerce(c), self.commutative)

    def var(self, name, tok):
        if name in ("x1", "x2"):
            return FreeElem.gen(int(name[1]), self.commutative)
        return FreeElem.const(_scalar_name(name, tok, self.ring, self.z), self.commutative)

    def is_const(self, v):
        if all(w == UNIT for w in v.terms):
            return v.terms.get(UNIT, 0)
        return None

    def div_const(self, v, c, tok):
        return FreeElem({w: _exact_div(self.ring, a, c, tok) for w, a in v.terms.items()}, self.commutative)


class _ScalarAlgebra(_Algebra):
    def __init__(self, ring: EuclideanRing, z=None):
        self.ring, self.z = ring, z

    def const(self, c):
        return self.ring.coerce(c)

    def var(self, name, tok):
        return _scalar_name(name, tok, self.ring, self.z)

    def is_const(self, v):
        return v

    def div_const(self, v, c, tok):
        return _exact_div(self.ring, v, c, tok)


def _scalar_name(name: str, tok: _Tok, ring: EuclideanRing, z) -> Any:
    if name == "t" and ring.name in ("ratpoly", "ratfunc"):
        return ring.coerce(UPoly.t())
    if name == "z" and z is not None:
        return ring.coerce(z)
    expected = ["x1", "x2"] + (["t"] if ring.name in ("ratpoly", "ratfunc") else []) + (["z"] if z is not None else [])
    raise ParseError(f"unknown name {name!r}", tok.pos, tuple(expected))


def _exact_div(ring: EuclideanRing, a, c, tok: _Tok):
    if not c:
        raise ParseError("division by zero", tok.pos)
    try:
        q = ring.divides_exactly(ring.coerce(a), ring.coerce(c))
    except DomainError as exc:
        raise ParseError(str(exc), tok.pos) from None
    if q is None:
        raise ParseError(f"{ring.format(a)} is not divisible by {ring.format(c)} in ring {ring.name}", tok.pos)
    return q


class _Parser:
    def __init__(self, text: str, alg: _Algebra, base: int = 0, full_text: Optional[str] = None):
        self.text = full_text if full_text is not None else text
        try:
            self.toks = _tokenize(text, base)
        except ParseError as exc:
            exc.text = self.text
            raise
        self.i = 0
        self.alg = alg

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, expected: Tuple[str, ...]):
        raise ParseError(msg, self.peek().pos, expected, self.text)

    def parse(self):
        v = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().value!r}", ("+", "-", "*", "/", "end of input"))
        return v

    def expr(self):
        v = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.unary()
        while self.peek().kind == "op" and self.peek().value in "*/":
            tok = self.take()
            rhs = self.unary()
            if tok.value == "*":
                v = v * rhs
            else:
                c = self.alg.is_const(rhs)
                if c is None:
                    raise ParseError("can only divide by a constant", tok.pos, (), self.text)
                try:
                    v = self.alg.div_const(v, c, tok)
                except ParseError as exc:
                    exc.text = self.text
                    raise
        return v

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.value in "+-":
            self.take()
            v = self.unary()
            return -v if t.value == "-" else v
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            t = self.peek()
            if t.kind != "int":
                self.fail("exponent must be a nonnegative integer", ("integer",))
            self.take()
            v = self.alg.pow(v, int(t.value))
        return v

    def atom(self):
        t = self.peek()
        if t.kind == "int":
            self.take()
            return self.alg.const(int(t.value))
        if t.kind == "name":
            self.take()
            try:
                return self.alg.var(t.value, t)
            except ParseError as exc:
                exc.text = self.text
                raise
        if t.kind == "op" and t.value == "(":
            self.take()
            v = self.expr()
            if self.peek().kind != "op" or self.peek().value != ")":
                self.fail("missing closing parenthesis", (")",))
            self.take()
            return v
        self.fail("expected a value" if t.kind != "end" else "unexpected end of input", ("number", "name", "("))


def parse_scalar(text: str, ring: EuclideanRing, z=None):
    return _Parser(text, _ScalarAlgebra(ring, z)).parse()


def parse_poly(text: str, ring: EuclideanRing, z=None) -> Poly2:
    return _Parser(text, _PolyAlgebra(ring, z)).parse()


def parse_endo(text: str, ring: EuclideanRing, z=None) -> EndoPair:
    """Parse ``f1 ; f2``."""
    parts = text.split(";")
    if len(parts) != 2:
        pos = len(text) if len(parts) < 2 else len(parts[0]) + len(parts[1]) + 1
        raise ParseError("an automorphism is written 'f1 ; f2'", pos, (";",) if len(parts) < 2 else ("end of input",), text)
    alg = _PolyAlgebra(ring, z)
    f1 = _Parser(parts[0], alg, 0, text).parse()
    f2 = _Parser(parts[1], alg, len(parts[0]) + 1, text).parse()
    return EndoPair(f1, f2)


def parse_free(text: str, ring: EuclideanRing, commutative: bool = False, z=None) -> FreeElem:
    return _Parser(text, _FreeAlgebra(ring, commutative, z)).parse()


def parse_free_endo(text: str, ring: EuclideanRing, commutative: bool = False, z=None) -> FreeEndo:
    parts = text.split(";")
    if len(parts) != 2:
        raise ParseError("an endomorphism is written 'b1 ; b2'", len(text), (";",), text)
    alg = _FreeAlgebra(ring, commutative, z)
    b1 = _Parser(parts[0], alg, 0, text).parse()
    b2 = _Parser(parts[1], alg, len(parts[0]) + 1, text).parse()
    return FreeEndo(b1, b2)


# ---------------------------------------------------------------------------
# printers
# ---------------------------------------------------------------------------


def format_magma_word(w: MagmaWord) -> str:
    if isinstance(w, Leaf):
        return "1" if w.var == 0 else f"x{w.var}"
    right = format_magma_word(w.right)
    if isinstance(w.right, Node):
        right = f"({right})"
    return f"{format_magma_word(w.left)}*{right}"


def format_free(f: FreeElem) -> str:
    if not f.terms:
        return "0"
    pieces = []
    for w in sorted(f.terms, key=comm_key):
        sign, mag, paren = _coeff_text(f.terms[w], None)
        mono = "" if w == UNIT else format_magma_word(w)
        if not mono:
            body = f"({mag})" if paren else mag
        elif mag == "1":
            body = mono
        else:
            body = f"({mag})*{mono}" if paren else f"{mag}*{mono}"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def format_endo(phi: EndoPair) -> str:
    return f"{format_poly(phi.f1)} ; {format_poly(phi.f2)}"


def format_free_endo(e: FreeEndo) -> str:
    return f"{format_free(e.b1)} ; {format_free(e.b2)}"


def format_scalar(c, ring: EuclideanRing) -> str:
    return ring.format(c)


def format_daut(d: DAut) -> str:
    return str(d)


# ---------------------------------------------------------------------------
# certificates and verdicts
# ---------------------------------------------------------------------------


def move_to_dict(m: ElementaryMove, ring: EuclideanRing) -> Dict[str, Any]:
    return {"target": m.target, "unit": ring.format(m.unit), "addend": format_poly(m.addend)}


def move_from_dict(d: Dict[str, Any], ring: EuclideanRing) -> ElementaryMove:
    try:
        target = int(d["target"])
        unit = parse_scalar(str(d["unit"]), ring)
        addend = parse_poly(str(d["addend"]), ring)
    except KeyError as exc:
        raise ValueError(f"move is missing field {exc}") from None
    if not ring.is_unit(unit):
        raise DomainError(f"move unit {ring.format(unit)} is not a unit")
    return ElementaryMove(target, unit, addend)


def certificate_to_dict(cert: TameCertificate, ring: EuclideanRing) -> Dict[str, Any]:
    return {"ring": ring.name, "moves": [move_to_dict(m, ring) for m in cert.moves]}


def certificate_from_dict(d: Dict[str, Any], ring: Optional[EuclideanRing] = None) -> Tuple[TameCertificate, EuclideanRing]:
    if "certificate" in d:  # a full verdict document
        d = d["certificate"]
    if ring is None:
        ring = get_ring(d.get("ring", "int"))
    return TameCertificate(tuple(move_from_dict(m, ring) for m in d.get("moves", []))), ring


def dump_certificate(cert: TameCertificate, ring: EuclideanRing) -> str:
    return json.dumps(certificate_to_dict(cert, ring), sort_keys=True)


def load_certificate(text: str, ring: Optional[EuclideanRing] = None) -> Tuple[TameCertificate, EuclideanRing]:
    return certificate_from_dict(json.loads(text), ring)


def daut_to_dict(d: DAut) -> Dict[str, Any]:
    return {"u": format_word(d.u) or "1", "v": format_word(d.v) or "1", "norm_sum": d.coeff_norm_sum}


def step_to_dict(step, ring: EuclideanRing) -> Dict[str, Any]:
    return {
        "move": move_to_dict(step.move, ring),
        "before": daut_to_dict(step.before),
        "after": daut_to_dict(step.after),
        "kind": step.kind,
    }


def verdict_to_dict(verdict, ring: EuclideanRing, trace: bool = False) -> Dict[str, Any]:
    from .decider import NotAutomorphism, Tame, Undecided, Wild
    from .endo import d_aut

    out: Dict[str, Any] = {"verdict": verdict.name, "ring": ring.name}
    if isinstance(verdict, Tame):
        out["certificate"] = certificate_to_dict(verdict.certificate, ring)
        if trace:
            out["trace"] = [step_to_dict(s, ring) for s in verdict.trace]
    elif isinstance(verdict, Wild):
        out["stuck"] = format_endo(verdict.stuck)
        out["d"] = daut_to_dict(d_aut(verdict.stuck, ring))
        out["trace"] = [step_to_dict(s, ring) for s in verdict.trace]
    elif isinstance(verdict, NotAutomorphism):
        out["reason"] = verdict.reason
    elif isinstance(verdict, Undecided):
        out["diagnostics"] = verdict.diagnostics
    return out


def format_move(m: ElementaryMove, ring: EuclideanRing) -> str:
    lhs = f"x{m.target}"
    unit = ring.format(m.unit)
    scaled = lhs if unit == "1" else (f"-{lhs}" if unit == "-1" else f"({unit})*{lhs}")
    if not m.addend:
        return f"{lhs} <- {scaled}"
    return f"{lhs} <- {scaled} + ({format_poly(m.addend)})"


def format_verdict(verdict, ring: EuclideanRing, trace: bool = False) -> str:
    from .decider import NotAutomorphism, Tame, Undecided, Wild
    from .endo import d_aut

    lines = [verdict.name]
    if isinstance(verdict, Tame):
        lines.append(f"certificate: {dump_certificate(verdict.certificate, ring)}")
        for k, m in enumerate(verdict.certificate.moves, 1):
            lines.append(f"  {k}: {format_move(m, ring)}")
    elif isinstance(verdict, Wild):
        lines.append(f"stuck: {format_endo(verdict.stuck)}")
        lines.append(f"D: {d_aut(verdict.stuck, ring)}")
    elif isinstance(verdict, NotAutomorphism):
        lines.append(f"reason: {verdict.reason}")
    elif isinstance(verdict, Undecided):
        lines.append(f"diagnostics: {verdict.diagnostics}")
    steps = getattr(verdict, "trace", ())
    if trace or (isinstance(verdict, Wild) and steps):
        lines.append(f"trace: {len(steps)} step(s)")
        for k, s in enumerate(steps, 1):
            lines.append(f"  {k}: {format_move(s.move, ring)}  D {s.before} -> {s.after} [{s.kind}]")
    return "\n".join(lines)
