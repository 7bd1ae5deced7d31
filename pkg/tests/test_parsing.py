from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strategies import fractions, int_pairs, int_polys, upolys
from tamewild import nagata_sigma
from tamewild.decider import Tame, decide
from tamewild.endo import ElementaryMove, EndoPair, TameCertificate, sample_tame
from tamewild.euclid import INTEGERS, RATIONALS, RATPOLY, UPoly
from tamewild.free import X1, X2, FreeElem, Node, nagata_eta, nagata_omega
from tamewild.parsing import (
    ParseError,
    dump_certificate,
    format_endo,
    format_free,
    format_free_endo,
    format_magma_word,
    format_poly,
    load_certificate,
    parse_endo,
    parse_free,
    parse_free_endo,
    parse_poly,
    parse_scalar,
    verdict_to_dict,
)
from tamewild.poly2 import Poly2

x1, x2 = Poly2.x1(), Poly2.x2()
t = UPoly.t()


# -- grammar -------------------------------------------------------------------


def test_parse_endo_example():
    phi = parse_endo("x1 + 2*x2^2 ; x2", INTEGERS)
    assert phi == EndoPair(x1 + (x2 ** 2).scale(2), x2)


def test_parse_nagata_w():
    assert parse_poly("2*x1 - x2^2", INTEGERS) == x1.scale(2) - x2 ** 2
    assert parse_poly("z*x1 - x2^2", INTEGERS, z=2) == x1.scale(2) - x2 ** 2


def test_parse_full_nagata():
    text = "x1 + 2*x2*(2*x1 - x2^2) + 2*(2*x1 - x2^2)^2 ; x2 + 2*(2*x1 - x2^2)"
    assert parse_endo(text, INTEGERS) == nagata_sigma(2)


def test_precedence():
    assert parse_poly("-x2^2", INTEGERS) == -(x2 ** 2)
    assert parse_poly("2*x1^2", INTEGERS) == (x1 ** 2).scale(2)
    assert parse_poly("x1 - x2 - 1", INTEGERS) == x1 - x2 - 1
    assert parse_poly("-(x1 + 1)^2", INTEGERS) == -((x1 + 1) ** 2)
    assert parse_poly("x1*-x2", INTEGERS) == -(x1 * x2)


def test_coefficients_per_ring():
    assert parse_poly("3/4*x1", RATIONALS) == x1.scale(Fraction(3, 4))
    assert parse_poly("(t^2 + 1)*x1 - t", RATPOLY) == x1.scale(t * t + 1) - t
    assert parse_scalar("t^2 - 1", RATPOLY) == t * t - 1
    assert parse_poly("6/3*x1", INTEGERS) == x1.scale(2)


def test_free_grammar():
    f = parse_free("(x2*(x2*x2))", INTEGERS)
    assert f.terms == {Node(X2, Node(X2, X2)): 1}
    assert parse_free("x2*x2*x2", INTEGERS) == parse_free("(x2*x2)*x2", INTEGERS)
    assert parse_free("(x1*x2)^2", INTEGERS).terms == {Node(Node(X1, X2), Node(X1, X2)): 1}
    assert parse_free("x2*x1", INTEGERS, commutative=True) == parse_free("x1*x2", INTEGERS, commutative=True)


# -- diagnostics ---------------------------------------------------------------


@pytest.mark.parametrize(
    "text,offset",
    [
        ("x1 + * x2", 5),
        ("x1 + (x2", 8),
        ("x1 x2", 3),
        ("x3 + 1", 0),
        ("x1 ^ x2", 5),
        ("x1 + 1/2", 6),
        ("x1 # 2", 3),
        ("x1 / x2", 3),
    ],
)
def test_diagnostic_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_poly(text, INTEGERS)
    assert info.value.offset == offset
    assert text in info.value.caret()


def test_diagnostic_offset_in_second_component():
    text = "x1 + 1 ; x2 + + "
    with pytest.raises(ParseError) as info:
        parse_endo(text, INTEGERS)
    assert info.value.offset == len(text)
    assert info.value.expected


def test_missing_separator():
    with pytest.raises(ParseError):
        parse_endo("x1 + x2", INTEGERS)
    with pytest.raises(ParseError):
        parse_endo("x1 ; x2 ; x1", INTEGERS)


def test_unknown_names_list_alternatives():
    with pytest.raises(ParseError) as info:
        parse_poly("t*x1", INTEGERS)
    assert info.value.expected == ("x1", "x2")
    with pytest.raises(ParseError) as info:
        parse_poly("z*x1", RATPOLY)
    assert "t" in info.value.expected


# -- round trips ---------------------------------------------------------------


@given(int_polys(4, 9))
def test_round_trip_int_poly(f):
    assert parse_poly(format_poly(f), INTEGERS) == f


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), fractions, max_size=5))
def test_round_trip_rational_poly(terms):
    f = Poly2(terms)
    assert parse_poly(format_poly(f), RATIONALS) == f


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), upolys(), max_size=4))
def test_round_trip_ratpoly_poly(terms):
    f = Poly2(terms)
    assert parse_poly(format_poly(f), RATPOLY) == f


@given(int_pairs(3, 9))
def test_round_trip_endo(phi):
    assert parse_endo(format_endo(phi), INTEGERS) == phi


words = st.recursive(st.sampled_from([X1, X2]), lambda c: st.builds(Node, c, c), max_leaves=6)


@given(st.dictionaries(words, st.integers(-9, 9), max_size=5), st.booleans())
def test_round_trip_free(terms, commutative):
    f = FreeElem(terms, commutative)
    assert parse_free(format_free(f), INTEGERS, commutative) == f


@given(words)
def test_word_printer_uses_minimal_parentheses(w):
    text = format_magma_word(w)
    assert parse_free(text, INTEGERS).terms == {w: 1}
    assert not text.startswith("(")


def test_round_trip_nagata_free_forms():
    for ring, z in ((INTEGERS, 2), (RATPOLY, t)):
        e = nagata_eta(z, ring)
        assert parse_free_endo(format_free_endo(e), ring) == e
        w = nagata_omega(z, ring)
        assert parse_free_endo(format_free_endo(w), ring, commutative=True) == w


def test_round_trip_certificate():
    cert = TameCertificate((
        ElementaryMove(1, -1, x2 ** 3 - 2),
        ElementaryMove(2, 1, x1.scale(5)),
        ElementaryMove(1, 1),
    ))
    text = dump_certificate(cert, INTEGERS)
    back, ring = load_certificate(text)
    assert back == cert and ring is INTEGERS
    assert dump_certificate(back, ring) == text


def test_round_trip_ratpoly_certificate():
    _, phi = sample_tame(2, 2, ring=RATPOLY)
    v = decide(phi, RATPOLY)
    assert isinstance(v, Tame)
    back, ring = load_certificate(dump_certificate(v.certificate, RATPOLY))
    assert back == v.certificate
    assert back.fold(ring) == phi


def test_certificate_rejects_non_unit():
    doc = json.dumps({"ring": "int", "moves": [{"target": 1, "unit": "2", "addend": "0"}]})
    with pytest.raises(ValueError):
        load_certificate(doc)


def test_verdict_documents_are_stable():
    a = json.dumps(verdict_to_dict(decide(nagata_sigma(2), INTEGERS), INTEGERS, True), sort_keys=True)
    b = json.dumps(verdict_to_dict(decide(nagata_sigma(2), INTEGERS), INTEGERS, True), sort_keys=True)
    assert a == b
    doc = json.loads(a)
    assert doc["verdict"] == "WILD"
    assert doc["d"] == {"u": "x2^4", "v": "x2^2", "norm_sum": 4}
