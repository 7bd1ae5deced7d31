from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strategies import int_pairs, int_polys
from tamewild import nagata_sigma
from tamewild.endo import (
    ContractError,
    DAut,
    ElementaryMove,
    EndoPair,
    NormalFormWord,
    TameCertificate,
    affine,
    affine_coset_rep,
    apply_move,
    base_d,
    classify_base,
    compare_d,
    compose,
    d_aut,
    decompose_linear,
    is_triangular,
    random_affine,
    same_left_coset,
    sample_tame,
)
from tamewild.euclid import INTEGERS, RATIONALS, RATPOLY, DomainError, UPoly
from tamewild.poly2 import ExponentOverflow, Poly2, Word, set_exponent_cap, substitute

x1, x2 = Poly2.x1(), Poly2.x2()
ID = EndoPair.identity()
K = INTEGERS.fraction_field()


# -- composition ---------------------------------------------------------------


def test_compose_examples():
    phi = EndoPair(x1 + x2 ** 2, x2)
    psi = EndoPair(x1, x2 + x1)
    assert compose(phi, psi) == EndoPair(x1 + x2 ** 2, x2 + x1 + x2 ** 2)
    assert compose(ID, psi) == psi
    assert compose(phi, ID) == phi


@given(int_pairs(2, 3), int_pairs(2, 3), int_pairs(1, 3))
def test_compose_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(int_pairs(2, 4))
def test_compose_identity(a):
    assert compose(a, ID) == a == compose(ID, a)


def test_compose_is_substitution_into_second():
    phi = EndoPair(x1 + 3, x2 ** 2 - x1)
    psi = EndoPair(x1 * x2, x1 - x2)
    out = compose(phi, psi)
    assert out.f1 == substitute(psi.f1, phi.f1, phi.f2)
    assert out.f2 == substitute(psi.f2, phi.f1, phi.f2)


# -- elementary moves ----------------------------------------------------------


def test_apply_move_examples():
    m = ElementaryMove(1, 1, x2 ** 2)
    assert apply_move(ID, m, INTEGERS) == EndoPair(x1 + x2 ** 2, x2)
    assert apply_move(EndoPair(x1 + x2 ** 2, x2), m.inverse(INTEGERS), INTEGERS) == ID


def test_non_unit_move_only_over_fractions():
    m = ElementaryMove(1, 2)
    with pytest.raises(DomainError):
        apply_move(ID, m, INTEGERS)
    assert apply_move(ID, ElementaryMove(1, Fraction(2)), K) == EndoPair(x1.scale(2), x2)


def test_move_addend_must_use_the_other_variable():
    with pytest.raises(ValueError):
        ElementaryMove(1, 1, x1)
    with pytest.raises(ValueError):
        ElementaryMove(2, 1, x2 ** 2)
    with pytest.raises(ValueError):
        ElementaryMove(3, 1)


def test_move_matches_its_endomorphism():
    phi = EndoPair(x1 + x2 ** 3, x2 - 1)
    m = ElementaryMove(2, -1, x1 ** 2 + 4)
    assert apply_move(phi, m, INTEGERS) == compose(phi, m.as_endo())


@given(int_pairs(3, 4), st.sampled_from([1, 2]), st.sampled_from([1, -1]), st.lists(st.integers(-4, 4), max_size=4))
def test_apply_move_invertible(phi, target, unit, coeffs):
    m = ElementaryMove(target, unit, Poly2.univariate(coeffs, 2 if target == 1 else 1))
    assert apply_move(apply_move(phi, m, INTEGERS), m.inverse(INTEGERS), INTEGERS) == phi


def test_nagata_chain_over_fractions():
    # (x1,x2) -> (z x1, x2) -> (z x1 - x2^2, x2) -> (.., x2 + z(..)) -> (.. + (..)^2, ..) -> sigma
    z = Fraction(2)
    chain = TameCertificate((
        ElementaryMove(1, z),
        ElementaryMove(1, 1, -(x2 ** 2)),
        ElementaryMove(2, 1, x1.scale(z)),
        ElementaryMove(1, 1, x2 ** 2),
        ElementaryMove(1, 1 / z),
    ))
    assert chain.fold(K) == nagata_sigma(2, K)
    assert chain.fold(K) == nagata_sigma(2)
    assert chain.inverse(K).fold(K, nagata_sigma(2, K)) == ID


# -- D of a pair ---------------------------------------------------------------


def test_d_aut_examples():
    assert d_aut(ID, INTEGERS) == DAut(Word(1, 0), Word(0, 1), 2)
    assert d_aut(ID, RATPOLY) == DAut(Word(1, 0), Word(0, 1), 0)
    assert base_d(INTEGERS) == d_aut(ID, INTEGERS)
    assert d_aut(nagata_sigma(2), INTEGERS) == DAut(Word(0, 4), Word(0, 2), 4)


def test_d_aut_of_zero_component():
    with pytest.raises(ContractError):
        d_aut(EndoPair(x1, Poly2()), INTEGERS)


@given(int_pairs(4, 6))
def test_d_aut_swap_invariant(phi):
    assert d_aut(phi, INTEGERS) == d_aut(EndoPair(phi.f2, phi.f1), INTEGERS)


def test_compare_d():
    a = DAut(Word(0, 4), Word(0, 2), 4)
    b = DAut(Word(0, 2), Word(0, 1), 3)
    assert compare_d(a, b) == 1 and compare_d(b, a) == -1
    assert compare_d(a, DAut(Word(0, 4), Word(0, 2), 4)) == 0
    assert compare_d(DAut(Word(0, 2), Word(0, 1), 5), b) == 1


def test_base_is_minimum_over_samples():
    rng = random.Random(11)
    for _ in range(40):
        _, phi = sample_tame(rng, rng.randint(1, 2), 3, 3)
        assert compare_d(d_aut(phi, INTEGERS), base_d(INTEGERS)) >= 0
        word = affine_coset_rep(random_affine(rng, INTEGERS, 3), INTEGERS)
        assert compare_d(d_aut(word, INTEGERS), base_d(INTEGERS)) >= 0


# -- linear base ---------------------------------------------------------------


def test_classify_base():
    s2 = classify_base(EndoPair(x1 + x2.scale(5) + 7, -x2 + 4), INTEGERS)
    assert s2.form == 2 and s2.alpha == 1 and s2.delta == -1
    s3 = classify_base(EndoPair(x2.scale(3), x1 + x2), RATIONALS)
    assert s3.form == 3
    with pytest.raises(ContractError):
        classify_base(EndoPair(x1.scale(2) + x2.scale(3) + 1, x2), INTEGERS)


def test_non_unit_base_is_rejected_over_integers():
    # D = (x1, x2, 4): not the base for the integers
    with pytest.raises(ContractError):
        classify_base(EndoPair(x2.scale(3), x1 + x2), INTEGERS)


def test_decompose_linear_examples():
    phi = EndoPair(x1 + x2.scale(5) + 7, -x2 + 4)
    cert = decompose_linear(phi, INTEGERS)
    assert cert.fold(INTEGERS) == phi
    assert len(cert) == 2
    assert len(decompose_linear(ID, INTEGERS)) == 0
    swap = EndoPair(x2, x1)
    cert = decompose_linear(swap, INTEGERS)
    assert len(cert) == 3
    assert all(INTEGERS.is_unit(m.unit) for m in cert)
    assert cert.fold(INTEGERS) == swap


@given(
    st.sampled_from([1, -1]), st.integers(-5, 5), st.integers(-5, 5),
    st.sampled_from([1, -1]), st.integers(-5, 5), st.booleans(),
)
def test_decompose_linear_fold_back(alpha, beta, gamma, delta, eps, swapped):
    f = x1.scale(alpha) + x2.scale(beta) + gamma
    g = x2.scale(delta) + eps
    phi = EndoPair(g, f) if swapped else EndoPair(f, g)
    assert decompose_linear(phi, INTEGERS).fold(INTEGERS) == phi


@given(st.fractions().filter(bool), st.fractions(), st.fractions(), st.fractions().filter(bool), st.fractions())
def test_decompose_linear_fold_back_field(alpha, beta, gamma, delta, eps):
    phi = EndoPair(x2.scale(delta) + eps, x1.scale(alpha) + x2.scale(beta) + gamma)
    assert decompose_linear(phi, RATIONALS).fold(RATIONALS) == phi


# -- affine cosets -------------------------------------------------------------


def test_coset_rep_of_triangular_is_identity():
    lam = affine(-1, 4, 2, 0, 1, -3)
    assert is_triangular(lam, INTEGERS)
    assert affine_coset_rep(lam, INTEGERS) == ID


def test_coset_rep_invariant_under_triangular_factor():
    lam = affine(1, 1, 5, 2, 3, -1)
    lam2 = compose(lam, affine(-1, 7, 2, 0, -1, 4))
    assert same_left_coset(lam, lam2, INTEGERS)
    rep = affine_coset_rep(lam, INTEGERS)
    assert rep == affine_coset_rep(lam2, INTEGERS)
    assert same_left_coset(rep, lam, INTEGERS)


def test_swap_coset_rep():
    rep = affine_coset_rep(EndoPair(x2, x1), INTEGERS)
    assert (rep.f2.coeff(1, 0), rep.f2.coeff(0, 1)) == (1, 0)
    assert same_left_coset(rep, EndoPair(x2, x1), INTEGERS)


@pytest.mark.parametrize("ring", [INTEGERS, RATIONALS, RATPOLY])
def test_coset_rep_properties(ring):
    rng = random.Random(5)
    for _ in range(60):
        lam = random_affine(rng, ring, 4)
        rep = affine_coset_rep(lam, ring)
        assert same_left_coset(rep, lam, ring)
        assert affine_coset_rep(rep, ring) == rep
        h = affine(ring.random_unit(rng), ring.random_element(rng, 3), ring.random_element(rng, 3),
                   0, ring.random_unit(rng), ring.random_element(rng, 3))
        assert affine_coset_rep(compose(lam, h), ring) == rep


def test_coset_rep_rejects_non_automorphism():
    with pytest.raises(DomainError):
        affine_coset_rep(affine(2, 0, 0, 0, 1, 0), INTEGERS)


# -- normal-form sampler ---------------------------------------------------------


def test_single_syllable_word():
    word = NormalFormWord((ID,), (x2 ** 2,), ID)
    assert word.compose() == EndoPair(x1 + x2 ** 2, x2)


def test_proposition1_instance():
    sigma2 = affine_coset_rep(EndoPair(x2, x1), INTEGERS)
    word = NormalFormWord((ID, sigma2), (x2 ** 2, x2 ** 3 - x2 ** 2), ID)
    f, g = word.compose()
    assert word.degrees == (2, 3)
    assert f.degree == 6 and g.degree == 2


@pytest.mark.parametrize("seed", range(30))
def test_proposition1_sampled(seed):
    rng = random.Random(seed)
    word, (f, g) = sample_tame(rng, rng.randint(1, 3), 4, 3, sigma1_identity=True, lam_identity=True)
    ns = word.degrees
    prod = 1
    for n in ns[:-1]:
        prod *= n
    assert g.degree == prod
    assert f.degree == prod * ns[-1]


def test_sampler_is_deterministic():
    assert sample_tame(42, 3)[1] == sample_tame(42, 3)[1]
    assert sample_tame(42, 3)[1] != sample_tame(43, 3)[1]


def test_sampler_over_ratpoly():
    word, phi = sample_tame(3, 2, ring=RATPOLY)
    assert word.k == 2
    assert all(not s.is_identity() for s in word.sigmas[1:])
    assert isinstance(phi.f1.lc, UPoly)


def test_exponent_cap_in_composition():
    psi = compose(EndoPair(x1 + x2 ** 4, x2), EndoPair(x2, x1))
    old = set_exponent_cap(12)
    try:
        with pytest.raises(ExponentOverflow):
            compose(psi, psi)
    finally:
        set_exponent_cap(old)


@given(int_polys(3, 4, nonzero=True))
def test_triangular_detection(h):
    h2 = Poly2({w: c for w, c in h.terms.items() if w[0] == 0})
    assert is_triangular(EndoPair(x1 + h2, x2), INTEGERS)
    assert not is_triangular(EndoPair(x2, x1), INTEGERS)
